#include "fpe/equalize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fpe/error.hpp"

namespace fpe {

LevelMapping LevelMapping::identity() {
  LevelMapping m;
  for (std::size_t i = 0; i < kLevels; ++i) m.table[i] = static_cast<std::uint8_t>(i);
  return m;
}

bool LevelMapping::is_monotone() const noexcept {
  return std::is_sorted(table.begin(), table.end());
}

LevelMapping ghe_mapping(const Histogram& hist) {
  if (hist.total == 0) throw InvalidArgument("ghe_mapping: empty histogram");
  // round(255 * cum / total) evaluated exactly in integers: floor((510 cum + total) / (2 total)).
  LevelMapping m;
  std::uint64_t cum = 0;
  for (std::size_t i = 0; i < kLevels; ++i) {
    cum += hist.counts[i];
    m.table[i] = static_cast<std::uint8_t>((510 * cum + hist.total) / (2 * hist.total));
  }
  return m;
}

GrayImage apply_mapping(const GrayImage& image, const LevelMapping& mapping) {
  GrayImage out = image;
  for (auto& p : out.pixels()) p = mapping.table[p];
  return out;
}

GrayImage ghe(const GrayImage& image) {
  return apply_mapping(image, ghe_mapping(histogram(image)));
}

namespace {

struct AxisWeights {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double w_hi = 0.0;  // weight of tile `hi`; `lo` gets 1 - w_hi
};

// Per-coordinate interpolation between neighbouring tile centers along one axis.
std::vector<AxisWeights> axis_weights(std::size_t extent, std::size_t tile) {
  const std::size_t tiles = (extent + tile - 1) / tile;
  std::vector<double> centers(tiles);
  for (std::size_t t = 0; t < tiles; ++t) {
    const std::size_t begin = t * tile;
    const std::size_t end = std::min(begin + tile, extent);
    centers[t] = 0.5 * static_cast<double>(begin + end - 1);
  }

  std::vector<AxisWeights> out(extent);
  for (std::size_t x = 0; x < extent; ++x) {
    const double pos = static_cast<double>(x);
    if (pos <= centers.front()) {
      out[x] = {0, 0, 0.0};
    } else if (pos >= centers.back()) {
      out[x] = {tiles - 1, tiles - 1, 0.0};
    } else {
      std::size_t t = x / tile;
      if (pos < centers[t]) --t;
      out[x] = {t, t + 1, (pos - centers[t]) / (centers[t + 1] - centers[t])};
    }
  }
  return out;
}

}  // namespace

GrayImage lhe(const GrayImage& image, std::size_t tile) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  if (tile < 2 || tile > std::min(w, h)) {
    throw InvalidArgument("lhe: tile size must lie in [2, min(width, height)]");
  }

  const std::size_t tiles_x = (w + tile - 1) / tile;
  const std::size_t tiles_y = (h + tile - 1) / tile;

  std::vector<LevelMapping> maps(tiles_x * tiles_y);
  for (std::size_t ty = 0; ty < tiles_y; ++ty) {
    for (std::size_t tx = 0; tx < tiles_x; ++tx) {
      Histogram hist;
      const std::size_t y_end = std::min((ty + 1) * tile, h);
      const std::size_t x_end = std::min((tx + 1) * tile, w);
      for (std::size_t y = ty * tile; y < y_end; ++y) {
        for (std::size_t x = tx * tile; x < x_end; ++x) ++hist.counts[image.at(x, y)];
      }
      hist.total = (y_end - ty * tile) * (x_end - tx * tile);
      maps[ty * tiles_x + tx] = ghe_mapping(hist);
    }
  }

  const auto wx = axis_weights(w, tile);
  const auto wy = axis_weights(h, tile);

  GrayImage out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const auto& ay = wy[y];
    const auto row_lo = maps.begin() + static_cast<std::ptrdiff_t>(ay.lo * tiles_x);
    const auto row_hi = maps.begin() + static_cast<std::ptrdiff_t>(ay.hi * tiles_x);
    for (std::size_t x = 0; x < w; ++x) {
      const auto& ax = wx[x];
      const auto v = image.at(x, y);
      const double top = (1.0 - ax.w_hi) * row_lo[ax.lo].table[v] + ax.w_hi * row_lo[ax.hi].table[v];
      const double bottom =
          (1.0 - ax.w_hi) * row_hi[ax.lo].table[v] + ax.w_hi * row_hi[ax.hi].table[v];
      const double blended = (1.0 - ay.w_hi) * top + ay.w_hi * bottom;
      out.at(x, y) = static_cast<std::uint8_t>(std::clamp(round_half_away(blended), 0.0, 255.0));
    }
  }
  return out;
}

double chi_square_to_uniform(const Histogram& hist, std::size_t groups) {
  if (hist.total == 0) throw InvalidArgument("chi_square_to_uniform: empty histogram");
  if (groups == 0 || groups > kLevels || kLevels % groups != 0) {
    throw InvalidArgument("chi_square_to_uniform: group count must divide 256");
  }
  const std::size_t width = kLevels / groups;
  const double expected = static_cast<double>(hist.total) / static_cast<double>(groups);
  double chi = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    std::uint64_t c = 0;
    for (std::size_t i = g * width; i < (g + 1) * width; ++i) c += hist.counts[i];
    const double d = static_cast<double>(c) - expected;
    chi += d * d / expected;
  }
  return chi;
}

}  // namespace fpe
