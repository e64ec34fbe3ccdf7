#include "fpe/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpe/error.hpp"

namespace fpe {

namespace {

void require_dims(std::size_t width, std::size_t height, const char* what) {
  if (width == 0 || height == 0) {
    throw InvalidArgument(std::string(what) + ": dimensions must be at least 1x1");
  }
}

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height)
    : GrayImage(width, height, std::vector<std::uint8_t>(width * height, 0)) {}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  require_dims(width, height, "GrayImage");
  if (pixels_.size() != width * height) {
    throw InvalidArgument("GrayImage: pixel count does not match width * height");
  }
}

RealPlane::RealPlane(std::size_t width, std::size_t height, double fill)
    : RealPlane(width, height, std::vector<double>(width * height, fill)) {}

RealPlane::RealPlane(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  require_dims(width, height, "RealPlane");
  if (values_.size() != width * height) {
    throw InvalidArgument("RealPlane: value count does not match width * height");
  }
}

bool RealPlane::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void RealPlane::require_finite(const char* what) const {
  if (!all_finite()) {
    throw NonFiniteValue(std::string(what) + ": plane contains NaN or infinite values");
  }
}

Histogram Histogram::from_counts(const std::array<std::uint64_t, kLevels>& counts) {
  Histogram h;
  h.counts = counts;
  for (auto c : counts) h.total += c;
  return h;
}

std::array<double, kLevels> Histogram::probabilities() const {
  if (total == 0) throw InvalidArgument("histogram is empty");
  std::array<double, kLevels> p{};
  const double n = static_cast<double>(total);
  for (std::size_t i = 0; i < kLevels; ++i) p[i] = static_cast<double>(counts[i]) / n;
  return p;
}

std::array<double, kLevels> Histogram::cdf() const {
  if (total == 0) throw InvalidArgument("histogram is empty");
  // Integer running sums keep the last entry exactly 1.
  std::array<double, kLevels> t{};
  std::uint64_t running = 0;
  const double n = static_cast<double>(total);
  for (std::size_t i = 0; i < kLevels; ++i) {
    running += counts[i];
    t[i] = static_cast<double>(running) / n;
  }
  return t;
}

std::size_t Histogram::occupied_levels() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::uint64_t c) { return c > 0; }));
}

Histogram histogram(const GrayImage& image) {
  Histogram h;
  for (auto v : image.pixels()) ++h.counts[v];
  h.total = image.size();
  return h;
}

ImageMetrics metrics(const GrayImage& image) {
  const Histogram h = histogram(image);
  const double n = static_cast<double>(h.total);

  ImageMetrics m;
  int lo = 255;
  int hi = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < kLevels; ++i) {
    if (h.counts[i] == 0) continue;
    lo = std::min(lo, static_cast<int>(i));
    hi = std::max(hi, static_cast<int>(i));
    sum += static_cast<double>(h.counts[i]) * static_cast<double>(i);
  }
  m.mean = sum / n;
  m.dynamic_range = hi - lo;

  double var = 0.0;
  double entropy = 0.0;
  for (std::size_t i = 0; i < kLevels; ++i) {
    if (h.counts[i] == 0) continue;
    const double c = static_cast<double>(h.counts[i]);
    const double d = static_cast<double>(i) - m.mean;
    var += c * d * d;
    const double p = c / n;
    entropy -= p * std::log2(p);
  }
  // A single occupied level must report exactly zero spread.
  m.rms_contrast = m.dynamic_range == 0 ? 0.0 : std::sqrt(var / n);
  m.entropy = entropy <= 0.0 ? 0.0 : entropy;
  return m;
}

double round_half_away(double v) noexcept { return std::round(v); }

RealPlane to_real(const GrayImage& image) {
  std::vector<double> values(image.pixels().begin(), image.pixels().end());
  return RealPlane(image.width(), image.height(), std::move(values));
}

GrayImage from_real(const RealPlane& plane, Requantize mode) {
  plane.require_finite("from_real");
  const auto values = plane.values();
  std::vector<std::uint8_t> out(values.size());

  auto quantize = [](double v) {
    return static_cast<std::uint8_t>(std::clamp(round_half_away(v), 0.0, 255.0));
  };

  if (mode == Requantize::clamp) {
    std::transform(values.begin(), values.end(), out.begin(), quantize);
  } else {
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (hi == lo) {
      std::fill(out.begin(), out.end(), std::uint8_t{128});
    } else {
      // Multiply before dividing: 255 * (v - lo) / span keeps exact halves exact.
      const double span = hi - lo;
      std::transform(values.begin(), values.end(), out.begin(),
                     [&](double v) { return quantize(255.0 * (v - lo) / span); });
    }
  }
  return GrayImage(plane.width(), plane.height(), std::move(out));
}

double mean_squared_difference(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InvalidArgument("mean_squared_difference: image dimensions differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a.pixels()[i]) - static_cast<double>(b.pixels()[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

}  // namespace fpe
