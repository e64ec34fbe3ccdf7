#include "fpe/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fpe/error.hpp"

namespace fpe {

double GaussianSource::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

GrayImage generate_fingerprint_like(const RidgePattern& p) {
  if (p.width == 0 || p.height == 0) {
    throw InvalidArgument("generate: dimensions must be at least 1x1");
  }
  if (p.band.lo < 0 || p.band.hi > 255 || p.band.lo >= p.band.hi) {
    throw InvalidArgument("generate: intensity band must satisfy 0 <= lo < hi <= 255");
  }
  if (!(p.ridge_period >= 4.0) || !std::isfinite(p.ridge_period)) {
    throw InvalidArgument("generate: ridge period must be at least 4 pixels");
  }
  if (!(p.noise_sigma >= 0.0) || !std::isfinite(p.noise_sigma) || !std::isfinite(p.orientation)) {
    throw InvalidArgument("generate: noise sigma must be non-negative and orientation finite");
  }

  const double lo = p.band.lo;
  const double hi = p.band.hi;
  const double amplitude = 0.5 * (hi - lo);
  const double freq = 2.0 * std::numbers::pi / p.ridge_period;
  const double cx = std::cos(p.orientation);
  const double sy = std::sin(p.orientation);

  GaussianSource noise(p.seed);
  GrayImage out(p.width, p.height);
  for (std::size_t y = 0; y < p.height; ++y) {
    for (std::size_t x = 0; x < p.width; ++x) {
      const double phase = freq * (static_cast<double>(x) * cx + static_cast<double>(y) * sy);
      double v = lo + amplitude * (1.0 + std::sin(phase));
      if (p.noise_sigma > 0.0) v += p.noise_sigma * noise.next();
      out.at(x, y) = static_cast<std::uint8_t>(std::clamp(round_half_away(v), lo, hi));
    }
  }
  return out;
}

TierPreset tier_preset(QualityTier tier) noexcept {
  switch (tier) {
    case QualityTier::best:
      return {{0, 255}, 5.0};
    case QualityTier::medium:
      return {{60, 200}, 10.0};
    case QualityTier::poor:
      break;
  }
  return {{100, 150}, 15.0};
}

std::string_view tier_name(QualityTier tier) noexcept {
  switch (tier) {
    case QualityTier::best:
      return "best";
    case QualityTier::medium:
      return "medium";
    case QualityTier::poor:
      break;
  }
  return "poor";
}

QualityTier parse_tier(std::string_view name) {
  for (auto t : {QualityTier::best, QualityTier::medium, QualityTier::poor}) {
    if (tier_name(t) == name) return t;
  }
  throw InvalidArgument("unknown quality tier '" + std::string(name) + "'");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

GrayImage corpus_image(QualityTier tier, std::size_t index, std::uint64_t seed, std::size_t width,
                       std::size_t height) {
  const std::uint64_t image_seed =
      splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tier) * 0x10000 + index));
  GaussianSource params(image_seed);
  const TierPreset preset = tier_preset(tier);

  RidgePattern p;
  p.width = width;
  p.height = height;
  p.ridge_period = 6.0 + 6.0 * params.uniform();
  p.orientation = std::numbers::pi * params.uniform();
  p.band = preset.band;
  p.noise_sigma = preset.noise_sigma;
  p.seed = splitmix64(image_seed);
  return generate_fingerprint_like(p);
}

}  // namespace fpe
