#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

#include "fpe/image.hpp"

namespace fpe {

/// Standard-normal deviates from mt19937_64. Uniforms are built from the top 53
/// bits as (k + 0.5) / 2^53 so they lie strictly inside (0,1), and pairs are
/// turned into normals with the Box-Muller transform (cosine branch first). The
/// sequence is fully determined by the seed on every platform.
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double next();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct IntensityBand {
  int lo = 0;
  int hi = 255;
};

struct RidgePattern {
  std::size_t width = 256;
  std::size_t height = 256;
  double ridge_period = 8.0;  // pixels, >= 4
  double orientation = 0.0;   // radians
  IntensityBand band;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
};

/// Sinusoidal ridge/valley pattern scaled into the band, plus Gaussian noise,
/// clamped to the band and rounded. Throws InvalidArgument on a bad band, period,
/// size or noise level.
GrayImage generate_fingerprint_like(const RidgePattern& pattern);

enum class QualityTier { best, medium, poor };

struct TierPreset {
  IntensityBand band;
  double noise_sigma;
};

TierPreset tier_preset(QualityTier tier) noexcept;
std::string_view tier_name(QualityTier tier) noexcept;
/// Throws InvalidArgument on an unknown name.
QualityTier parse_tier(std::string_view name);

/// Corpus member `index` of a tier: ridge period and orientation drawn from the
/// seed, band and noise from the tier preset.
GrayImage corpus_image(QualityTier tier, std::size_t index, std::uint64_t seed,
                       std::size_t width = 256, std::size_t height = 256);

}  // namespace fpe
