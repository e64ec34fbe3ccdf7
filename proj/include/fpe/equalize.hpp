#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "fpe/image.hpp"

namespace fpe {

/// Gray-level lookup table.
struct LevelMapping {
  std::array<std::uint8_t, kLevels> table{};

  static LevelMapping identity();
  bool is_monotone() const noexcept;
};

/// table[i] = round(255 * CDF(i)). Throws InvalidArgument on an empty histogram.
LevelMapping ghe_mapping(const Histogram& hist);

GrayImage apply_mapping(const GrayImage& image, const LevelMapping& mapping);

/// Global histogram equalization. A constant image becomes all-255.
GrayImage ghe(const GrayImage& image);

inline constexpr std::size_t kDefaultTile = 16;

/// Local histogram equalization over non-overlapping tile x tile blocks. Each
/// pixel blends the mappings of the four nearest tile centers bilinearly; outside
/// the outermost centers the weights are clamped. Throws InvalidArgument unless
/// 2 <= tile <= min(width, height).
GrayImage lhe(const GrayImage& image, std::size_t tile = kDefaultTile);

inline constexpr std::size_t kFlatnessGroups = 16;

/// Pearson chi-square distance from the uniform distribution, measured over
/// `groups` equal-width runs of gray levels. Equalization relocates whole bins
/// without splitting them, so a per-level statistic cannot see it flatten; the
/// grouped one can. `groups` must divide 256.
double chi_square_to_uniform(const Histogram& hist, std::size_t groups = kFlatnessGroups);

}  // namespace fpe
