#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fpe {

/// 8-bit grayscale image stored row-major. Dimensions are always at least 1x1.
class GrayImage {
public:
  /// Zero-filled image. Throws InvalidArgument on a zero dimension.
  GrayImage(std::size_t width, std::size_t height);
  /// Throws InvalidArgument on a zero dimension or a size mismatch.
  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  std::span<const std::uint8_t> pixels() const& noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() & noexcept { return pixels_; }
  void pixels() && = delete;  // a view into a temporary would dangle

  bool operator==(const GrayImage&) const = default;

private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Row-major grid of doubles; carrier for wavelet subbands and matrices.
class RealPlane {
public:
  RealPlane(std::size_t width, std::size_t height, double fill = 0.0);
  RealPlane(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  double at(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }
  double& at(std::size_t x, std::size_t y) { return values_[y * width_ + x]; }

  std::span<const double> values() const& noexcept { return values_; }
  std::span<double> values() & noexcept { return values_; }
  void values() && = delete;

  bool all_finite() const noexcept;
  /// Throws NonFiniteValue naming `what` if any entry is NaN or infinite.
  void require_finite(const char* what) const;

  bool operator==(const RealPlane&) const = default;

private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> values_;
};

inline constexpr std::size_t kLevels = 256;

/// Occurrence counts over the 256 gray levels.
struct Histogram {
  std::array<std::uint64_t, kLevels> counts{};
  std::uint64_t total = 0;

  /// Builds a histogram from raw counts; total is their sum.
  static Histogram from_counts(const std::array<std::uint64_t, kLevels>& counts);

  /// p_i = counts[i] / total. Requires total > 0.
  std::array<double, kLevels> probabilities() const;
  /// Running sum of probabilities(); the last entry is 1.
  std::array<double, kLevels> cdf() const;
  /// Number of levels with a non-zero count.
  std::size_t occupied_levels() const noexcept;
};

Histogram histogram(const GrayImage& image);

struct ImageMetrics {
  double mean = 0.0;
  double rms_contrast = 0.0;  // population standard deviation
  int dynamic_range = 0;      // max - min
  double entropy = 0.0;       // bits
};

ImageMetrics metrics(const GrayImage& image);

/// Round half away from zero; the single quantization rule used everywhere.
double round_half_away(double v) noexcept;

enum class Requantize { clamp, rescale };

RealPlane to_real(const GrayImage& image);

/// clamp: round then clip to [0,255]. rescale: affine map [min,max] -> [0,255] then round;
/// a constant plane maps to 128. Throws NonFiniteValue on NaN/inf input.
GrayImage from_real(const RealPlane& plane, Requantize mode);

/// Mean of squared pixel differences. Throws InvalidArgument on a dimension mismatch.
double mean_squared_difference(const GrayImage& a, const GrayImage& b);

}  // namespace fpe
