#pragma once

#include <array>
#include <optional>

#include "fpe/equalize.hpp"
#include "fpe/image.hpp"

namespace fpe {

/// Objective value at every candidate level. Candidates that leave one class empty
/// carry no value.
using CriterionCurve = std::array<std::optional<double>, kLevels>;

struct ThresholdResult {
  int level = 0;
  CriterionCurve criterion_curve{};
  /// True when the fuzzy search ran on the equalized histogram. The curve is then
  /// indexed by equalized levels, `equalized_level` is the optimum there and
  /// `level` has been mapped back to the original gray scale.
  bool pre_equalized = false;
  int equalized_level = 0;
};

struct FuzzyMembershipParams {
  double bandwidth = 255.0;  // C in mu(g) = 1 / (1 + |g - m| / C)
};

enum class PreEqualize { automatic, on, off };

/// Auto pre-equalization fires when rms_contrast < min_rms_contrast or
/// dynamic_range < min_dynamic_range.
struct LowContrastTrigger {
  double min_rms_contrast = 20.0;
  int min_dynamic_range = 128;

  bool fires(const ImageMetrics& m) const noexcept {
    return m.rms_contrast < min_rms_contrast || m.dynamic_range < min_dynamic_range;
  }
};

/// Otsu: smallest k maximizing the between-class variance w0 w1 (mu1 - mu0)^2.
/// Throws NoDichotomy when fewer than two levels are occupied.
ThresholdResult otsu(const Histogram& hist);

/// Membership of gray level g under a split at t with class means m0, m1.
double fuzzy_membership(int g, int t, double m0, double m1, const FuzzyMembershipParams& params);

/// Linear index of fuzziness of the split at every candidate level.
CriterionCurve fuzziness_curve(const Histogram& hist, const FuzzyMembershipParams& params);

/// Fuzzy threshold: smallest t minimizing the linear index of fuzziness. With
/// pre-equalization the search runs on histogram(ghe(source)) and the result is
/// mapped back to the smallest original level whose equalized value reaches it.
/// Throws NoDichotomy.
ThresholdResult fuzzy_threshold(const Histogram& hist, const FuzzyMembershipParams& params,
                                PreEqualize pre_equalize, const GrayImage& source,
                                const LowContrastTrigger& trigger = {});

/// <= level -> 0, > level -> 255. Throws InvalidArgument outside [0,255].
GrayImage binarize(const GrayImage& image, int level);

}  // namespace fpe
