#include "fpe/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fpe/error.hpp"

namespace fpe {

namespace {

// Exact integer class statistics for the split {0..t} | {t+1..255}.
struct SplitSweep {
  const Histogram& hist;
  std::uint64_t level_sum = 0;  // sum of i * counts[i]
  std::uint64_t c0 = 0;
  std::uint64_t s0 = 0;

  explicit SplitSweep(const Histogram& h) : hist(h) {
    for (std::size_t i = 0; i < kLevels; ++i) level_sum += i * h.counts[i];
  }

  void advance(std::size_t t) {
    c0 += hist.counts[t];
    s0 += t * hist.counts[t];
  }

  std::uint64_t c1() const { return hist.total - c0; }
  bool valid() const { return c0 > 0 && c1() > 0; }
  double mean0() const { return static_cast<double>(s0) / static_cast<double>(c0); }
  double mean1() const {
    return static_cast<double>(level_sum - s0) / static_cast<double>(c1());
  }
};

void require_dichotomy(const Histogram& hist) {
  if (hist.occupied_levels() < 2) throw NoDichotomy();
}

// Smallest index with the best value; `better(a, b)` is strict.
template <typename Better>
int select_level(const CriterionCurve& curve, Better better) {
  int best = -1;
  for (std::size_t t = 0; t < kLevels; ++t) {
    if (!curve[t]) continue;
    if (best < 0 || better(*curve[t], *curve[best])) best = static_cast<int>(t);
  }
  return best;
}

}  // namespace

ThresholdResult otsu(const Histogram& hist) {
  require_dichotomy(hist);
  const double n = static_cast<double>(hist.total);

  ThresholdResult result;
  SplitSweep sweep(hist);
  for (std::size_t k = 0; k < kLevels; ++k) {
    sweep.advance(k);
    if (!sweep.valid()) continue;
    const double w0 = static_cast<double>(sweep.c0) / n;
    const double w1 = static_cast<double>(sweep.c1()) / n;
    const double d = sweep.mean1() - sweep.mean0();
    result.criterion_curve[k] = w0 * w1 * d * d;
  }
  result.level = select_level(result.criterion_curve, [](double a, double b) { return a > b; });
  return result;
}

double fuzzy_membership(int g, int t, double m0, double m1, const FuzzyMembershipParams& params) {
  const double m = g <= t ? m0 : m1;
  return 1.0 / (1.0 + std::abs(static_cast<double>(g) - m) / params.bandwidth);
}

CriterionCurve fuzziness_curve(const Histogram& hist, const FuzzyMembershipParams& params) {
  if (!(params.bandwidth > 0.0) || !std::isfinite(params.bandwidth)) {
    throw InvalidArgument("fuzzy threshold: bandwidth must be a positive finite number");
  }
  const double n = static_cast<double>(hist.total);

  CriterionCurve curve{};
  SplitSweep sweep(hist);
  for (std::size_t t = 0; t < kLevels; ++t) {
    sweep.advance(t);
    if (!sweep.valid()) continue;
    const double m0 = sweep.mean0();
    const double m1 = sweep.mean1();
    double acc = 0.0;
    for (std::size_t g = 0; g < kLevels; ++g) {
      if (hist.counts[g] == 0) continue;
      const double mu =
          fuzzy_membership(static_cast<int>(g), static_cast<int>(t), m0, m1, params);
      acc += static_cast<double>(hist.counts[g]) * std::min(mu, 1.0 - mu);
    }
    curve[t] = 2.0 * acc / n;
  }
  return curve;
}

ThresholdResult fuzzy_threshold(const Histogram& hist, const FuzzyMembershipParams& params,
                                PreEqualize pre_equalize, const GrayImage& source,
                                const LowContrastTrigger& trigger) {
  require_dichotomy(hist);

  const bool want_equalize =
      pre_equalize == PreEqualize::on ||
      (pre_equalize == PreEqualize::automatic && trigger.fires(metrics(source)));

  ThresholdResult result;
  if (want_equalize) {
    const LevelMapping mapping = ghe_mapping(histogram(source));
    const Histogram equalized = histogram(apply_mapping(source, mapping));
    // Rounding can merge the only two occupied levels; search the original then.
    if (equalized.occupied_levels() >= 2) {
      result.criterion_curve = fuzziness_curve(equalized, params);
      result.pre_equalized = true;
      result.equalized_level =
          select_level(result.criterion_curve, [](double a, double b) { return a < b; });
      int back = 0;
      while (mapping.table[back] < result.equalized_level) ++back;
      result.level = back;
      return result;
    }
  }

  result.criterion_curve = fuzziness_curve(hist, params);
  result.level = select_level(result.criterion_curve, [](double a, double b) { return a < b; });
  result.equalized_level = result.level;
  return result;
}

GrayImage binarize(const GrayImage& image, int level) {
  if (level < 0 || level > 255) throw InvalidArgument("binarize: level outside [0,255]");
  GrayImage out = image;
  for (auto& p : out.pixels()) p = p <= level ? 0 : 255;
  return out;
}

}  // namespace fpe
