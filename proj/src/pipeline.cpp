#include "fpe/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fpe/error.hpp"
#include "fpe/svd.hpp"
#include "fpe/synth.hpp"

namespace fpe {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_zero(const RealPlane& plane) {
  const auto v = plane.values();
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Largest singular value of an m x n matrix of standard normals.
double synthetic_sigma_max(std::size_t m, std::size_t n, std::uint64_t seed) {
  GaussianSource gauss(seed);
  std::vector<double> values(m * n);
  for (auto& v : values) v = gauss.next();
  return max_singular_value(RealPlane(n, m, std::move(values)));
}

double xi_from_sigma(const RealPlane& ll, double ll_sigma_max, const XiMode& mode) {
  const std::size_t m = ll.height();
  const std::size_t n = ll.width();
  return std::visit(
      overloaded{
          [&](const XiSeeded& s) { return synthetic_sigma_max(m, n, s.seed) / ll_sigma_max; },
          [&](const XiDeterministic&) {
            return (std::sqrt(static_cast<double>(m)) + std::sqrt(static_cast<double>(n))) /
                   ll_sigma_max;
          },
          [&](const XiFixed& f) { return f.value; },
      },
      mode);
}

void validate_mode(const XiMode& mode) {
  if (const auto* f = std::get_if<XiFixed>(&mode)) {
    if (!(f->value > 0.0) || !std::isfinite(f->value)) {
      throw InvalidArgument("xi: fixed value must be positive and finite");
    }
  }
}

}  // namespace

double compute_xi(const RealPlane& ll, const XiMode& mode) {
  validate_mode(mode);
  ll.require_finite("compute_xi");
  if (is_zero(ll)) throw ZeroSubband();
  if (std::holds_alternative<XiFixed>(mode)) return std::get<XiFixed>(mode).value;
  return xi_from_sigma(ll, max_singular_value(ll), mode);
}

IlluminationCorrection correct_illumination(const GrayImage& image, const XiMode& mode) {
  validate_mode(mode);
  SubbandSet bands = dwt2(to_real(image));
  if (is_zero(bands.ll)) throw ZeroSubband();

  const SvdFactors factors = svd(bands.ll);
  const double xi = xi_from_sigma(bands.ll, factors.sigma.front(), mode);

  std::vector<double> scaled(factors.sigma.size());
  std::transform(factors.sigma.begin(), factors.sigma.end(), scaled.begin(),
                 [xi](double s) { return xi * s; });

  SubbandSet adjusted = bands;
  adjusted.ll = reconstruct(factors, scaled);
  RealPlane plane = idwt2(adjusted);
  return IlluminationCorrection{std::move(bands), std::move(adjusted), std::move(plane), xi};
}

EnhanceResult enhance(const GrayImage& image, const EnhanceOptions& options) {
  IlluminationCorrection corrected = correct_illumination(image, options.xi_mode);

  EnhanceResult result{from_real(corrected.plane, options.requantize), GrayImage(1, 1),
                       corrected.xi, 0, metrics(image), {}};
  result.output_metrics = metrics(result.enhanced);
  result.threshold = fuzzy_threshold(histogram(result.enhanced), options.fuzzy,
                                     options.pre_equalize, result.enhanced, options.trigger)
                         .level;
  result.ridge_map = binarize(result.enhanced, result.threshold);
  return result;
}

}  // namespace fpe
