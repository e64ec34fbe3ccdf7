#pragma once

#include <cstdint>
#include <variant>

#include "fpe/image.hpp"
#include "fpe/threshold.hpp"
#include "fpe/wavelet.hpp"

namespace fpe {

/// How the illumination ratio xi is obtained.
struct XiSeeded {
  std::uint64_t seed = 42;
};
struct XiDeterministic {};
struct XiFixed {
  double value = 1.0;
};
using XiMode = std::variant<XiSeeded, XiDeterministic, XiFixed>;

/// xi = sigma_max(N) / sigma_max(ll).
///  seeded: N is an m x n matrix of standard normals drawn from GaussianSource(seed).
///  deterministic: sigma_max(N) is replaced by its asymptote sqrt(m) + sqrt(n).
///  fixed: the given value.
/// Throws ZeroSubband when ll is zero, InvalidArgument for a non-positive fixed
/// value or an ll smaller than 2x2.
double compute_xi(const RealPlane& ll, const XiMode& mode);

struct EnhanceOptions {
  XiMode xi_mode = XiSeeded{};
  Requantize requantize = Requantize::clamp;
  FuzzyMembershipParams fuzzy;
  PreEqualize pre_equalize = PreEqualize::automatic;
  LowContrastTrigger trigger;
};

/// Real-valued stage of the enhancement, before quantization. `adjusted_bands`
/// is what was fed to idwt2: the scaled LL with the input's detail bands.
struct IlluminationCorrection {
  SubbandSet input_bands;
  SubbandSet adjusted_bands;
  RealPlane plane;
  double xi = 1.0;
};

/// dwt2 -> svd(LL) -> singular values scaled by xi -> LL rebuilt -> idwt2 with
/// the detail bands untouched.
IlluminationCorrection correct_illumination(const GrayImage& image, const XiMode& mode);

struct EnhanceResult {
  GrayImage enhanced;
  GrayImage ridge_map;
  double xi = 1.0;
  int threshold = 0;
  ImageMetrics input_metrics;
  ImageMetrics output_metrics;
};

/// Full enhancement: illumination correction, requantization, fuzzy threshold on
/// the enhanced image and the resulting ridge/valley map.
EnhanceResult enhance(const GrayImage& image, const EnhanceOptions& options = {});

}  // namespace fpe
