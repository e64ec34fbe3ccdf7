#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fpe/image.hpp"

namespace fpe {

/// Thin SVD of an m x n matrix (m = rows = plane height, n = columns = plane
/// width), r = min(m, n). `u` is m x r and `v` is n x r, both stored as
/// RealPlanes (width = r columns, height = rows).
struct SvdFactors {
  RealPlane u;
  std::vector<double> sigma;  // non-increasing, non-negative
  RealPlane v;
};

struct SvdOptions {
  /// A column pair counts as orthogonal once |<a_i,a_j>| <= tolerance * |a_i| |a_j|.
  double tolerance = 1e-12;
  int max_sweeps = 60;
};

/// One-sided (Hestenes) Jacobi SVD. Deterministic; each singular pair is signed so
/// the largest-magnitude entry of the U column is positive. Throws NonFiniteValue
/// or SvdNotConverged.
SvdFactors svd(const RealPlane& matrix, const SvdOptions& options = {});

double max_singular_value(const RealPlane& matrix);

/// U * diag(sigma) * V^T. Throws InvalidArgument on a length mismatch or a
/// negative entry.
RealPlane reconstruct(const SvdFactors& factors, std::span<const double> sigma);

}  // namespace fpe
