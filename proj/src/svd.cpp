#include "fpe/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fpe/error.hpp"

namespace fpe {

namespace {

// Column-major dense matrix; columns are the unit of work for one-sided Jacobi.
struct ColumnMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  ColumnMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double* col(std::size_t j) { return data.data() + j * rows; }
  const double* col(std::size_t j) const { return data.data() + j * rows; }
};

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void rotate(double* p, double* q, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = p[i];
    const double b = q[i];
    p[i] = c * a - s * b;
    q[i] = s * a + c * b;
  }
}

// Flips each singular pair so the largest-magnitude entry of the `lead` column is
// positive (first index wins ties).
void apply_sign_convention(ColumnMatrix& lead, ColumnMatrix& other) {
  for (std::size_t k = 0; k < lead.cols; ++k) {
    double* lk = lead.col(k);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < lead.rows; ++i) {
      if (std::abs(lk[i]) > std::abs(lk[arg])) arg = i;
    }
    if (lk[arg] < 0.0) {
      for (std::size_t i = 0; i < lead.rows; ++i) lk[i] = -lk[i];
      double* ok = other.col(k);
      for (std::size_t i = 0; i < other.rows; ++i) ok[i] = -ok[i];
    }
  }
}

struct TallFactors {
  ColumnMatrix u;  // m x n
  std::vector<double> sigma;
  ColumnMatrix v;  // n x n
};

// Hestenes one-sided Jacobi for m >= n. `a` is consumed.
TallFactors jacobi_tall(ColumnMatrix a, const SvdOptions& options) {
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;

  ColumnMatrix v(n, n);
  for (std::size_t j = 0; j < n; ++j) v.col(j)[j] = 1.0;

  bool converged = n < 2;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double* ap = a.col(p);
        double* aq = a.col(q);
        const double alpha = dot(ap, ap, m);
        const double beta = dot(aq, aq, m);
        const double gamma = dot(ap, aq, m);
        if (gamma == 0.0 ||
            std::abs(gamma) <= options.tolerance * std::sqrt(alpha) * std::sqrt(beta)) {
          continue;
        }
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        rotate(ap, aq, m, c, s);
        rotate(v.col(p), v.col(q), n, c, s);
      }
    }
  }
  if (!converged) {
    throw SvdNotConverged("svd: no convergence after " + std::to_string(options.max_sweeps) +
                          " Jacobi sweeps");
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(dot(a.col(j), a.col(j), m));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  TallFactors f{ColumnMatrix(m, n), std::vector<double>(n), ColumnMatrix(n, n)};
  const double sigma_max = n > 0 ? norms[order[0]] : 0.0;
  // Columns this small carry no reliable direction; their U vectors are completed
  // to an orthonormal basis instead.
  const double negligible =
      sigma_max * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(m, n));

  std::vector<std::size_t> to_complete;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    f.sigma[k] = norms[j];
    std::copy_n(v.col(j), n, f.v.col(k));
    if (norms[j] > negligible && norms[j] > 0.0) {
      const double inv = 1.0 / norms[j];
      for (std::size_t i = 0; i < m; ++i) f.u.col(k)[i] = a.col(j)[i] * inv;
    } else {
      to_complete.push_back(k);
    }
  }

  // Deterministic Gram-Schmidt completion against the accepted columns, trying
  // coordinate vectors in order.
  std::vector<bool> filled(n, true);
  for (auto k : to_complete) filled[k] = false;
  std::size_t candidate = 0;
  for (auto k : to_complete) {
    double* uk = f.u.col(k);
    for (; candidate < m; ++candidate) {
      std::fill_n(uk, m, 0.0);
      uk[candidate] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!filled[j]) continue;
          const double proj = dot(f.u.col(j), uk, m);
          for (std::size_t i = 0; i < m; ++i) uk[i] -= proj * f.u.col(j)[i];
        }
      }
      const double norm = std::sqrt(dot(uk, uk, m));
      if (norm > 0.5) {
        for (std::size_t i = 0; i < m; ++i) uk[i] /= norm;
        filled[k] = true;
        ++candidate;
        break;
      }
    }
  }

  apply_sign_convention(f.u, f.v);
  return f;
}

RealPlane to_plane(const ColumnMatrix& c) {
  RealPlane out(c.cols, c.rows);
  for (std::size_t j = 0; j < c.cols; ++j) {
    for (std::size_t i = 0; i < c.rows; ++i) out.at(j, i) = c.col(j)[i];
  }
  return out;
}

}  // namespace

SvdFactors svd(const RealPlane& matrix, const SvdOptions& options) {
  matrix.require_finite("svd");
  const std::size_t m = matrix.height();
  const std::size_t n = matrix.width();
  const bool transposed = m < n;

  // Work on A (m >= n) or on A^T, whose factors swap roles.
  ColumnMatrix work(transposed ? n : m, transposed ? m : n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (transposed) {
        work.col(i)[j] = matrix.at(j, i);
      } else {
        work.col(j)[i] = matrix.at(j, i);
      }
    }
  }

  TallFactors f = jacobi_tall(std::move(work), options);
  if (!transposed) {
    return SvdFactors{to_plane(f.u), std::move(f.sigma), to_plane(f.v)};
  }

  // A = V_t S U_t^T: U of A is V of A^T, so the sign convention moves to it.
  apply_sign_convention(f.v, f.u);
  return SvdFactors{to_plane(f.v), std::move(f.sigma), to_plane(f.u)};
}

double max_singular_value(const RealPlane& matrix) { return svd(matrix).sigma.front(); }

RealPlane reconstruct(const SvdFactors& factors, std::span<const double> sigma) {
  const std::size_t r = factors.sigma.size();
  if (sigma.size() != r) {
    throw InvalidArgument("reconstruct: expected " + std::to_string(r) + " singular values, got " +
                          std::to_string(sigma.size()));
  }
  if (std::any_of(sigma.begin(), sigma.end(), [](double s) { return !(s >= 0.0); })) {
    throw InvalidArgument("reconstruct: singular values must be non-negative");
  }
  const std::size_t m = factors.u.height();
  const std::size_t n = factors.v.height();
  RealPlane out(n, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      const double us = factors.u.at(k, i) * sigma[k];
      if (us == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out.at(j, i) += us * factors.v.at(k, j);
    }
  }
  return out;
}

}  // namespace fpe
