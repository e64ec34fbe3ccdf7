#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

Matrix from_plane(const fpe::RealPlane& p) {
  Matrix m{p.height(), p.width(), std::vector<double>(p.values().begin(), p.values().end())};
  return m;
}

std::vector<double> singular_values_via_gram(const fpe::RealPlane& p) {
  const Matrix a = from_plane(p);
  const bool use_ata = a.rows >= a.cols;
  const std::size_t k = use_ata ? a.cols : a.rows;

  Matrix g{k, k, std::vector<double>(k * k, 0.0)};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      if (use_ata) {
        for (std::size_t r = 0; r < a.rows; ++r) s += a(r, i) * a(r, j);
      } else {
        for (std::size_t c = 0; c < a.cols; ++c) s += a(i, c) * a(j, c);
      }
      g(i, j) = s;
    }
  }

  double frob = 0.0;
  for (double v : g.a) frob += v * v;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) off += g(i, j) * g(i, j);
    if (off <= 1e-30 * frob || off == 0.0) break;

    for (std::size_t p0 = 0; p0 + 1 < k; ++p0) {
      for (std::size_t q = p0 + 1; q < k; ++q) {
        const double gpq = g(p0, q);
        if (gpq == 0.0) continue;
        const double theta = (g(q, q) - g(p0, p0)) / (2.0 * gpq);
        const double t =
            (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G <- J^T G J with J the rotation in the (p0, q) plane.
        for (std::size_t r = 0; r < k; ++r) {
          const double grp = g(r, p0);
          const double grq = g(r, q);
          g(r, p0) = c * grp - s * grq;
          g(r, q) = s * grp + c * grq;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const double gpr = g(p0, r);
          const double gqr = g(q, r);
          g(p0, r) = c * gpr - s * gqr;
          g(q, r) = s * gpr + c * gqr;
        }
      }
    }
  }

  std::vector<double> sigma(k);
  for (std::size_t i = 0; i < k; ++i) sigma[i] = std::sqrt(std::max(0.0, g(i, i)));
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

double power_iteration_sigma_max(const fpe::RealPlane& p, int max_iter) {
  const Matrix a = from_plane(p);
  std::vector<double> x(a.cols), ax(a.rows), y(a.cols);
  for (std::size_t j = 0; j < a.cols; ++j) x[j] = 1.0 + 0.01 * static_cast<double>(j % 7);

  auto normalize = [](std::vector<double>& v) {
    double n = 0.0;
    for (double e : v) n += e * e;
    n = std::sqrt(n);
    if (n > 0.0)
      for (double& e : v) e /= n;
    return n;
  };
  normalize(x);

  double lambda = 0.0;
  int stable = 0;
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < a.rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
      ax[i] = s;
    }
    double rq = 0.0;
    for (double e : ax) rq += e * e;  // x^T A^T A x with |x| = 1
    for (std::size_t j = 0; j < a.cols; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.rows; ++i) s += a(i, j) * ax[i];
      y[j] = s;
    }
    if (normalize(y) == 0.0) return 0.0;
    x = y;
    if (std::abs(rq - lambda) <= 1e-16 * rq) {
      if (++stable >= 5) return std::sqrt(rq);
    } else {
      stable = 0;
    }
    lambda = rq;
  }
  return std::sqrt(lambda);
}

OtsuSweep otsu_sweep(const fpe::Histogram& h) {
  const auto p = h.probabilities();
  double mu_t = 0.0;
  for (int i = 0; i < 256; ++i) mu_t += i * p[i];
  double var_t = 0.0;
  for (int i = 0; i < 256; ++i) var_t += (i - mu_t) * (i - mu_t) * p[i];

  OtsuSweep out;
  double best_between = -1.0;
  double best_within = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 256; ++k) {
    std::uint64_t c0 = 0;
    for (int i = 0; i <= k; ++i) c0 += h.counts[i];
    if (c0 == 0 || c0 == h.total) continue;

    double w0 = 0.0, m0 = 0.0;
    for (int i = 0; i <= k; ++i) {
      w0 += p[i];
      m0 += i * p[i];
    }
    double w1 = 0.0, m1 = 0.0;
    for (int i = k + 1; i < 256; ++i) {
      w1 += p[i];
      m1 += i * p[i];
    }
    m0 /= w0;
    m1 /= w1;
    double v0 = 0.0, v1 = 0.0;
    for (int i = 0; i <= k; ++i) v0 += (i - m0) * (i - m0) * p[i];
    for (int i = k + 1; i < 256; ++i) v1 += (i - m1) * (i - m1) * p[i];
    const double within = v0 + v1;  // w0*sigma0^2 + w1*sigma1^2
    const double between = w0 * w1 * (m1 - m0) * (m1 - m0);

    out.max_identity_defect = std::max(out.max_identity_defect, std::abs(var_t - between - within));
    if (between > best_between) {
      best_between = between;
      out.argmax_between = k;
    }
    if (within < best_within) {
      best_within = within;
      out.argmin_within = k;
    }
  }
  return out;
}

int fuzzy_sweep_per_pixel(const fpe::GrayImage& img, double bandwidth, std::vector<double>* gamma) {
  const auto px = img.pixels();
  const double n = static_cast<double>(px.size());
  if (gamma) gamma->assign(256, std::numeric_limits<double>::quiet_NaN());

  int best = -1;
  double best_gamma = 0.0;
  for (int t = 0; t < 256; ++t) {
    double c0 = 0, s0 = 0, c1 = 0, s1 = 0;
    for (auto v : px) {
      if (v <= t) {
        c0 += 1;
        s0 += v;
      } else {
        c1 += 1;
        s1 += v;
      }
    }
    if (c0 == 0 || c1 == 0) continue;
    const double m0 = s0 / c0;
    const double m1 = s1 / c1;
    double acc = 0.0;
    for (auto v : px) {
      const double m = v <= t ? m0 : m1;
      const double mu = 1.0 / (1.0 + std::abs(v - m) / bandwidth);
      acc += std::min(mu, 1.0 - mu);
    }
    const double g = 2.0 * acc / n;
    if (gamma) (*gamma)[t] = g;
    if (best < 0 || g < best_gamma) {
      best = t;
      best_gamma = g;
    }
  }
  return best;
}

}  // namespace oracle
