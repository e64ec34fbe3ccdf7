#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fpe/error.hpp"
#include "fpe/svd.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fpe;

namespace {

double frobenius(const RealPlane& p) {
  double s = 0.0;
  for (double v : p.values()) s += v * v;
  return std::sqrt(s);
}

double reconstruction_error(const RealPlane& a, const SvdFactors& f) {
  const auto r = reconstruct(f, f.sigma);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values()[i] - r.values()[i];
    s += d * d;
  }
  return std::sqrt(s) / std::max(frobenius(a), 1.0);
}

// max |Q^T Q - I| for a plane whose columns are Q's columns.
double orthonormality_defect(const RealPlane& q) {
  double worst = 0.0;
  for (std::size_t i = 0; i < q.width(); ++i) {
    for (std::size_t j = 0; j < q.width(); ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < q.height(); ++r) s += q.at(i, r) * q.at(j, r);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

void expect_valid(const RealPlane& a, const SvdFactors& f) {
  const std::size_t r = std::min(a.width(), a.height());
  ASSERT_EQ(f.sigma.size(), r);
  EXPECT_EQ(f.u.height(), a.height());
  EXPECT_EQ(f.u.width(), r);
  EXPECT_EQ(f.v.height(), a.width());
  EXPECT_EQ(f.v.width(), r);
  EXPECT_TRUE(std::is_sorted(f.sigma.rbegin(), f.sigma.rend()));
  EXPECT_GE(f.sigma.back(), 0.0);
  EXPECT_LE(orthonormality_defect(f.u), 1e-8);
  EXPECT_LE(orthonormality_defect(f.v), 1e-8);
  EXPECT_LE(reconstruction_error(a, f), 1e-10);
}

}  // namespace

TEST(Svd, DiagonalWithNegativeEntry) {
  const auto f = svd(testutil::plane_rows({{3, 0}, {0, -2}}));
  EXPECT_NEAR(f.sigma[0], 3.0, 1e-12);
  EXPECT_NEAR(f.sigma[1], 2.0, 1e-12);
}

TEST(Svd, PermutedDiagonal) {
  const auto f = svd(testutil::plane_rows({{0, 2}, {1, 0}}));
  EXPECT_NEAR(f.sigma[0], 2.0, 1e-12);
  EXPECT_NEAR(f.sigma[1], 1.0, 1e-12);
}

TEST(Svd, RankDeficientAndZero) {
  const auto ones = RealPlane(3, 3, 1.0);
  const auto f = svd(ones);
  expect_valid(ones, f);
  EXPECT_NEAR(f.sigma[0], 3.0, 1e-12);
  EXPECT_NEAR(f.sigma[1], 0.0, 1e-12);

  const auto zero = RealPlane(4, 3);
  const auto z = svd(zero);
  expect_valid(zero, z);
  for (double s : z.sigma) EXPECT_EQ(s, 0.0);
  EXPECT_EQ(max_singular_value(zero), 0.0);
}

TEST(Svd, Identity) {
  RealPlane eye(4, 4);
  for (std::size_t i = 0; i < 4; ++i) eye.at(i, i) = 1.0;
  EXPECT_NEAR(max_singular_value(eye), 1.0, 1e-15);
  expect_valid(eye, svd(eye));
}

TEST(Svd, SingleRowAndColumn) {
  const auto row = testutil::plane_rows({{3, 4}});
  expect_valid(row, svd(row));
  EXPECT_NEAR(svd(row).sigma[0], 5.0, 1e-12);
  const auto col = testutil::plane_rows({{-3}, {4}});
  expect_valid(col, svd(col));
  EXPECT_NEAR(svd(col).sigma[0], 5.0, 1e-12);
}

TEST(Svd, RejectsNonFinite) {
  auto a = RealPlane(2, 2, 1.0);
  a.at(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(svd(a), NonFiniteValue);
}

TEST(Svd, SweepBudgetExhaustionIsAnError) {
  std::mt19937_64 rng(2);
  const auto a = testutil::random_plane(rng, 12, 12);
  EXPECT_THROW(svd(a, SvdOptions{1e-12, 1}), SvdNotConverged);
}

TEST(Svd, RandomEightByFiveAgainstGramOracle) {
  std::mt19937_64 rng(8);
  const auto a = testutil::random_plane(rng, 5, 8);
  const auto f = svd(a);
  expect_valid(a, f);
  const auto expected = oracle::singular_values_via_gram(a);
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_NEAR(f.sigma[i], expected[i], 1e-8 * expected[0]);
}

TEST(Svd, RandomShapesProperty) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = testutil::random_plane(rng, 1 + rng() % 48, 1 + rng() % 48, 10.0);
    const auto f = svd(a);
    expect_valid(a, f);
  }
}

TEST(Svd, SignConventionAndDeterminism) {
  std::mt19937_64 rng(4);
  const auto a = testutil::random_plane(rng, 7, 9);
  const auto f = svd(a);
  for (std::size_t k = 0; k < f.u.width(); ++k) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.u.height(); ++i)
      if (std::abs(f.u.at(k, i)) > std::abs(best)) best = f.u.at(k, i);
    EXPECT_GT(best, 0.0);
  }
  const auto g = svd(a);
  EXPECT_EQ(f.u, g.u);
  EXPECT_EQ(f.v, g.v);
  EXPECT_EQ(f.sigma, g.sigma);
}

TEST(Svd, ScaleEquivariance) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> cdist(-5.0, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testutil::random_plane(rng, 2 + rng() % 20, 2 + rng() % 20);
    const double c = cdist(rng);
    RealPlane ca = a;
    for (auto& v : ca.values()) v *= c;
    const auto s = svd(a).sigma;
    const auto cs = svd(ca).sigma;
    for (std::size_t i = 0; i < s.size(); ++i)
      EXPECT_NEAR(cs[i], std::abs(c) * s[i], 1e-9 * std::abs(c) * s[0]);
  }
}

TEST(Svd, MaxSingularValueMatchesPowerIteration) {
  std::mt19937_64 rng(10);
  EXPECT_NEAR(oracle::power_iteration_sigma_max(RealPlane(3, 3, 1.0)), 3.0, 1e-12);
  EXPECT_NEAR(max_singular_value(RealPlane(3, 3, 1.0)), 3.0, 1e-12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testutil::random_plane(rng, 2 + rng() % 30, 2 + rng() % 30);
    const double expected = oracle::power_iteration_sigma_max(a);
    EXPECT_NEAR(max_singular_value(a), expected, 1e-8 * expected);
  }
}

TEST(Reconstruct, OverrideSemantics) {
  std::mt19937_64 rng(12);
  const auto a = testutil::random_plane(rng, 6, 9);
  const auto f = svd(a);

  const auto zero = reconstruct(f, std::vector<double>(f.sigma.size(), 0.0));
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);

  std::vector<double> doubled(f.sigma);
  for (auto& s : doubled) s *= 2.0;
  const auto twice = reconstruct(f, doubled);
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_NEAR(twice.values()[i], 2.0 * a.values()[i], 1e-10 * frobenius(a));
  EXPECT_NEAR(max_singular_value(twice), doubled[0], 1e-9 * doubled[0]);

  EXPECT_THROW(reconstruct(f, std::vector<double>(f.sigma.size() + 1, 1.0)), InvalidArgument);
  std::vector<double> negative(f.sigma);
  negative.back() = -1.0;
  EXPECT_THROW(reconstruct(f, negative), InvalidArgument);
}

TEST(Reconstruct, SigmaMaxOfReplacedSpectrum) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testutil::random_plane(rng, 3 + rng() % 10, 3 + rng() % 10);
    const auto f = svd(a);
    std::vector<double> s(f.sigma.size());
    for (auto& x : s) x = d(rng);
    const double expected = *std::max_element(s.begin(), s.end());
    EXPECT_NEAR(max_singular_value(reconstruct(f, s)), expected, 1e-9 * expected);
  }
}
