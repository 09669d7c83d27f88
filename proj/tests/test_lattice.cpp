// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "casimir/lattice.hpp"

using namespace casimir;

namespace {

// Plain long-double reference: sum_p Q(p y) e^{-p y} term by term.
long double naive(const std::vector<double>& c, double y) {
  long double s = 0;
  for (long p = 1; p < 200000; ++p) {
    const long double z = static_cast<long double>(p) * y;
    long double q = 0;
    for (size_t k = c.size(); k-- > 0;) q = q * z + c[k];
    const long double t = q * std::exp(-z);
    s += t;
    if (z > 60 + 4 * c.size() && std::fabs(t) < 1e-30L * std::fabs(s)) break;
  }
  return s;
}

}  // namespace

TEST(Lattice, GeometricSeries) {
  // Q = 1: sum e^{-py} = 1/(e^y - 1)
  const std::vector<double> one{1.0};
  for (double y : {1e-3, 0.05, 1.0, 7.0, 35.0}) {
    const auto r = poly_exp_lattice_sum(one, y, SimdPath::Scalar);
    EXPECT_NEAR(r.value, 1.0 / std::expm1(y), 1e-13 / std::expm1(y)) << y;
    EXPECT_GT(r.terms, 0);
  }
}

TEST(Lattice, MatchesNaiveSum) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int deg = 0; deg <= 9; ++deg)
    for (double y : {0.01, 0.3, 2.0, 12.0}) {
      std::vector<double> c(static_cast<size_t>(deg + 1));
      for (auto& v : c) v = coef(rng);
      const double ref = static_cast<double>(naive(c, y));
      double scale = 0;
      for (long p = 1; p < 100000; ++p) {
        double q = 0, z = p * y;
        for (size_t k = c.size(); k-- > 0;) q = std::fabs(q * z) + std::fabs(c[k]);
        scale += q * std::exp(-z);
        if (z > 100) break;
      }
      EXPECT_NEAR(poly_exp_lattice_sum(c, y, SimdPath::Scalar).value, ref, 1e-13 * scale) << deg << " " << y;
    }
}

TEST(Lattice, SimdMatchesScalar) {
  if (detected_simd_path() != SimdPath::Avx2) GTEST_SKIP() << "no AVX2 on this host";
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0), ly(-6.0, 4.0);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<double> c(static_cast<size_t>(trial % 12 + 1));
    for (auto& v : c) v = coef(rng);
    const double y = std::exp(ly(rng));
    const auto s = poly_exp_lattice_sum(c, y, SimdPath::Scalar);
    const auto v = poly_exp_lattice_sum(c, y, SimdPath::Avx2);
    EXPECT_EQ(s.terms, v.terms);
    EXPECT_LE(std::fabs(s.value - v.value), 1e-13 * std::max(std::fabs(s.value), 1e-300)) << trial;
  }
}

TEST(Lattice, DeterministicAndDispatched) {
  const std::vector<double> c{0.5, -1.0, 0.25, 0.125};
  const auto a = poly_exp_lattice_sum(c, 0.02);
  const auto b = poly_exp_lattice_sum(c, 0.02);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.value, poly_exp_lattice_sum(c, 0.02, active_simd_path()).value);
  EXPECT_STREQ(to_string(SimdPath::Scalar), "scalar");
}

TEST(Lattice, RejectsNonPositiveArgument) {
  const std::vector<double> c{1.0};
  EXPECT_THROW(poly_exp_lattice_sum(c, 0.0, SimdPath::Scalar), std::domain_error);
  EXPECT_THROW(poly_exp_lattice_sum(c, -1.0, SimdPath::Scalar), std::domain_error);
}
