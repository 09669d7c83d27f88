// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "casimir/debye.hpp"
#include "casimir/specfun.hpp"

using namespace casimir;

namespace {
RatPoly poly(std::initializer_list<std::pair<int, Rational>> terms) {
  std::map<int, Rational> m;
  for (const auto& [e, c] : terms) m[e] = c;
  return RatPoly(m);
}
}  // namespace

TEST(Debye, LowOrderPolynomials) {
  const DebyeTable t = build_debye_table(3, {Rational(1, 2), Rational(-1)});
  EXPECT_EQ(t.u(0), poly({{0, Rational(1)}}));
  EXPECT_EQ(t.u(1), poly({{1, Rational(3, 24)}, {3, Rational(-5, 24)}}));
  EXPECT_EQ(t.v(1), poly({{1, Rational(-9, 24)}, {3, Rational(7, 24)}}));
  EXPECT_EQ(t.D(1), t.u(1));
  EXPECT_EQ(t.D(2), poly({{2, Rational(1, 16)}, {4, Rational(-3, 8)}, {6, Rational(5, 16)}}));
  EXPECT_EQ(t.d(2, 0), Rational(1, 16));
  EXPECT_EQ(t.d(2, 2), Rational(5, 16));
  for (const Rational c : {Rational(1, 2), Rational(-1)})
    EXPECT_EQ(t.M(1, c), poly({{1, c}}) + t.v(1));
}

TEST(Debye, CoefficientSums) {
  std::vector<Rational> cs;
  for (int k = 1; k <= 6; ++k) cs.push_back(Rational(k, 2)), cs.push_back(Rational(-k, 2));
  cs.push_back(Rational(0));
  const DebyeTable t = build_debye_table(8, cs);
  for (const auto& c : cs) {
    const auto sums = coeff_sums(t, c);
    ASSERT_EQ(sums.size(), 8u);
    for (int i = 1; i <= 8; ++i) {
      EXPECT_TRUE(sums[static_cast<size_t>(i - 1)].first.is_zero());
      EXPECT_EQ(sums[static_cast<size_t>(i - 1)].second, -c.pow(2 * i) / Rational(2 * i)) << c.str() << " " << i;
    }
  }
  EXPECT_EQ(coeff_sums(t, Rational(1, 2))[0].second, Rational(-1, 8));
}

TEST(Debye, ValuesAtOneAndParity) {
  const Rational c(3, 2);
  const DebyeTable t = build_debye_table(6, {c});
  for (int n = 1; n <= 12; ++n) {
    if (n % 2 == 0) {
      EXPECT_TRUE(t.D(n).eval(Rational(1)).is_zero()) << n;
      EXPECT_EQ(t.M(n, c).eval(Rational(1)), -c.pow(n) / Rational(n)) << n;
    }
    for (const auto& [e, v] : t.D(n).terms()) EXPECT_EQ((e - n) % 2, 0) << n;
    for (const auto& [e, v] : t.M(n, c).terms()) EXPECT_EQ((e - n) % 2, 0) << n;
  }
}

TEST(Debye, SignFlipGivesKExpansion) {
  const DebyeTable t = build_debye_table(5);
  const DebyeTable f = build_debye_table_signed(5, true);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(f.D(n), n % 2 ? t.D(n).scaled(Rational(-1)) : t.D(n)) << n;
}

TEST(Debye, EvenCoeffsDense) {
  const Rational c(-1, 2);
  const DebyeTable t = build_debye_table(4, {c});
  const auto d = even_coeffs(t, nullptr);
  const auto m = even_coeffs(t, &c);
  ASSERT_EQ(d.size(), 5u);
  for (int i = 1; i <= 4; ++i)
    for (int k = 0; k <= 2 * i; ++k) {
      EXPECT_EQ(d[static_cast<size_t>(i)][static_cast<size_t>(k)], t.d(2 * i, k).to_double());
      EXPECT_EQ(m[static_cast<size_t>(i)][static_cast<size_t>(k)], t.m(2 * i, k, c).to_double());
    }
}

// ln I_nu(nu z) against the uniform expansion built from u_k, nu = 100.
TEST(Debye, UniformExpansionMatchesBessel) {
  const DebyeTable t = build_debye_table(4);
  const double nu = 100.0;
  for (double z : {0.1, 1.0, 10.0}) {
    const double s = std::sqrt(1 + z * z), tt = 1 / s;
    const double eta = s + std::log(z / (1 + s));
    double series = 0.0, p = 1.0;
    for (int k = 0; k <= 8; ++k, p /= nu) series += t.u(k).eval(tt) * p;
    const double ln_i = -0.5 * std::log(2 * M_PI * nu) + nu * eta - 0.5 * std::log(s) + std::log(series);
    EXPECT_NEAR(bessel_log(nu, nu * z).ln_i, ln_i, 1e-12 * std::fabs(ln_i) + 1e-13) << z;
  }
}

TEST(Debye, MissingRobinParameterThrows) {
  const DebyeTable t = build_debye_table(2);
  EXPECT_FALSE(t.has_robin(Rational(1, 2)));
  EXPECT_THROW(t.M(1, Rational(1, 2)), std::exception);
}
