// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/degeneracy.hpp"
#include "casimir/specfun.hpp"
#include "casimir/zetazero.hpp"

using namespace casimir;

TEST(ZetaZero, ContinuationEqualsHeatKernel) {
  for (BoundaryCondition bc : kAllBcs)
    for (int D = 3; D <= 8; ++D) {
      EXPECT_EQ(zeta_zero_continuation(D, bc), heat_kernel_coeffs(D, bc).c(D)) << to_string(bc) << D;
      EXPECT_EQ(zeta_prime_zero(D, bc).zeta_zero, heat_kernel_coeffs(D, bc).c(D));
    }
}

TEST(ZetaPrime, ClosedFormExamples) {
  EXPECT_NEAR(zeta_prime_zero(4, BoundaryCondition::Dirichlet).zp_value, -riemann_zeta_deriv_neg_int(2), 1e-13);
  const double pc3 = 0.375 + 2.0 * (lngamma_moment_integral(1, 0.5, 3, 1) - lngamma_moment_integral(1, 0.5, 3, -1));
  EXPECT_NEAR(zeta_prime_zero(3, BoundaryCondition::PerfectConductor).zp_value, pc3, 1e-12);
  EXPECT_NEAR(zeta_prime_zero(3, BoundaryCondition::InfinitelyPermeable).zp_value, pc3, 1e-12);
  EXPECT_NEAR(pc3, 3.8429e-1, 5e-5);
  EXPECT_NEAR(zeta_prime_zero(8, BoundaryCondition::Neumann).zp_value, 8.7232e-2, 5e-6);
}

TEST(ZetaPrime, BreakdownSumsToValue) {
  for (BoundaryCondition bc : kAllBcs)
    for (int D = 3; D <= 8; ++D) {
      const auto z = zeta_prime_zero(D, bc);
      double s = 0.0;
      for (const auto& [name, v] : z.breakdown) s += v;
      EXPECT_NEAR(s, z.zp_value, 1e-14 * (1 + std::fabs(z.zp_value)));
    }
}

// Printed numeric column (5 significant digits) and the exact zeta_R'(-j) weights.
TEST(ZetaPrime, GoldenTables) {
  std::ifstream in(CASIMIR_TEST_DATA "/zp_tables.txt");
  ASSERT_TRUE(in.good());
  int n = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string bcs, val, weights;
    int D;
    ss >> bcs >> D >> val >> weights;
    const auto z = zeta_prime_zero(D, *parse_bc(bcs));
    const double printed = std::stod(val);
    EXPECT_LE(std::fabs(z.zp_value - printed), 1e-4 * std::fabs(printed)) << line;
    std::map<int, Rational> want;
    if (weights != "-") {
      std::istringstream ws(weights);
      for (std::string item; std::getline(ws, item, ',');) {
        const auto colon = item.find(':');
        want[std::stoi(item.substr(0, colon))] = Rational::parse(item.substr(colon + 1));
      }
    }
    EXPECT_EQ(z.zeta_r_prime_weights, want) << line;
    ++n;
  }
  EXPECT_EQ(n, 24);
}

TEST(YFunction, VanishesAtZero) {
  for (int D = 3; D <= 8; ++D) {
    EXPECT_EQ(y_d(D, Rational(0), YBranch::Scalar), 0.0);
    EXPECT_EQ(y_d(D, Rational(0), YBranch::TE), 0.0);
  }
}

TEST(YFunction, DerivativeOddD) {
  const int D = 5;
  const double c = 0.3, h = 1e-4;
  const auto z = nu_expansion(D).y;
  auto y_at = [&](double cc) {
    // y_d_weights takes a Rational; 1e-4 steps are exact in the form k/10000
    return y_d_weights(D, Rational(static_cast<long>(std::lround(cc * 10000)), 10000), z);
  };
  const double fd = (y_at(c + h) - y_at(c - h)) / (2 * h);
  double closed = 0.0;
  for (size_t j = 0; j < z.size(); ++j)
    closed += z[j].to_double() * std::pow(c, static_cast<double>(j)) *
              (-digamma(D / 2.0 - c) + 2 * digamma(D / 2.0) - digamma(D / 2.0 + c));
  EXPECT_NEAR(fd, closed, 1e-7);
}

TEST(YFunction, DigammaHarmonicShortcut) {
  for (int n = 1; n <= 12; ++n)
    EXPECT_NEAR(digamma(n) - digamma(1.0), harmonic_number(n - 1).to_double(), 1e-13);
}
