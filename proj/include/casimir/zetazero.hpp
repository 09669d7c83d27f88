// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "casimir/exactnum.hpp"
#include "casimir/heatkernel.hpp"

namespace casimir {

enum class YBranch { Scalar, TE };  // z = y (Neumann, PC) or z = x (IP)

// Y_D(c) with weights z_{D;j}; requires |c| < D/2.
double y_d(int D, const Rational& c, YBranch branch);
double y_d_weights(int D, const Rational& c, const std::vector<Rational>& z);

struct ZetaPrimeResult {
  int dimension = 0;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  ExactCoeff zeta_zero;  // zeta(a;0), from the s -> 0 continuation
  double zp_value = 0.0;  // zeta'(a;0) - 2 zeta(a;0) ln a
  std::vector<std::pair<std::string, double>> breakdown;
  // Exact weight of zeta_R'(-j) inside the Hurwitz-derivative part, zero weights omitted.
  std::map<int, Rational> zeta_r_prime_weights;
};

ZetaPrimeResult zeta_prime_zero(int D, BoundaryCondition bc);

// zeta(a;0) read off the continued mode-sum representation at s = 0.
ExactCoeff zeta_zero_continuation(int D, BoundaryCondition bc);

}  // namespace casimir
