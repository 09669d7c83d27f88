// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/debye.hpp"
#include "casimir/degeneracy.hpp"
#include "casimir/exactnum.hpp"

namespace casimir {

enum class BoundaryCondition { Dirichlet, Neumann, PerfectConductor, InfinitelyPermeable };

// "dirichlet", "neumann", "pc", "ip"
std::string to_string(BoundaryCondition bc);
std::optional<BoundaryCondition> parse_bc(std::string_view s);
inline constexpr BoundaryCondition kAllBcs[] = {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann,
                                                BoundaryCondition::PerfectConductor,
                                                BoundaryCondition::InfinitelyPermeable};

// One tower of modes nu = chi + n (n = 0, 1, ...) with degeneracy sum_j w_j nu^j.
// sigma is +1 for Robin-type towers and -1 for Dirichlet-type ones.
struct ModeFamily {
  std::vector<Rational> weights;
  int sigma = -1;
  std::optional<Rational> robin_c;
  Rational chi;
  bool single_mode = false;  // Neumann l = 0 channel: one mode at nu = D/2, weight 1
};

std::vector<ModeFamily> mode_families(int D, BoundaryCondition bc);

struct HeatKernelSet {
  int dimension = 0;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  std::vector<ExactCoeff> coeffs;  // n = 0..D+1

  const ExactCoeff& c(int n) const { return coeffs.at(static_cast<size_t>(n)); }
  bool is_unambiguous() const { return coeffs.back().is_zero(); }
};

HeatKernelSet heat_kernel_coeffs(int D, BoundaryCondition bc);

// Debye table with every Robin parameter of the families, order >= N.
DebyeTable debye_for(int D, BoundaryCondition bc, int N);

// e_{i,k}: d_{2i,k} for Dirichlet-type families, m_{2i,k}(c) for Robin ones.
Rational family_coeff(const DebyeTable& t, const ModeFamily& f, int i, int k);

}  // namespace casimir
