// SPDX-License-Identifier: Apache-2.0
#include "casimir/heatkernel.hpp"

#include <stdexcept>

namespace casimir {

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::PerfectConductor: return "pc";
    case BoundaryCondition::InfinitelyPermeable: return "ip";
  }
  return "?";
}

std::optional<BoundaryCondition> parse_bc(std::string_view s) {
  for (auto bc : kAllBcs)
    if (to_string(bc) == s) return bc;
  return std::nullopt;
}

std::vector<ModeFamily> mode_families(int D, BoundaryCondition bc) {
  if (D < 3) throw std::invalid_argument("mode_families: D must be >= 3");
  const DegeneracySet deg = nu_expansion(D);
  const Rational half_d(D, 2);
  switch (bc) {
    case BoundaryCondition::Dirichlet:
      return {{deg.y, -1, std::nullopt, Rational(D - 2, 2), false}};
    case BoundaryCondition::Neumann:
      return {{deg.y, 1, Rational(2 - D, 2), half_d, false}, {{Rational(1)}, -1, std::nullopt, half_d, true}};
    case BoundaryCondition::PerfectConductor:
      return {{deg.x, -1, std::nullopt, half_d, false}, {deg.y, 1, Rational(D - 2, 2), half_d, false}};
    case BoundaryCondition::InfinitelyPermeable:
      return {{deg.x, 1, Rational(4 - D, 2), half_d, false}, {deg.y, -1, std::nullopt, half_d, false}};
  }
  throw std::invalid_argument("mode_families: unknown boundary condition");
}

DebyeTable debye_for(int D, BoundaryCondition bc, int N) {
  std::vector<Rational> cs;
  for (const auto& f : mode_families(D, bc))
    if (f.robin_c) cs.push_back(*f.robin_c);
  return build_debye_table(N, cs);
}

Rational family_coeff(const DebyeTable& t, const ModeFamily& f, int i, int k) {
  return f.robin_c ? t.m(2 * i, k, *f.robin_c) : t.d(2 * i, k);
}

namespace {

Rational weight(const ModeFamily& f, int j) {
  return (j >= 0 && j < static_cast<int>(f.weights.size())) ? f.weights[static_cast<size_t>(j)] : Rational(0);
}

// Accumulates rational * sqrt(pi)^e terms; mixing powers signals a formula bug.
struct PiSum {
  Rational r;
  int spp = -1;
  void add(const Rational& q, int e) {
    if (q.is_zero()) return;
    if (spp >= 0 && spp != e) throw std::logic_error("heat kernel: mixed sqrt(pi) powers");
    spp = e;
    r += q;
  }
  ExactCoeff to_coeff(int a_power) const { return {r, r.is_zero() ? 0 : spp, a_power}; }
};

}  // namespace

HeatKernelSet heat_kernel_coeffs(int D, BoundaryCondition bc) {
  if (D < 3 || D > 12) throw std::invalid_argument("heat_kernel_coeffs: D must be in [3, 12]");
  const auto fams = mode_families(D, bc);
  const DebyeTable tab = debye_for(D, bc, std::max(1, D / 2));

  HeatKernelSet hs;
  hs.dimension = D;
  hs.bc = bc;
  for (int n = 0; n <= D + 1; ++n) {
    PiSum acc;
    if (n <= D - 1) {
      const Rational h(D - n, 2);
      for (const auto& f : fams) {
        if (f.single_mode) continue;
        const auto [g, e] = gamma_exact(h);
        acc.add(Rational(f.sigma) * weight(f, D - n - 1) * g / Rational(4), e);
        for (int i = 1; i <= (n - 1) / 2; ++i)
          for (int k = 0; k <= 2 * i; ++k) {
            const auto [g2, e2] = gamma_exact(h + Rational(i + k));
            acc.add(-weight(f, D - n + 2 * i - 1) * family_coeff(tab, f, i, k) * g2 / factorial(i + k - 1), e2);
          }
      }
      hs.coeffs.push_back(acc.to_coeff(D - n));
    } else if (n == D) {
      for (const auto& f : fams) {
        if (f.single_mode) {
          acc.add(Rational(-1, 2), 0);
          continue;
        }
        Rational s(0);
        for (int j = 0; j < static_cast<int>(f.weights.size()); ++j)
          if (!f.weights[static_cast<size_t>(j)].is_zero())
            s += f.weights[static_cast<size_t>(j)] * hurwitz_neg_int(j, f.chi);
        acc.add(Rational(f.sigma) * s / Rational(2), 0);
        for (int i = 1; i <= (D - 1) / 2; ++i)
          for (int k = 0; k <= 2 * i; ++k) acc.add(-weight(f, 2 * i - 1) * family_coeff(tab, f, i, k), 0);
      }
      hs.coeffs.push_back(acc.to_coeff(0));
    } else {
      for (const auto& f : fams) {
        if (f.single_mode) continue;
        for (int i = 1; i <= D / 2; ++i)
          for (int k = 0; k <= 2 * i; ++k) {
            const auto [g, e] = gamma_exact(Rational(2 * i + 2 * k - 1, 2));
            acc.add(-weight(f, 2 * i - 2) * family_coeff(tab, f, i, k) * g / factorial(i + k - 1), e);
          }
      }
      hs.coeffs.push_back(acc.to_coeff(-1));
    }
  }
  for (int n = 0; n <= D - 1; n += 2)
    if (!hs.coeffs[static_cast<size_t>(n)].is_zero())
      throw std::logic_error("heat_kernel_coeffs: even-n coefficient not zero");
  if (D % 2 == 1 && !hs.coeffs.back().is_zero())
    throw std::logic_error("heat_kernel_coeffs: odd-D top coefficient not zero");
  return hs;
}

}  // namespace casimir
