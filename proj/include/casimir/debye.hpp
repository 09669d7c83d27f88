// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "casimir/exactnum.hpp"

namespace casimir {

// Exact polynomials of the uniform large-order expansion of I_nu, K_nu and of the
// logarithms of the products I K (D_n) and the Robin analogue (M_{n,c}).
class DebyeTable {
 public:
  static constexpr int kMaxOrder = 16;

  int order() const { return order_; }
  const RatPoly& u(int k) const { return u_.at(static_cast<size_t>(k)); }
  const RatPoly& v(int k) const { return v_.at(static_cast<size_t>(k)); }
  // n = 1..2N
  const RatPoly& D(int n) const { return d_.at(static_cast<size_t>(n)); }
  const RatPoly& M(int n, const Rational& c) const;
  bool has_robin(const Rational& c) const { return m_.count(c) != 0; }

  // d_{n,k}: coefficient of t^(n+2k) in D_n
  Rational d(int n, int k) const { return D(n).coeff(n + 2 * k); }
  Rational m(int n, int k, const Rational& c) const { return M(n, c).coeff(n + 2 * k); }

 private:
  friend DebyeTable build_debye_table(int N, const std::vector<Rational>& robin_params);
  friend DebyeTable build_debye_table_signed(int N, bool flip_odd);
  int order_ = 0;
  std::vector<RatPoly> u_, v_, d_;
  std::map<Rational, std::vector<RatPoly>> m_;
};

DebyeTable build_debye_table(int N, const std::vector<Rational>& robin_params = {});

// Rebuilds the log-series recursion with u_k -> (-1)^k u_k when flip_odd is set;
// used to check that the K-side expansion yields (-1)^n D_n.
DebyeTable build_debye_table_signed(int N, bool flip_odd);

// For i = 1..N: (sum_k d_{2i,k}, sum_k m_{2i,k}(c)).
std::vector<std::pair<Rational, Rational>> coeff_sums(const DebyeTable& table, const Rational& c);

// Dense d_{2i,k} / m_{2i,k}(c) as doubles, outer index i = 1..N (slot 0 unused),
// inner index k = 0..2i. A missing Robin parameter selects the Dirichlet table.
std::vector<std::vector<double>> even_coeffs(const DebyeTable& table, const Rational* c);

}  // namespace casimir
