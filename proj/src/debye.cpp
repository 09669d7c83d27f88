// SPDX-License-Identifier: Apache-2.0
#include "casimir/debye.hpp"

#include <stdexcept>

namespace casimir {

namespace {

const RatPoly& t2_one_minus_t2() {
  static const RatPoly p = RatPoly::monomial(2, Rational(1)) + RatPoly::monomial(4, Rational(-1));
  return p;
}

void build_uv(int kmax, std::vector<RatPoly>& u, std::vector<RatPoly>& v) {
  const RatPoly one_minus_5t2 = RatPoly::monomial(0, Rational(1)) + RatPoly::monomial(2, Rational(-5));
  const RatPoly t_one_minus_t2 = RatPoly::monomial(1, Rational(1)) + RatPoly::monomial(3, Rational(-1));
  u.assign(1, RatPoly::monomial(0, Rational(1)));
  v.assign(1, RatPoly::monomial(0, Rational(1)));
  for (int k = 1; k <= kmax; ++k) {
    const RatPoly& prev = u.back();
    const RatPoly dprev = prev.derivative();
    RatPoly uk = (t2_one_minus_t2() * dprev).scaled(Rational(1, 2)) +
                 (one_minus_5t2 * prev).integral().scaled(Rational(1, 8));
    RatPoly vk = uk - t2_one_minus_t2() * dprev - (t_one_minus_t2 * prev).scaled(Rational(1, 2));
    u.push_back(std::move(uk));
    v.push_back(std::move(vk));
  }
}

// Coefficients L_n of ln(1 + sum_k a_k eps^k) = sum_n L_n eps^n via
// L_n = a_n - (1/n) sum_{j<n} j L_j a_{n-j}.
std::vector<RatPoly> log_series(const std::vector<RatPoly>& a, int nmax) {
  std::vector<RatPoly> L(static_cast<size_t>(nmax + 1));
  for (int n = 1; n <= nmax; ++n) {
    RatPoly s = a[static_cast<size_t>(n)];
    for (int j = 1; j < n; ++j)
      s -= (L[static_cast<size_t>(j)] * a[static_cast<size_t>(n - j)]).scaled(Rational(j, n));
    L[static_cast<size_t>(n)] = std::move(s);
  }
  return L;
}

}  // namespace

const RatPoly& DebyeTable::M(int n, const Rational& c) const {
  auto it = m_.find(c);
  if (it == m_.end()) throw std::out_of_range("DebyeTable: Robin parameter " + c.str() + " not built");
  return it->second.at(static_cast<size_t>(n));
}

DebyeTable build_debye_table(int N, const std::vector<Rational>& robin_params) {
  if (N < 1) throw std::invalid_argument("build_debye_table: N must be >= 1");
  if (N > DebyeTable::kMaxOrder) throw std::invalid_argument("build_debye_table: N exceeds cap");
  DebyeTable t;
  t.order_ = N;
  const int nmax = 2 * N;
  build_uv(nmax, t.u_, t.v_);
  t.d_ = log_series(t.u_, nmax);
  for (const auto& c : robin_params) {
    if (t.m_.count(c)) continue;
    // w_k = c t u_{k-1} + v_k, so that M_{1,c} = c t + v_1
    std::vector<RatPoly> w(static_cast<size_t>(nmax + 1));
    for (int k = 1; k <= nmax; ++k)
      w[static_cast<size_t>(k)] = (RatPoly::monomial(1, c) * t.u_[static_cast<size_t>(k - 1)]) +
                                  t.v_[static_cast<size_t>(k)];
    t.m_.emplace(c, log_series(w, nmax));
  }
  return t;
}

DebyeTable build_debye_table_signed(int N, bool flip_odd) {
  DebyeTable t = build_debye_table(N);
  if (!flip_odd) return t;
  std::vector<RatPoly> a = t.u_;
  for (size_t k = 1; k < a.size(); k += 2) a[k] = a[k].scaled(Rational(-1));
  t.d_ = log_series(a, 2 * N);
  return t;
}

std::vector<std::pair<Rational, Rational>> coeff_sums(const DebyeTable& table, const Rational& c) {
  if (!table.has_robin(c)) throw std::out_of_range("coeff_sums: unknown Robin parameter " + c.str());
  std::vector<std::pair<Rational, Rational>> out;
  for (int i = 1; i <= table.order(); ++i) {
    Rational sd(0), sm(0);
    for (const auto& [e, v] : table.D(2 * i).terms()) sd += v;
    for (const auto& [e, v] : table.M(2 * i, c).terms()) sm += v;
    out.emplace_back(sd, sm);
  }
  return out;
}

std::vector<std::vector<double>> even_coeffs(const DebyeTable& table, const Rational* c) {
  std::vector<std::vector<double>> out(static_cast<size_t>(table.order() + 1));
  for (int i = 1; i <= table.order(); ++i) {
    auto& row = out[static_cast<size_t>(i)];
    for (int k = 0; k <= 2 * i; ++k)
      row.push_back((c ? table.m(2 * i, k, *c) : table.d(2 * i, k)).to_double());
  }
  return out;
}

}  // namespace casimir
