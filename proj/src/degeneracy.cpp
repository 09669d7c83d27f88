// SPDX-License-Identifier: Apache-2.0
#include "casimir/degeneracy.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace casimir {

namespace {

void check_dim(int D) {
  if (D < 3) throw std::invalid_argument("degeneracy: dimension must be >= 3");
}

// Product of linear factors (l + r_i) as a polynomial in l.
RatPoly linear_product(const std::vector<Rational>& roots_shift) {
  RatPoly p = RatPoly::monomial(0, Rational(1));
  for (const auto& r : roots_shift)
    p = p * (RatPoly::monomial(1, Rational(1)) + RatPoly::monomial(0, r));
  return p;
}

// Substitute l = nu - s into p(l), giving a polynomial in nu.
RatPoly shift_variable(const RatPoly& p, const Rational& s) {
  RatPoly out;
  const RatPoly lin = RatPoly::monomial(1, Rational(1)) + RatPoly::monomial(0, -s);
  for (const auto& [e, c] : p.terms()) {
    RatPoly pw = RatPoly::monomial(0, Rational(1));
    for (int k = 0; k < e; ++k) pw = pw * lin;
    out += pw.scaled(c);
  }
  return out;
}

// b_D(l) = (2l+D-2)/(D-2)! * (l+1)(l+2)...(l+D-3)
RatPoly b_poly_in_l(int D) {
  std::vector<Rational> shifts;
  for (int r = 1; r <= D - 3; ++r) shifts.emplace_back(r);
  RatPoly p = linear_product(shifts);
  p = p * (RatPoly::monomial(1, Rational(2)) + RatPoly::monomial(0, Rational(D - 2)));
  return p.scaled(Rational(1) / factorial(D - 2));
}

// Exact division of p(l) by (l + r); throws if the remainder is nonzero.
RatPoly divide_linear(const RatPoly& p, const Rational& r) {
  const int n = p.degree();
  std::vector<Rational> q(static_cast<size_t>(std::max(n, 0)), Rational(0));
  Rational carry(0);
  for (int e = n; e >= 1; --e) {
    carry = p.coeff(e) + carry;
    q[static_cast<size_t>(e - 1)] = carry;
    carry = -carry * r;
  }
  if (!(p.coeff(0) + carry).is_zero()) throw std::logic_error("degeneracy: inexact division");
  std::map<int, Rational> t;
  for (size_t i = 0; i < q.size(); ++i) t.emplace(static_cast<int>(i), q[i]);
  return RatPoly(t);
}

// h_D(l) = l(l+D-2)(2l+D-2)/(D-3)! * (l+D-4)!/(l+1)!; the factorial ratio is a
// rising product for D >= 5 and a reciprocal (divided out exactly) for D = 3, 4.
RatPoly h_poly_in_l(int D) {
  std::vector<Rational> shifts{Rational(0), Rational(D - 2)};
  for (int r = 2; r <= D - 4; ++r) shifts.emplace_back(r);
  RatPoly p = linear_product(shifts);
  p = p * (RatPoly::monomial(1, Rational(2)) + RatPoly::monomial(0, Rational(D - 2)));
  for (int r = D - 3; r <= 1; ++r) p = divide_linear(p, Rational(r));
  return p.scaled(Rational(1) / factorial(D - 3));
}

std::vector<Rational> dense(const RatPoly& p, int D) {
  std::vector<Rational> v(static_cast<size_t>(D - 1), Rational(0));
  for (const auto& [e, c] : p.terms()) {
    if (e > D - 2) throw std::logic_error("degeneracy: expansion degree exceeds D-2");
    v[static_cast<size_t>(e)] = c;
  }
  return v;
}

double horner(const std::vector<Rational>& c, double nu) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * nu + it->to_double();
  return s;
}

}  // namespace

Rational b_deg(int D, int l) {
  check_dim(D);
  if (l < 0) throw std::invalid_argument("b_deg: l must be >= 0");
  return Rational(2 * l + D - 2) * factorial(l + D - 3) / (factorial(D - 2) * factorial(l));
}

Rational h_deg(int D, int l) {
  check_dim(D);
  if (l < 1) throw std::invalid_argument("h_deg: l must be >= 1");
  return Rational(l) * Rational(l + D - 2) * Rational(2 * l + D - 2) * factorial(l + D - 4) /
         (factorial(D - 3) * factorial(l + 1));
}

DegeneracySet nu_expansion(int D) {
  check_dim(D);
  DegeneracySet s;
  s.dimension = D;
  const Rational off(D - 2, 2);
  s.y = dense(shift_variable(b_poly_in_l(D), off), D);
  s.x = dense(shift_variable(h_poly_in_l(D), off), D);
  return s;
}

double DegeneracySet::y_at(double nu) const { return horner(y, nu); }
double DegeneracySet::x_at(double nu) const { return horner(x, nu); }

}  // namespace casimir
