// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace casimir {

// Exact rational backed by GMP. Always canonical (lowest terms, den > 0).
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT: implicit from integers is intended
  Rational(long n, long d);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view s);

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational pow(int e) const;
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  std::string num_str() const { return q_.get_num().get_str(); }
  std::string den_str() const { return q_.get_den().get_str(); }
  double to_double() const { return q_.get_d(); }
  long double to_long_double() const;
  std::string str() const;  // "p" or "p/q"
  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_{0};
};

// coeff * sqrt(pi)^sqrt_pi_power * a^a_power, the value class of every table entry.
// Zero has a single representation with both powers 0.
class ExactCoeff {
 public:
  ExactCoeff() = default;
  ExactCoeff(Rational coeff, int sqrt_pi_power, int a_power);

  const Rational& coeff() const { return coeff_; }
  int sqrt_pi_power() const { return sqrt_pi_power_; }
  int a_power() const { return a_power_; }
  bool is_zero() const { return coeff_.is_zero(); }

  double value(double a = 1.0) const;
  // "[-]p/q" or "[-]p*sqrt(pi)/q", then "*a^k" or "/a^k" when a_power != 0.
  std::string str() const;
  static ExactCoeff parse(std::string_view s);

  // Addition requires matching sqrt(pi) and a powers unless one side is zero.
  ExactCoeff operator+(const ExactCoeff& o) const;
  ExactCoeff operator-() const { return {-coeff_, sqrt_pi_power_, a_power_}; }
  ExactCoeff operator-(const ExactCoeff& o) const { return *this + (-o); }
  ExactCoeff scaled(const Rational& r) const { return {coeff_ * r, sqrt_pi_power_, a_power_}; }

  friend bool operator==(const ExactCoeff& x, const ExactCoeff& y) {
    return x.coeff_ == y.coeff_ && x.sqrt_pi_power_ == y.sqrt_pi_power_ && x.a_power_ == y.a_power_;
  }

 private:
  Rational coeff_{0};
  int sqrt_pi_power_ = 0;
  int a_power_ = 0;
};

// Sparse polynomial in one variable with rational coefficients; no zero entries stored.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::map<int, Rational> terms);
  static RatPoly monomial(int e, const Rational& c);

  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coeff(int e) const;
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  bool is_zero() const { return terms_.empty(); }

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  RatPoly scaled(const Rational& r) const;
  RatPoly derivative() const;
  RatPoly integral() const;  // antiderivative vanishing at 0
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.terms_ == b.terms_; }

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  std::string str(char var = 't') const;

 private:
  void add_term(int e, const Rational& c);
  std::map<int, Rational> terms_;
};

// Bernoulli number B_n with B_1 = -1/2.
Rational bernoulli_number(int n);
// B_n(x) with the generating-function normalization, so B_1(x) = x - 1/2.
Rational bernoulli_poly(int n, const Rational& x);
// zeta_H(-j; chi) = -B_{j+1}(chi)/(j+1).
Rational hurwitz_neg_int(int j, const Rational& chi);

// Gamma(x) for positive integer or half-integer x as (rational, sqrt(pi) power).
std::pair<Rational, int> gamma_exact(const Rational& x);
// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
Rational harmonic_number(int n);
Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace casimir
