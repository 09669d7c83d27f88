// SPDX-License-Identifier: Apache-2.0
#include "casimir/exactnum.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

namespace casimir {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
  std::string text(s);
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("Rational::parse: bad literal '" + text + "'");
  return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(int e) const {
  if (e < 0) return Rational(1) / pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(mpq_class(n, d));
}

long double Rational::to_long_double() const {
  // Two-double split of a 192-bit float image: hi carries 53 bits, lo the rest.
  if (is_zero()) return 0.0L;
  const mpf_class v(q_, 192);
  long e = 0;
  const double hi = mpf_get_d_2exp(&e, v.get_mpf_t());
  mpf_class m(0, 192);
  if (e >= 0) mpf_div_2exp(m.get_mpf_t(), v.get_mpf_t(), static_cast<unsigned long>(e));
  else mpf_mul_2exp(m.get_mpf_t(), v.get_mpf_t(), static_cast<unsigned long>(-e));
  const mpf_class rest = m - hi;
  const double lo = rest.get_d();
  return std::ldexp(static_cast<long double>(hi) + static_cast<long double>(lo), static_cast<int>(e));
}

std::string Rational::str() const { return q_.get_str(10); }

ExactCoeff::ExactCoeff(Rational coeff, int sqrt_pi_power, int a_power)
    : coeff_(std::move(coeff)), sqrt_pi_power_(sqrt_pi_power), a_power_(a_power) {
  if (sqrt_pi_power != 0 && sqrt_pi_power != 1)
    throw std::invalid_argument("ExactCoeff: sqrt(pi) power must be 0 or 1");
  if (coeff_.is_zero()) sqrt_pi_power_ = a_power_ = 0;  // one canonical zero
}

double ExactCoeff::value(double a) const {
  double v = coeff_.to_double();
  if (sqrt_pi_power_ == 1) v *= std::sqrt(std::numbers::pi);
  return v * std::pow(a, a_power_);
}

std::string ExactCoeff::str() const {
  if (coeff_.is_zero()) return "0";
  std::string out = coeff_.sign() < 0 ? "-" : "";
  out += coeff_.abs().num_str();
  if (sqrt_pi_power_ == 1) out += "*sqrt(pi)";
  if (coeff_.den_str() != "1") out += "/" + coeff_.den_str();
  if (a_power_ == 1) out += "*a";
  else if (a_power_ > 1) out += "*a^" + std::to_string(a_power_);
  else if (a_power_ == -1) out += "/a";
  else if (a_power_ < -1) out += "/a^" + std::to_string(-a_power_);
  return out;
}

ExactCoeff ExactCoeff::parse(std::string_view s) {
  std::string t(s);
  int a_pow = 0;
  auto strip_suffix = [&](const std::string& pre, int sign) {
    const auto pos = t.rfind(pre);
    if (pos == std::string::npos) return false;
    const std::string tail = t.substr(pos + pre.size());
    if (tail.empty()) a_pow = sign;
    else if (tail[0] == '^') a_pow = sign * std::stoi(tail.substr(1));
    else return false;
    t = t.substr(0, pos);
    return true;
  };
  if (!strip_suffix("*a", 1)) strip_suffix("/a", -1);
  int spp = 0;
  const auto sp = t.find("*sqrt(pi)");
  if (sp != std::string::npos) {
    spp = 1;
    t.erase(sp, 9);
  }
  return {Rational::parse(t), spp, a_pow};
}

ExactCoeff ExactCoeff::operator+(const ExactCoeff& o) const {
  if (o.is_zero() && o.a_power_ == a_power_) return *this;
  if (is_zero() && o.a_power_ == a_power_) return o;
  if (sqrt_pi_power_ != o.sqrt_pi_power_ || a_power_ != o.a_power_)
    throw std::logic_error("ExactCoeff: adding unlike terms " + str() + " + " + o.str());
  return {coeff_ + o.coeff_, sqrt_pi_power_, a_power_};
}

RatPoly::RatPoly(std::map<int, Rational> terms) {
  for (auto& [e, c] : terms) add_term(e, c);
}

RatPoly RatPoly::monomial(int e, const Rational& c) {
  RatPoly p;
  p.add_term(e, c);
  return p;
}

void RatPoly::add_term(int e, const Rational& c) {
  if (e < 0) throw std::invalid_argument("RatPoly: negative exponent");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational RatPoly::coeff(int e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  RatPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

RatPoly RatPoly::scaled(const Rational& r) const {
  RatPoly p;
  for (const auto& [e, c] : terms_) p.add_term(e, c * r);
  return p;
}

RatPoly RatPoly::derivative() const {
  RatPoly p;
  for (const auto& [e, c] : terms_)
    if (e > 0) p.add_term(e - 1, c * Rational(e));
  return p;
}

RatPoly RatPoly::integral() const {
  RatPoly p;
  for (const auto& [e, c] : terms_) p.add_term(e + 1, c / Rational(e + 1));
  return p;
}

Rational RatPoly::eval(const Rational& x) const {
  Rational s(0);
  for (const auto& [e, c] : terms_) s += c * x.pow(e);
  return s;
}

double RatPoly::eval(double x) const {
  // Horner from the top degree down over the dense range.
  if (terms_.empty()) return 0.0;
  double s = 0.0;
  int e = degree();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    for (; e > it->first; --e) s *= x;
    s += it->second.to_double();
  }
  for (; e > 0; --e) s *= x;
  return s;
}

std::string RatPoly::str(char var) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    const std::string cs = c.abs().str();
    out += out.empty() ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + ");
    out += cs;
    if (e >= 1) out += std::string("*") + var;
    if (e >= 2) out += "^" + std::to_string(e);
  }
  return out;
}

namespace {

// Akiyama-Tanigawa gives B_n with B_1 = +1/2; the sign is flipped on read.
class BernoulliCache {
 public:
  Rational get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(values_.size()) <= n) extend();
    return values_[static_cast<size_t>(n)];
  }

 private:
  void extend() {
    const int m = static_cast<int>(values_.size());
    row_.emplace_back(Rational(1, m + 1));
    for (int j = m; j >= 1; --j)
      row_[static_cast<size_t>(j - 1)] =
          Rational(j) * (row_[static_cast<size_t>(j - 1)] - row_[static_cast<size_t>(j)]);
    values_.push_back(row_[0]);
  }
  std::mutex mu_;
  std::vector<Rational> row_;
  std::vector<Rational> values_;
};

BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

}  // namespace

Rational bernoulli_number(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli_number: n < 0");
  Rational b = bernoulli_cache().get(n);
  return n == 1 ? -b : b;
}

Rational bernoulli_poly(int n, const Rational& x) {
  if (n < 0) throw std::invalid_argument("bernoulli_poly: n < 0");
  Rational s(0);
  Rational xp(1);
  // sum_k C(n,k) B_{n-k} x^k, built from low powers of x upward
  for (int k = 0; k <= n; ++k) {
    s += binomial(n, k) * bernoulli_number(n - k) * xp;
    xp *= x;
  }
  return s;
}

Rational hurwitz_neg_int(int j, const Rational& chi) {
  if (j < 0) throw std::invalid_argument("hurwitz_neg_int: j < 0");
  if (chi.sign() <= 0) throw std::domain_error("hurwitz_neg_int: chi must be positive");
  return -bernoulli_poly(j + 1, chi) / Rational(j + 1);
}

std::pair<Rational, int> gamma_exact(const Rational& x) {
  if (x.sign() <= 0) throw std::domain_error("gamma_exact: argument must be positive");
  const Rational twice = x * Rational(2);
  if (!twice.is_integer()) throw std::domain_error("gamma_exact: needs integer or half-integer");
  if (x.is_integer()) {
    return {factorial(static_cast<int>(x.raw().get_num().get_si()) - 1), 0};
  }
  // Gamma(m + 1/2) = (1/2)(3/2)...(m - 1/2) sqrt(pi)
  Rational r(1);
  for (Rational y(1, 2); y < x; y += Rational(1)) r *= y;
  return {r, 1};
}

Rational harmonic_number(int n) {
  Rational h(0);
  for (int k = 1; k <= n; ++k) h += Rational(1, k);
  return h;
}

Rational factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(mpq_class(f));
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(mpq_class(b));
}

}  // namespace casimir
