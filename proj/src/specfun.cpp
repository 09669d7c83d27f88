// SPDX-License-Identifier: Apache-2.0
#include "casimir/specfun.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <quadmath.h>
#include <type_traits>
#include <limits>
#include <numbers>
#include <vector>

#include "casimir/debye.hpp"
#include "casimir/exactnum.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Arithmetic shims so one Euler-Maclaurin body serves double and binary128.
using quad = __float128;
inline double pow_(double a, double b) { return std::pow(a, b); }
inline double log_(double a) { return std::log(a); }
inline double abs_(double a) { return std::fabs(a); }
inline quad pow_(quad a, quad b) { return powq(a, b); }
inline quad log_(quad a) { return logq(a); }
inline quad abs_(quad a) { return fabsq(a); }

// B_{2k}/(2k)! for k = 0..kEmTerms, as a double-double so binary128 sees ~106 bits.
constexpr int kEmTerms = 40;
struct EmWeight {
  double hi, lo;
};
const std::array<EmWeight, kEmTerms + 1>& em_weights() {
  static const auto w = [] {
    std::array<EmWeight, kEmTerms + 1> a{};
    for (int k = 0; k <= kEmTerms; ++k) {
      const Rational q = bernoulli_number(2 * k) / factorial(2 * k);
      const double hi = q.to_double();
      a[static_cast<size_t>(k)] = {hi, (q - Rational(mpq_class(hi))).to_double()};
    }
    return a;
  }();
  return w;
}
template <class T>
T weight(int k) {
  const auto& w = em_weights()[static_cast<size_t>(k)];
  if constexpr (std::is_same_v<T, double>) return w.hi;
  else return static_cast<T>(w.hi) + static_cast<T>(w.lo);
}

// Shift so the Euler-Maclaurin remainder starts at A >= 12 + |s|/2; the
// correction terms then shrink roughly like ((s+2k)/(2 pi A))^2 per step.
int em_shift(double s, double chi) {
  const double target = 12.0 + 0.5 * std::fabs(s);
  return chi >= target ? 0 : static_cast<int>(std::ceil(target - chi));
}

struct EmResult {
  double value;
  double deriv;
};

// zeta_H(s; chi) and d/ds together. The rising factorial (s)_m and its
// s-derivative are carried as a pair so zero factors at s = -j stay exact.
// For s < 1/2 the shifted partial sum grows like A^(1-s) while the result may
// be O(1), so that case runs in binary128.
template <class T>
EmResult euler_maclaurin_t(T s, T chi, bool want_deriv) {
  const int n_shift = em_shift(static_cast<double>(s), static_cast<double>(chi));
  T val = 0, der = 0;
  for (int n = 0; n < n_shift; ++n) {
    const T q = chi + n;
    const T term = pow_(q, -s);
    val += term;
    if (want_deriv) der -= term * log_(q);
  }
  const T one = 1;
  const T A = chi + n_shift;
  const T lnA = log_(A);
  const T A1s = pow_(A, one - s);
  const T As = A1s / A;
  val += A1s / (s - one) + As / 2;
  if (want_deriv) der += -A1s * lnA / (s - one) - A1s / ((s - one) * (s - one)) - As * lnA / 2;

  const T eps = std::is_same_v<T, double> ? T(kEps) : T(1e-33);
  T P = s, dP = 1;  // (s)_1
  T Apow = A1s;
  const T invA2 = one / (A * A);
  T prev = 0;
  for (int k = 1; k <= kEmTerms; ++k) {
    Apow *= invA2;  // A^(1 - s - 2k)
    const T base = weight<T>(k) * Apow;
    const T t = base * P;
    const T dt = base * (dP - P * lnA);
    val += t;
    if (want_deriv) der += dt;
    const T mag = abs_(t) + (want_deriv ? abs_(dt) : T(0));
    if (mag <= eps * 1e-3 * (abs_(val) + abs_(der)) || (mag == 0 && k > 1)) break;
    if (k > 4 && mag > prev) break;  // asymptotic series turning; A keeps this far below eps
    prev = mag;
    // advance (s)_{2k-1} -> (s)_{2k+1}
    for (int r = 2 * k - 1; r <= 2 * k; ++r) {
      const T f = s + r;
      dP = dP * f + P;
      P *= f;
    }
  }
  return {static_cast<double>(val), static_cast<double>(der)};
}

EmResult euler_maclaurin(double s, double chi, bool want_deriv) {
  if (s < 0.5) return euler_maclaurin_t<quad>(s, chi, want_deriv);
  return euler_maclaurin_t<double>(s, chi, want_deriv);
}

bool is_nonpos_int(double s) { return s <= 0.0 && s == std::floor(s); }

// zeta_R'(-j) closed forms off the functional equation.
double zeta_r_deriv_neg(int j) {
  if (j == 0) return -0.5 * std::log(2.0 * kPi);
  if (j % 2 == 0) {
    const int n = j / 2;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(std::lgamma(j + 1.0) - j * std::log(2.0 * kPi)) * riemann_zeta(j + 1.0) / 2.0;
  }
  const int n = (j + 1) / 2;
  const double z1m2n = -(bernoulli_number(2 * n) / Rational(2 * n)).to_double();
  const double z2n = riemann_zeta(2.0 * n);
  const double dz2n = hurwitz_deriv(2.0 * n, 1.0);
  return z1m2n * (std::log(2.0 * kPi) - digamma(2.0 * n) - dz2n / z2n);
}

// Chebyshev-free Temme gamma helpers from the Taylor series of 1/Gamma(1+z).
constexpr std::array<double, 29> kRecipGamma = {
    1.0,
    0.5772156649015328606,
    -0.6558780715202538811,
    -0.04200263503409523553,
    0.1665386113822914895,
    -0.04219773455554433675,
    -0.009621971527876973562,
    0.007218943246663099542,
    -0.001165167591859065112,
    -0.0002152416741149509728,
    0.0001280502823881161862,
    -0.00002013485478078823866,
    -1.250493482142670657e-6,
    1.133027231981695882e-6,
    -2.056338416977607103e-7,
    6.116095104481415818e-9,
    5.00200764446922293e-9,
    -1.181274570487020145e-9,
    1.04342671169110051e-10,
    7.782263439905071254e-12,
    -3.696805618642205708e-12,
    5.100370287454475979e-13,
    -2.058326053566506783e-14,
    -5.348122539423017982e-15,
    1.22677862823826079e-15,
    -1.18125930169745877e-16,
    1.186692254751600333e-18,
    1.412380655318031782e-18,
    -2.298745684435370207e-19,
};

struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double mu) {
  double even = 0.0, odd = 0.0;  // even: sum c_2k mu^2k, odd: sum c_2k+1 mu^2k
  double p = 1.0;
  for (size_t k = 0; k + 1 < kRecipGamma.size(); k += 2) {
    even += kRecipGamma[k] * p;
    odd += kRecipGamma[k + 1] * p;
    p *= mu * mu;
  }
  return {-odd, even, even + mu * odd, even - mu * odd};
}

// ln K_mu(x) and K_{mu+1}/K_mu for |mu| <= 1/2.
void k_small_order(double mu, double x, const Accuracy& acc, double& ln_k, double& ratio) {
  if (x <= 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::fabs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::fabs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= acc.max_terms; ++i) {
      ff = (i * ff + p + q) / (i * i - mu * mu);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    ln_k = std::log(sum);
    ratio = sum1 * (2.0 / x) / sum;
    return;
  }
  // Steed's continued fraction CF2
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= 50 * acc.max_terms; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  if (i > 50 * acc.max_terms) throw std::runtime_error("bessel_log: CF2 did not converge");
  ln_k = 0.5 * std::log(kPi / (2.0 * x)) - x - std::log(s);
  ratio = (mu + x + 0.5 - a1 * h) / x;
}

// I_{nu+1}/I_nu by modified Lentz.
double i_cf1(double nu, double x, const Accuracy& acc) {
  constexpr double tiny = 1e-300;
  double f = tiny, C = f, Dd = 0.0;
  const long limit = 100000 + 10 * static_cast<long>(x) + acc.max_terms;
  for (long k = 1; k <= limit; ++k) {
    const double bk = 2.0 * (nu + k) / x;
    Dd = bk + Dd;
    if (Dd == 0.0) Dd = tiny;
    C = bk + 1.0 / C;
    if (C == 0.0) C = tiny;
    Dd = 1.0 / Dd;
    const double delta = C * Dd;
    f *= delta;
    if (std::fabs(delta - 1.0) < kEps) return f;
  }
  throw std::runtime_error("bessel_log: CF1 did not converge");
}

struct DebyeDoubles {
  std::vector<std::vector<double>> u, v;  // dense in t, degree 3k
};

const DebyeDoubles& debye_doubles() {
  static const DebyeDoubles dd = [] {
    constexpr int kOrder = 8;  // u_0..u_16
    const DebyeTable t = build_debye_table(kOrder);
    DebyeDoubles out;
    for (int k = 0; k <= 2 * kOrder; ++k) {
      std::vector<double> uu(static_cast<size_t>(3 * k + 1)), vv(static_cast<size_t>(3 * k + 1));
      for (int e = 0; e <= 3 * k; ++e) {
        uu[static_cast<size_t>(e)] = t.u(k).coeff(e).to_double();
        vv[static_cast<size_t>(e)] = t.v(k).coeff(e).to_double();
      }
      out.u.push_back(std::move(uu));
      out.v.push_back(std::move(vv));
    }
    return out;
  }();
  return dd;
}

double horner(const std::vector<double>& c, double t) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
  return s;
}

BesselLogPair bessel_uniform(double nu, double x) {
  const auto& dd = debye_doubles();
  const double z = x / nu;
  const double sq = std::hypot(1.0, z);
  const double t = 1.0 / sq;
  const double eta = sq + std::log(z / (1.0 + sq));
  double U = 0.0, Um = 0.0, V = 0.0, Vm = 0.0;
  double pw = 1.0;
  for (size_t k = 0; k < dd.u.size(); ++k) {
    const double uk = horner(dd.u[k], t) * pw;
    const double vk = horner(dd.v[k], t) * pw;
    const double sg = (k % 2 == 0) ? 1.0 : -1.0;
    U += uk;
    Um += sg * uk;
    V += vk;
    Vm += sg * vk;
    if (k > 2 && std::fabs(uk) + std::fabs(vk) < 1e-3 * kEps) break;
    pw /= nu;
  }
  BesselLogPair r;
  r.nu = nu;
  r.x = x;
  const double half_ln_sq = 0.5 * std::log(sq);
  r.ln_i = nu * eta - 0.5 * std::log(2.0 * kPi * nu) - half_ln_sq + std::log(U);
  r.ln_k = -nu * eta + 0.5 * std::log(kPi / (2.0 * nu)) - half_ln_sq + std::log(Um);
  r.ln_ik = -std::log(2.0 * nu) - 2.0 * half_ln_sq + std::log(U) + std::log(Um);
  r.i_ratio = (sq / z) * V / U;
  r.k_ratio = -(sq / z) * Vm / Um;
  return r;
}

}  // namespace

double BesselLogPair::wronskian_residual() const {
  return std::fabs(x * (i_ratio - k_ratio) * std::exp(ln_ik) - 1.0);
}

double lgamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("lgamma: argument must be positive");
  return boost::math::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
  return boost::math::digamma(x);
}

double hurwitz(double s, double chi) {
  if (!(chi > 0.0)) throw std::domain_error("hurwitz: chi must be positive");
  if (s == 1.0) throw std::domain_error("hurwitz: pole at s = 1");
  if (is_nonpos_int(s) && s > -200.0) {
    const int j = static_cast<int>(-s);
    return hurwitz_neg_int(j, Rational(mpq_class(chi))).to_double();
  }
  return euler_maclaurin(s, chi, false).value;
}

double hurwitz_deriv(double s, double chi) {
  if (!(chi > 0.0)) throw std::domain_error("hurwitz_deriv: chi must be positive");
  if (s == 1.0) throw std::domain_error("hurwitz_deriv: pole at s = 1");
  if (is_nonpos_int(s) && s > -200.0) return hurwitz_deriv_neg_int(static_cast<int>(-s), chi);
  return euler_maclaurin(s, chi, true).deriv;
}

double hurwitz_deriv_neg_int(int j, double chi) {
  if (j < 0) throw std::invalid_argument("hurwitz_deriv_neg_int: j < 0");
  if (!(chi > 0.0)) throw std::domain_error("hurwitz_deriv_neg_int: chi must be positive");
  // Integer and half-integer chi below 64: peel the finite sum off zeta_R'(-j)
  // or zeta_H'(-j; 1/2). Avoids the cancellation of the shifted expansion.
  const double twice = 2.0 * chi;
  if (twice == std::floor(twice) && chi < 64.0) {
    const double zr = zeta_r_deriv_neg(j);
    double base, start;
    if (chi == std::floor(chi)) {
      base = zr;
      start = 1.0;
    } else {
      const double p2 = std::ldexp(1.0, -j);
      const double zj = hurwitz_neg_int(j, Rational(1)).to_double();
      base = p2 * std::numbers::ln2 * zj + (p2 - 1.0) * zr;
      start = 0.5;
    }
    for (double q = start; q < chi; q += 1.0) base += std::pow(q, j) * std::log(q);
    return base;
  }
  return euler_maclaurin(-static_cast<double>(j), chi, true).deriv;
}

double riemann_zeta(double s) {
  if (s == 1.0) throw std::domain_error("riemann_zeta: pole at s = 1");
  return boost::math::zeta(s);
}

double riemann_zeta_deriv_neg_int(int j) {
  if (j < 0) throw std::invalid_argument("riemann_zeta_deriv_neg_int: j < 0");
  return zeta_r_deriv_neg(j);
}

BesselLogPair bessel_log(double nu, double x, const Accuracy& acc) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::domain_error("bessel_log: order must be >= 0");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("bessel_log: argument must be > 0");
  if (nu >= 50.0) return bessel_uniform(nu, x);

  BesselLogPair r;
  r.nu = nu;
  r.x = x;
  const double n_int = std::floor(nu + 0.5);
  const double mu = nu - n_int;
  double ln_k = 0.0, ratio = 0.0;
  k_small_order(mu, x, acc, ln_k, ratio);
  for (int k = 0; k < static_cast<int>(n_int); ++k) {
    ln_k += std::log(ratio);
    ratio = 1.0 / ratio + 2.0 * (mu + k + 1) / x;
  }
  r.ln_k = ln_k;
  r.k_ratio = nu / x - ratio;

  if (x <= 30.0) {
    // ascending series for I_nu and I_{nu+1}, both normalised by their leading term
    const double y = 0.25 * x * x;
    double t0 = 1.0, t1 = 1.0, s0 = 1.0, s1 = 1.0;
    for (int k = 1; k <= acc.max_terms; ++k) {
      t0 *= y / (k * (nu + k));
      t1 *= y / (k * (nu + 1.0 + k));
      s0 += t0;
      s1 += t1;
      if (t0 < kEps * 1e-2 * s0 && t1 < kEps * 1e-2 * s1) break;
    }
    r.ln_i = nu * std::log(0.5 * x) - lgamma(nu + 1.0) + std::log(s0);
    const double f = 0.5 * x / (nu + 1.0) * s1 / s0;
    r.i_ratio = nu / x + f;
  } else {
    const double f = i_cf1(nu, x, acc);
    r.ln_i = -std::log(x) - ln_k - std::log(ratio + f);
    r.i_ratio = nu / x + f;
  }
  r.ln_ik = r.ln_i + r.ln_k;
  return r;
}

double lngamma_moment_integral(int j, double c, int D, int sign) {
  if (j < 1) throw std::invalid_argument("lngamma_moment_integral: j must be >= 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("lngamma_moment_integral: sign must be +-1");
  const double h = 0.5 * D;
  if (!(std::fabs(c) < h)) throw std::domain_error("lngamma_moment_integral: |c| must be < D/2");
  if (c == 0.0) return 0.0;
  auto f = [&](double u) { return std::pow(u, j - 1) * boost::math::lgamma(h + sign * u); };
  double err = 0.0;
  const double lo = std::min(0.0, c), hi = std::max(0.0, c);
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-15, &err);
  return c > 0.0 ? v : -v;
}

}  // namespace casimir
