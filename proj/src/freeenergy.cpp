// SPDX-License-Identifier: Apache-2.0
#include "casimir/freeenergy.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "casimir/degeneracy.hpp"
#include "casimir/lattice.hpp"
#include "casimir/zetazero.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

// Neumaier-compensated accumulator
struct Acc {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

double poly_horner(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

// Gamma(m - 1/2) / Gamma(m) as an exact rational (the sqrt(pi) factor is stripped).
Rational half_gamma_ratio(int m) {
  auto [g, e] = gamma_exact(Rational(2 * m - 1, 2));
  if (e != 1) throw std::logic_error("half_gamma_ratio: unexpected gamma form");
  return g / factorial(m - 1);
}

double weight_poly(const std::vector<double>& w, double nu) {
  double r = 0.0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = r * nu + *it;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

void ThermalConfig::validate() const {
  if (dimension < 3 || dimension > 12) throw std::invalid_argument("ThermalConfig: dimension must be in [3, 12]");
  if (!(aT > 0.0) || !std::isfinite(aT)) throw std::invalid_argument("ThermalConfig: aT must be > 0");
  if (!(a_mu > 0.0) || !std::isfinite(a_mu)) throw std::invalid_argument("ThermalConfig: a_mu must be > 0");
  if (!(abs_tol >= 0.0)) throw std::invalid_argument("ThermalConfig: abs_tol must be >= 0");
  const int N = truncation.N;
  if (N != 0 && 2 * N < dimension) throw std::invalid_argument("ThermalConfig: N must be >= D/2");
  if (truncation.l_split < 1 || truncation.n_high < 1 || truncation.n_high > 12)
    throw std::invalid_argument("ThermalConfig: bad split parameters");
  if (truncation.l_max < 1 || truncation.p_max < 1) throw std::invalid_argument("ThermalConfig: caps must be positive");
  acc.validate();
}

double AsymptoticCoeffs::eval(double aT) const {
  const double L = std::log(aT);
  return t_log_t.to_double() * aT * L + t * aT + log_t * L + constant;
}

AsymptoticCoeffs asymptotic_coeffs(int D, BoundaryCondition bc) {
  const auto hk = heat_kernel_coeffs(D, bc);
  const auto zp = zeta_prime_zero(D, bc);
  const ExactCoeff& cD = hk.c(D);
  if (cD.sqrt_pi_power() != 0) throw std::logic_error("asymptotic_coeffs: c_D carries sqrt(pi)");
  AsymptoticCoeffs a;
  a.t_log_t = -cD.coeff();
  a.t = -0.5 * zp.zp_value;
  const double cD1 = hk.c(D + 1).value();
  a.log_t = cD1 / std::sqrt(2.0 * kPi);
  a.constant = (digamma(1.0) + std::log(4.0 * kPi)) * a.log_t;
  return a;
}

// ---------------------------------------------------------------------------
// Remainder B'

BPrimeEvaluator::BPrimeEvaluator(std::optional<Rational> c, int N, int max_order)
    : N_(N), M_(std::max(max_order, N + 1)), robin_(c.has_value()) {
  if (N < 1) throw std::invalid_argument("BPrimeEvaluator: N must be >= 1");
  if (M_ > DebyeTable::kMaxOrder) throw std::invalid_argument("BPrimeEvaluator: order too large");
  std::vector<Rational> params;
  if (c) {
    params.push_back(*c);
    c_ = c->to_double();
  }
  const DebyeTable tab = build_debye_table(M_, params);
  e_ = even_coeffs(tab, c ? &*c : nullptr);
  e_lo_.resize(e_.size());
  for (int i = 1; i <= M_; ++i)
    for (int k = 0; k <= 2 * i; ++k) {
      const Rational exact = c ? tab.m(2 * i, k, *c) : tab.d(2 * i, k);
      const double hi = e_[static_cast<size_t>(i)][static_cast<size_t>(k)];
      e_lo_[static_cast<size_t>(i)].push_back((exact - Rational(mpq_class(hi))).to_double());
    }
}

double BPrimeEvaluator::asymptotic(double nu, double x) const {
  // The monomial coefficients reach ~5e29 at order 24 while the polynomial
  // stays below ~1e10 on [0, 1]; near t = 1 that cancellation eats a double
  // and most of a long double, so Horner runs in binary128 there.
  const long double rt2 = static_cast<long double>(nu) * nu + static_cast<long double>(x) * x;
  const long double t2 = static_cast<long double>(nu) * nu / rt2;
  const bool wide = t2 > 0.2L;
  long double inv = std::pow(rt2, -static_cast<long double>(N_));
  long double s = 0.0L;
  for (int i = N_ + 1; i <= M_; ++i) {
    inv /= rt2;
    const auto& c = e_[static_cast<size_t>(i)];
    long double p;
    const auto& lo = e_lo_[static_cast<size_t>(i)];
    if (wide) {
      const __float128 q2 = static_cast<__float128>(nu) * nu / (static_cast<__float128>(nu) * nu + static_cast<__float128>(x) * x);
      __float128 q = 0;
      for (size_t k = c.size(); k-- > 0;) q = q * q2 + (static_cast<__float128>(c[k]) + lo[k]);
      p = static_cast<long double>(q);
    } else {
      p = 0.0L;
      for (size_t k = c.size(); k-- > 0;) p = p * t2 + (static_cast<long double>(c[k]) + lo[k]);
    }
    const long double term = inv * p;
    s += term;
    if (std::fabs(term) < 1e-21L * std::fabs(s)) break;
  }
  return static_cast<double>(-2.0L * s);
}

double BPrimeEvaluator::operator()(double nu, double x) const {
  if (!(nu > 0.0)) throw std::domain_error("bprime_remainder: nu must be > 0");
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("bprime_remainder: x must be >= 0");
  if (x == 0.0) {
    if (!robin_) return 0.0;
    const double r = c_ * c_ / (nu * nu);
    if (r >= 1.0) throw std::domain_error("bprime_remainder: nu^2 <= c^2 at x = 0");
    if (r < 0.5) {
      // tail of -log1p(-r) = sum r^i / i beyond i = N
      double p = std::pow(r, N_), s = 0.0;
      for (int i = N_ + 1; i < 2000; ++i) {
        p *= r;
        const double term = p / i;
        s += term;
        if (term < 1e-18 * s || term == 0.0) break;
      }
      return s;
    }
    double s = -std::log1p(-r), p = 1.0;
    for (int i = 1; i <= N_; ++i) {
      p *= r;
      s -= p / i;
    }
    return s;
  }
  if (nu >= kUniformOrder || x >= x_switch(nu)) return asymptotic(nu, x);

  const BesselLogPair b = bessel_log(nu, x);
  const double rt2 = nu * nu + x * x;
  const double t2 = nu * nu / rt2;
  double v;
  if (!robin_) {
    v = -b.ln_ik + 0.5 * std::log(t2) - std::log(2.0 * nu);
  } else {
    const double a1 = c_ + x * b.i_ratio;
    const double a2 = -c_ - x * b.k_ratio;
    v = -(b.ln_ik + std::log(a1) + std::log(a2)) + 0.5 * std::log(rt2) - std::log(2.0);
  }
  double inv = 1.0, s = 0.0;
  for (int i = 1; i <= N_; ++i) {
    inv /= rt2;
    s += inv * poly_horner(e_[static_cast<size_t>(i)], t2);
  }
  return v + 2.0 * s;
}

double BPrimeEvaluator::lattice_tail(double nu, double h, long P) const {
  // sum_{p>P} (nu^2 + h^2 p^2)^-m = X^-2m sum_r binom(-m, r) (nu/X)^2r Z(2m+2r),
  // X = h (P+1), Z(s) = (P+1)^s zeta_H(s; P+1)
  const double a = static_cast<double>(P + 1);
  const double X = h * a;
  const double q = (nu / X) * (nu / X);
  if (q >= 0.25) throw std::domain_error("lattice_tail: cut too close to the order");
  std::map<int, double> zcache;
  auto Z = [&](int s) {
    auto it = zcache.find(s);
    if (it != zcache.end()) return it->second;
    double z;
    if (s * std::log(a) < 600.0) {
      z = hurwitz(s, a) * std::pow(a, s);
    } else {
      z = a / (s - 1.0) + 0.5 + s / (12.0 * a);
    }
    zcache.emplace(s, z);
    return z;
  };
  const double lnX = std::log(X);
  Acc total;
  for (int i = N_ + 1; i <= M_; ++i) {
    const auto& e = e_[static_cast<size_t>(i)];
    for (size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0.0) continue;
      const int m = i + static_cast<int>(k);
      const double scale = std::exp(2.0 * static_cast<double>(k) * std::log(nu) - 2.0 * m * lnX);
      if (scale * std::fabs(e[k]) < 1e-300) continue;
      double binom = 1.0, qp = 1.0, s = 0.0;
      for (int r = 0; r < 400; ++r) {
        if (r > 0) {
          binom *= -static_cast<double>(m + r - 1) / r;
          qp *= q;
        }
        const double term = binom * qp * Z(2 * m + 2 * r);
        s += term;
        if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
      }
      total.add(e[k] * scale * s);
    }
  }
  return -2.0 * total.value();
}

double bprime_remainder(std::optional<Rational> c, double nu, double x, int N) {
  static std::mutex mu;
  static std::map<std::pair<std::optional<Rational>, int>, std::shared_ptr<BPrimeEvaluator>> cache;
  std::shared_ptr<BPrimeEvaluator> ev;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{c, N}];
    if (!slot) slot = std::make_shared<BPrimeEvaluator>(c, N);
    ev = slot;
  }
  return (*ev)(nu, x);
}

// ---------------------------------------------------------------------------
// Bessel-K remainders

double xi_regular(double s, int alpha, double chi, double c, const Accuracy& acc) {
  if (!(chi > 0.0) || !(c > 0.0)) throw std::domain_error("xi_regular: chi and c must be positive");
  if (s <= 0.0 && s == std::floor(s)) return 0.0;  // 1/Gamma(s) vanishes
  const double order = std::fabs(s - 0.5);
  const double pref = 4.0 * kSqrtPi / (c * std::tgamma(s));
  const double tol = acc.rel_tol * 1e-2;
  Acc total;
  for (long n = 0; n < 100L * acc.max_terms; ++n) {
    const double q = n + chi;
    Acc band;
    for (long p = 1; p < 100L * acc.max_terms; ++p) {
      const double arg = 2.0 * kPi * p * q / c;
      const BesselLogPair b = bessel_log(order, arg, acc);
      const double lt = (alpha - s + 0.5) * std::log(q) + (s - 0.5) * std::log(kPi * p / c) + b.ln_k;
      const double term = std::exp(lt);
      band.add(term);
      if (term <= tol * std::fabs(band.value()) || term == 0.0) break;
    }
    const double bv = band.value();
    total.add(bv);
    if (std::fabs(bv) <= tol * std::fabs(total.value()) || bv == 0.0) break;
  }
  return pref * total.value();
}

double x_regular(double s, int D, double aT, const Accuracy& acc) {
  if (D < 1 || !(aT > 0.0)) throw std::domain_error("x_regular: bad arguments");
  if (s <= 0.0 && s == std::floor(s)) return 0.0;
  const double order = std::fabs(s - 0.5);
  const double pref = 2.0 / (std::tgamma(s) * kSqrtPi * aT);
  const double tol = acc.rel_tol * 1e-2;
  Acc total;
  for (long p = 1; p < 100L * acc.max_terms; ++p) {
    const BesselLogPair b = bessel_log(order, D * p / (2.0 * aT), acc);
    const double term = std::exp((s - 0.5) * std::log(p / (D * aT)) + b.ln_k);
    total.add(term);
    if (term <= tol * std::fabs(total.value()) || term == 0.0) break;
  }
  return pref * total.value();
}

// ---------------------------------------------------------------------------
// Thermal model

namespace {

struct Tower {
  int sigma = -1;
  double chi = 0.0;
  std::vector<double> w;
  bool single = false;
  int n_low = 0;   // modes handled with Bessel-exact remainders
  int N_low = 0;   // their Debye order
  std::unique_ptr<BPrimeEvaluator> bp;
  std::vector<std::vector<double>> q_low, q_high;  // Q_i coefficients, i = 1..
  double high_const = 0.0;
  double k0 = 0.0;  // p = 0 remainder of the high band, Robin towers only
  std::vector<double> q_next;
  double g_next = 0.0, next_0 = 0.0, k0_next = 0.0;
};

std::vector<double> q_poly(const DebyeTable& tab, const ModeFamily& f, int i) {
  std::vector<Rational> q(static_cast<size_t>(3 * i), Rational(0));
  for (int k = 0; k <= 2 * i; ++k) {
    const Rational e = family_coeff(tab, f, i, k);
    if (e.is_zero()) continue;
    const int m = i + k - 1;
    const Rational norm = e / (factorial(m) * Rational(2).pow(m));
    for (int r = 0; r <= m; ++r) {
      const Rational cr = factorial(m + r) / (factorial(r) * factorial(m - r)) / Rational(2).pow(r);
      q[static_cast<size_t>(m - r)] += norm * cr;
    }
  }
  std::vector<double> out;
  for (const auto& v : q) out.push_back(v.to_double());
  while (!out.empty() && out.back() == 0.0) out.pop_back();
  return out;
}

// G_i / (2 sqrt(pi)) as a rational
Rational g_half(const DebyeTable& tab, const ModeFamily& f, int i) {
  Rational g(0);
  for (int k = 0; k <= 2 * i; ++k) g += family_coeff(tab, f, i, k) * half_gamma_ratio(i + k);
  return g / Rational(2);
}

double hurwitz_any(int s, const Rational& chi) {
  if (s <= 0) return hurwitz_neg_int(-s, chi).to_double();
  return hurwitz(static_cast<double>(s), chi.to_double());
}

}  // namespace

class ThermalModel {
 public:
  ThermalModel(int D, BoundaryCondition bc, const Truncation& tr);
  FreeEnergyResult evaluate(double aT, double a_mu, const Accuracy& acc, double abs_tol) const;

 private:
  double mode_thermal(const Tower& tw, const std::vector<std::vector<double>>& Q, double nu, double W,
                      double T) const;
  struct PSum {
    double value = 0.0;
    long terms = 0;
    double err = 0.0;
    bool ok = true;
  };
  PSum matsubara_remainder(const BPrimeEvaluator& B, double nu, double T) const;

  int D_;
  BoundaryCondition bc_;
  Truncation tr_;
  int nhi_ = 0;
  std::vector<Tower> towers_;
  double const_total_ = 0.0;
  double cD1_ = 0.0;
  std::vector<double> renorm_;  // coefficient of T^(D-n+1), n = 0..D-1
  AsymptoticCoeffs asym_;
};

ThermalModel::ThermalModel(int D, BoundaryCondition bc, const Truncation& tr) : D_(D), bc_(bc), tr_(tr) {
  const int N0 = tr.N > 0 ? tr.N : (D + 1) / 2;
  const int Nhi = std::max(tr.n_high, tr.N > 0 ? tr.N : (D + 1) / 2);
  nhi_ = Nhi;
  const int L0 = tr.l_split;
  const int M = std::max({12, Nhi + 1, N0 + 1});
  const DebyeTable tab = debye_for(D, bc, M);
  const auto hk = heat_kernel_coeffs(D, bc);

  Acc consts;
  for (const ModeFamily& f : mode_families(D, bc)) {
    Tower tw;
    tw.sigma = f.sigma;
    tw.chi = f.chi.to_double();
    for (const auto& r : f.weights) tw.w.push_back(r.to_double());
    tw.single = f.single_mode;
    tw.n_low = f.single_mode ? 1 : L0;
    tw.N_low = f.single_mode ? 1 : N0;
    tw.bp = std::make_unique<BPrimeEvaluator>(f.robin_c, tw.N_low, M);
    std::vector<Rational> g(static_cast<size_t>(std::max(Nhi, tw.N_low) + 1));
    for (int i = 1; i <= std::max(Nhi, tw.N_low); ++i) g[static_cast<size_t>(i)] = g_half(tab, f, i);
    tw.q_low.resize(static_cast<size_t>(tw.N_low + 1));
    for (int i = 1; i <= tw.N_low; ++i) tw.q_low[static_cast<size_t>(i)] = q_poly(tab, f, i);

    if (tw.single) {
      const double nu = tw.chi, W = weight_poly(tw.w, nu);
      consts.add(tw.sigma * nu * W / 4.0 + W / nu * g[1].to_double());
    } else {
      // Zero-temperature constants. Each low-band partial sum over n < L0 and its
      // high-band Hurwitz complement at chi + L0 are merged into one Hurwitz value
      // at chi; they cancel to ~L0^D otherwise. Only the j = 2i-2 pieces, whose
      // high-band part is the psi-block, keep an explicit low-band sum.
      tw.q_high.resize(static_cast<size_t>(Nhi + 1));
      for (int i = 1; i <= Nhi; ++i) tw.q_high[static_cast<size_t>(i)] = q_poly(tab, f, i);
      const Rational chp = f.chi + Rational(L0);
      const double chpd = chp.to_double();
      Acc hc;
      Rational exact(0);
      for (size_t j = 0; j < f.weights.size(); ++j)
        exact += f.weights[j] * hurwitz_neg_int(static_cast<int>(j) + 1, f.chi);
      hc.add(f.sigma * exact.to_double() / 4.0);
      const double psi_chp = digamma(chpd);
      for (int i = 1; i <= Nhi; ++i) {
        const double gi = g[static_cast<size_t>(i)].to_double();
        for (size_t jj = 0; jj < f.weights.size(); ++jj) {
          const int j = static_cast<int>(jj);
          if (f.weights[jj].is_zero()) continue;
          const double w = f.weights[jj].to_double();
          if (j != 2 * i - 2) {
            hc.add(w * gi * hurwitz_any(2 * i - j - 1, i <= tw.N_low ? f.chi : chp));
            continue;
          }
          if (i <= tw.N_low) {
            double inv = 0.0;
            for (int n = L0 - 1; n >= 0; --n) inv += 1.0 / (tw.chi + n);
            hc.add(w * gi * inv);
          }
          // psi(i+k-1/2) - psi(1) = 2 sum_{l<i+k} 1/(2l-1) - 2 ln 2
          Acc blk;
          for (int k = 0; k <= 2 * i; ++k) {
            const Rational e = family_coeff(tab, f, i, k);
            if (e.is_zero()) continue;
            Rational h(0);
            for (int l = 1; l < i + k; ++l) h += Rational(2, 2 * l - 1);
            const double psi_diff = h.to_double() - 2.0 * std::numbers::ln2 - 2.0 * psi_chp;
            blk.add((e * half_gamma_ratio(i + k)).to_double() * psi_diff);
          }
          hc.add(w / 4.0 * blk.value());
        }
      }
      tw.high_const = hc.value();
      consts.add(tw.high_const);

      if (f.robin_c) {
        const double c2 = f.robin_c->to_double() * f.robin_c->to_double();
        Acc k0;
        for (int i = Nhi + 1; i < 400; ++i) {
          double inner = 0.0;
          for (size_t jj = 0; jj < f.weights.size(); ++jj) {
            if (f.weights[jj].is_zero()) continue;
            inner += f.weights[jj].to_double() * hurwitz(2.0 * i - static_cast<double>(jj), chpd);
          }
          const double term = std::pow(c2, i) / i * inner;
          k0.add(term);
          if (std::fabs(term) < 1e-20 * std::fabs(k0.value()) || term == 0.0) break;
        }
        tw.k0 = k0.value();
      }

      // First omitted order io = Nhi + 1: raising n_high by one would add
      // sum_n W nu^(1-2io) (g_io + S_io(nu/T)) and move the io term out of k0.
      const int io = Nhi + 1;
      tw.g_next = g_half(tab, f, io).to_double();
      tw.q_next = q_poly(tab, f, io);
      double zsum = 0.0;
      for (size_t jj = 0; jj < f.weights.size(); ++jj)
        if (!f.weights[jj].is_zero())
          zsum += f.weights[jj].to_double() * hurwitz(2.0 * io - 1.0 - static_cast<double>(jj), chpd);
      tw.next_0 = tw.g_next * zsum;
      if (f.robin_c) {
        const double c2 = f.robin_c->to_double() * f.robin_c->to_double();
        double inner = 0.0;
        for (size_t jj = 0; jj < f.weights.size(); ++jj)
          if (!f.weights[jj].is_zero()) inner += f.weights[jj].to_double() * hurwitz(2.0 * io - static_cast<double>(jj), chpd);
        tw.k0_next = std::pow(c2, io) / io * inner;
      }
    }
    towers_.push_back(std::move(tw));
  }
  const_total_ = consts.value();

  cD1_ = hk.c(D + 1).value();
  for (int n = 0; n < D; ++n) {
    const double k = D - n + 1;
    renorm_.push_back(std::pow(2.0, D - n) * std::tgamma(k / 2.0) * riemann_zeta(k) * hk.c(n).value() / kSqrtPi);
  }
  asym_ = asymptotic_coeffs(D, bc);
}

double ThermalModel::mode_thermal(const Tower& tw, const std::vector<std::vector<double>>& Q, double nu,
                                  double W, double T) const {
  const double y = nu / T;
  if (y > 740.0) return 0.0;
  size_t deg = 0;
  for (size_t i = 1; i < Q.size(); ++i) deg = std::max(deg, Q[i].size());
  std::vector<double> c(deg, 0.0);
  for (size_t i = 1; i < Q.size(); ++i) {
    const double f = std::pow(nu, 1.0 - 2.0 * static_cast<double>(i));
    for (size_t r = 0; r < Q[i].size(); ++r) c[r] += f * Q[i][r];
  }
  const double lat = poly_exp_lattice_sum(c, y).value;
  return W * (tw.sigma * 0.5 * T * std::log(-std::expm1(-y)) + lat);
}

ThermalModel::PSum ThermalModel::matsubara_remainder(const BPrimeEvaluator& B, double nu, double T) const {
  PSum out;
  const double h = 2.0 * kPi * T;
  if (nu / T > 40.0 && (2.0 * nu + 1.0) * std::log(h) < -35.0) {
    // Poisson: T sum_p f(h p) -> (1/pi) int_0^inf f(x) dx. Split at the asymptotic
    // crossover; beyond it x = X/u keeps the integrand smooth and bounded.
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double X = B.x_switch(nu);
    double e1 = 0.0, e2 = 0.0;
    const double I1 = GK::integrate([&](double x) { return x > 0.0 ? B(nu, x) : B(nu, 0.0); }, 0.0, X, 6, 1e-11, &e1);
    const double I2 = GK::integrate(
        [&](double u) { return u > 0.0 ? B.asymptotic(nu, X / u) * X / (u * u) : 0.0; }, 0.0, 1.0, 6, 1e-13, &e2);
    out.value = (I1 + I2) / kPi;
    out.err = (e1 + e2) / kPi;
    out.terms = 0;
    return out;
  }
  long P = static_cast<long>(std::ceil(B.x_switch(nu) / h));
  if (P > tr_.p_max) {
    P = tr_.p_max;
    out.ok = false;
  }
  Acc s;
  for (long p = P; p >= 1; --p) s.add(2.0 * B(nu, h * static_cast<double>(p)));
  s.add(B(nu, 0.0));
  if (out.ok) s.add(2.0 * B.lattice_tail(nu, h, P));
  out.value = T * s.value();
  out.terms = P;
  return out;
}

FreeEnergyResult ThermalModel::evaluate(double T, double a_mu, const Accuracy& acc, double abs_tol) const {
  FreeEnergyResult res;
  auto& dg = res.diagnostics;
  Acc E;
  E.add(const_total_);
  double quad_err = 0.0, l_tail = 0.0;
  bool ok = true;
  for (const Tower& tw : towers_) {
    for (int n = 0; n < tw.n_low; ++n) {
      const double nu = tw.chi + n;
      const double W = weight_poly(tw.w, nu);
      E.add(mode_thermal(tw, tw.q_low, nu, W, T));
      const PSum ps = matsubara_remainder(*tw.bp, nu, T);
      E.add(-0.5 * W * ps.value);
      quad_err += std::fabs(0.5 * W * ps.err);
      dg.p_used = std::max(dg.p_used, ps.terms);
      ok = ok && ps.ok;
    }
    if (tw.single) continue;
    E.add(-0.5 * T * tw.k0);
    Acc next;
    next.add(tw.next_0 + 0.5 * T * tw.k0_next);
    long n = tr_.l_split;
    for (;; ++n) {
      if (n - tr_.l_split > tr_.l_max) {
        ok = false;
        break;
      }
      const double nu = tw.chi + n;
      const double W = weight_poly(tw.w, nu);
      const double th = mode_thermal(tw, tw.q_high, nu, W, T);
      E.add(th);
      const double y = nu / T;
      if (y < 740.0) next.add(W * std::pow(nu, -2.0 * nhi_ - 1.0) * poly_exp_lattice_sum(tw.q_next, y).value);
      if (y > 40.0 && std::fabs(th) <= 1e-18 * std::fabs(E.value())) break;
    }
    dg.l_used = std::max(dg.l_used, n);
    l_tail += std::fabs(next.value());
  }
  Acc ren;
  for (int k = 0; k < D_; ++k) ren.add(renorm_[static_cast<size_t>(k)] * std::pow(T, D_ - k + 1));
  E.add(ren.value());

  const double core = E.value();
  const double mu_term = cD1_ / (2.0 * kSqrtPi) * std::log(a_mu);
  res.e_ren = core - mu_term;
  res.e_mu_indep = res.e_ren + mu_term;
  res.e_asym = asym_.eval(T);
  const double L = std::log(T);
  res.e_asym_2sqrtpi = asym_.t_log_t.to_double() * T * L + asym_.t * T +
                       (digamma(1.0) + std::log(4.0 * kPi) + L) * cD1_ / (2.0 * kSqrtPi);

  dg.tail_estimates = {{"l_remainder", l_tail}, {"p_quadrature", quad_err}};
  dg.tail = l_tail + quad_err;
  dg.converged = ok && std::isfinite(core) && dg.tail <= std::max(acc.rel_tol * std::fabs(res.e_mu_indep), abs_tol);
  if (!ok) dg.tail_estimates.emplace_back("budget_exhausted", 1.0);
  return res;
}

std::shared_ptr<const ThermalModel> thermal_model(int D, BoundaryCondition bc, const Truncation& tr) {
  static std::mutex mu;
  static std::map<std::tuple<int, BoundaryCondition, int, long, long, int, int>, std::shared_ptr<const ThermalModel>>
      cache;
  const auto key = std::make_tuple(D, bc, tr.N, tr.l_max, tr.p_max, tr.l_split, tr.n_high);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto model = std::make_shared<const ThermalModel>(D, bc, tr);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, model);
  return it->second;
}

FreeEnergyResult casimir_free_energy(const ThermalConfig& cfg) {
  cfg.validate();
  const auto model = thermal_model(cfg.dimension, cfg.bc, cfg.truncation);
  return model->evaluate(cfg.aT, cfg.a_mu, cfg.acc, cfg.abs_tol);
}

}  // namespace casimir
