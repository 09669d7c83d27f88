// SPDX-License-Identifier: Apache-2.0
#include "casimir/zetazero.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/specfun.hpp"

namespace casimir {

namespace {

void check_dim(int D) {
  if (D < 3 || D > 12) throw std::invalid_argument("zeta_prime_zero: D must be in [3, 12]");
}

double pow_r(const Rational& c, int j) { return c.pow(j).to_double(); }

// Lowest two Laurent coefficients (s^-1, s^0) of zeta_H(2s + m; chi) at s = 0,
// exact where the value is rational; `regular_known` is false for m >= 2.
struct HurwitzLaurent {
  Rational pole;  // coefficient of 1/s
  Rational constant;
  bool regular_known = true;
};

HurwitzLaurent hurwitz_laurent(int m, const Rational& chi) {
  if (m == 1) return {Rational(1, 2), Rational(0), false};  // constant needs -psi(chi); never used
  if (m <= 0) return {Rational(0), hurwitz_neg_int(-m, chi), true};
  return {Rational(0), Rational(0), false};
}

// Gamma(s+n)/(Gamma(s) Gamma(n)) = (s)_n / (n-1)! as an exact polynomial in s.
RatPoly gamma_ratio_poly(int n) {
  RatPoly p = RatPoly::monomial(0, Rational(1));
  for (int r = 0; r < n; ++r) p = p * (RatPoly::monomial(1, Rational(1)) + RatPoly::monomial(0, Rational(r)));
  return p.scaled(Rational(1) / factorial(n - 1));
}

}  // namespace

double y_d_weights(int D, const Rational& c, const std::vector<Rational>& z) {
  const double h = 0.5 * D;
  const double cd = c.to_double();
  if (!(std::fabs(cd) < h)) throw std::domain_error("y_d: |c| must be < D/2");
  if (c.is_zero()) return 0.0;
  double r = z.empty() ? 0.0 : -2.0 * z[0].to_double() * lgamma(h);
  const double lg_minus = lgamma(h - cd), lg_plus = lgamma(h + cd), psi = digamma(h);
  for (int j = 0; j < static_cast<int>(z.size()); ++j) {
    if (z[static_cast<size_t>(j)].is_zero()) continue;
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    double t = (1.0 - sgn) * psi * pow_r(c, j + 1) / (j + 1) + pow_r(c, j) * (lg_minus + sgn * lg_plus);
    if (j > 0)
      t -= j * (sgn * lngamma_moment_integral(j, cd, D, 1) + lngamma_moment_integral(j, cd, D, -1));
    r += z[static_cast<size_t>(j)].to_double() * t;
  }
  return r;
}

double y_d(int D, const Rational& c, YBranch branch) {
  const DegeneracySet deg = nu_expansion(D);
  return y_d_weights(D, c, branch == YBranch::Scalar ? deg.y : deg.x);
}

ExactCoeff zeta_zero_continuation(int D, BoundaryCondition bc) {
  check_dim(D);
  const int N = (D + 1) / 2;  // any N >= D/2 keeps the remainder pole-free at s = 0
  const auto fams = mode_families(D, bc);
  const DebyeTable tab = debye_for(D, bc, N);
  Rational total(0);
  for (const auto& f : fams) {
    if (f.single_mode) {
      // -(1/2) a^{2s} (D/2)^{-2s} at s = 0; the remainder carries sin(pi s)
      total += Rational(-1, 2);
      continue;
    }
    for (int j = 0; j < static_cast<int>(f.weights.size()); ++j) {
      const Rational& w = f.weights[static_cast<size_t>(j)];
      if (w.is_zero()) continue;
      const HurwitzLaurent z0 = hurwitz_laurent(-j, f.chi);
      total += Rational(f.sigma, 2) * w * z0.constant;
      for (int i = 1; i <= N; ++i) {
        const HurwitzLaurent zl = hurwitz_laurent(2 * i - j, f.chi);
        Rational ek_sum(0);
        for (int k = 0; k <= 2 * i; ++k) {
          const RatPoly g = gamma_ratio_poly(i + k);
          if (!g.coeff(0).is_zero()) throw std::logic_error("zeta_zero_continuation: ratio not O(s)");
          // s^0 part of (pole/s + const + ...) * (g1 s + g2 s^2 + ...)
          ek_sum += family_coeff(tab, f, i, k) * zl.pole * g.coeff(1);
        }
        total += Rational(-2) * w * ek_sum;
      }
    }
  }
  return {total, 0, 0};
}

ZetaPrimeResult zeta_prime_zero(int D, BoundaryCondition bc) {
  check_dim(D);
  const auto fams = mode_families(D, bc);
  const int N = (D + 1) / 2;
  const DebyeTable tab = debye_for(D, bc, N);

  ZetaPrimeResult res;
  res.dimension = D;
  res.bc = bc;
  res.zeta_zero = zeta_zero_continuation(D, bc);

  double hz_part = 0.0, finite_part = 0.0, y_part = 0.0, psi_part = 0.0, neumann_part = 0.0;
  for (const auto& f : fams) {
    if (f.single_mode) {
      neumann_part += std::log(0.5 * D);
      continue;
    }
    const double chi = f.chi.to_double();
    const bool integer_chi = f.chi.is_integer();
    for (int j = 0; j < static_cast<int>(f.weights.size()); ++j) {
      const Rational& w = f.weights[static_cast<size_t>(j)];
      if (w.is_zero()) continue;
      hz_part += f.sigma * w.to_double() * hurwitz_deriv_neg_int(j, chi);
      // zeta_H'(-j; m) = zeta_R'(-j) + ..., zeta_H'(-j; m+1/2) = (2^-j - 1) zeta_R'(-j) + ...
      const Rational rw = integer_chi ? Rational(1) : Rational(1, 1L << j) - Rational(1);
      res.zeta_r_prime_weights[j] += Rational(f.sigma) * w * rw;
    }
    if (f.robin_c) {
      const Rational& c = *f.robin_c;
      Rational fin(0);
      for (int j = 0; j < static_cast<int>(f.weights.size()); ++j)
        for (int i = 1; i <= j / 2; ++i)
          fin += f.weights[static_cast<size_t>(j)] * c.pow(2 * i) / Rational(i) * hurwitz_neg_int(j - 2 * i, f.chi);
      finite_part += fin.to_double();
      y_part += y_d_weights(D, c, f.weights);
    }
    const double psi_chi = digamma(chi);
    for (int i = 1; i <= (D - 1) / 2; ++i) {
      const int j = 2 * i - 1;
      if (j >= static_cast<int>(f.weights.size())) continue;
      const double w = f.weights[static_cast<size_t>(j)].to_double();
      for (int k = 0; k <= 2 * i; ++k)
        psi_part -= w * family_coeff(tab, f, i, k).to_double() *
                    (harmonic_number(i + k - 1).to_double() - 2.0 * psi_chi);
    }
  }
  std::erase_if(res.zeta_r_prime_weights, [](const auto& kv) { return kv.second.is_zero(); });
  res.breakdown = {{"hurwitz_deriv", hz_part},
                   {"hurwitz_finite", finite_part},
                   {"y_d", y_part},
                   {"psi_debye", psi_part},
                   {"neumann_l0", neumann_part}};
  res.zp_value = hz_part + finite_part + y_part + psi_part + neumann_part;
  return res;
}

}  // namespace casimir
