// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace casimir {

struct Accuracy {
  double rel_tol = 1e-12;
  double abs_floor = 1e-300;
  int max_terms = 4096;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1e-6)) throw std::invalid_argument("Accuracy: rel_tol out of range");
    if (max_terms < 64) throw std::invalid_argument("Accuracy: max_terms must be >= 64");
  }
};

// Log-scaled modified Bessel data of real order; derivative ratios are d/dx.
struct BesselLogPair {
  double nu = 0.0;
  double x = 0.0;
  double ln_i = 0.0;
  double ln_k = 0.0;
  double i_ratio = 0.0;  // I'_nu(x) / I_nu(x)
  double k_ratio = 0.0;  // K'_nu(x) / K_nu(x)
  // ln(I K) formed without the exp(+-nu eta) factors where the branch allows it;
  // ln_i + ln_k loses ~|ln_i| ulps at large order.
  double ln_ik = 0.0;

  // |x (I'/I - K'/K) I K - 1|
  double wronskian_residual() const;
};

double lgamma(double x);
double digamma(double x);

// Hurwitz zeta zeta_H(s; chi) and its s-derivative. Non-positive integer s is
// routed through the exact Bernoulli polynomial path.
double hurwitz(double s, double chi);
double hurwitz_deriv(double s, double chi);
double hurwitz_deriv_neg_int(int j, double chi);

double riemann_zeta(double s);
// zeta_R'(-j) through the functional equation.
double riemann_zeta_deriv_neg_int(int j);

BesselLogPair bessel_log(double nu, double x, const Accuracy& acc = {});

// int_0^c u^(j-1) lnGamma(D/2 + sign*u) du, oriented when c < 0.
double lngamma_moment_integral(int j, double c, int D, int sign);

}  // namespace casimir
