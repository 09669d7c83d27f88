// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/exactnum.hpp"
#include "casimir/heatkernel.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

struct Truncation {
  int N = 0;              // Debye order of the Bessel band; 0 selects ceil(D/2)
  long l_max = 200000;    // cap on thermally summed modes
  long p_max = 2000000;   // cap on directly summed Matsubara terms per mode
  int l_split = 12;       // modes below this use Bessel-exact remainders
  int n_high = 8;         // Debye order above the split
};

struct ThermalConfig {
  int dimension = 3;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double aT = 1.0;
  double a_mu = 1.0;
  // converged when the tail estimate is <= max(acc.rel_tol |aE|, abs_tol)
  double abs_tol = 1e-10;
  Truncation truncation;
  Accuracy acc;

  void validate() const;
};

struct FreeEnergyDiagnostics {
  long l_used = 0;
  long p_used = 0;
  std::vector<std::pair<std::string, double>> tail_estimates;
  double tail = 0.0;  // sum of |tail_estimates|
  bool converged = true;
};

struct FreeEnergyResult {
  double e_ren = 0.0;
  double e_mu_indep = 0.0;
  double e_asym = 0.0;           // ln(aT) and constant terms with c_{D+1}/sqrt(2 pi)
  double e_asym_2sqrtpi = 0.0;   // same terms with c_{D+1}/(2 sqrt(pi))
  FreeEnergyDiagnostics diagnostics;
};

// a E^asym = t_log_t * aT ln(aT) + t * aT + log_t * ln(aT) + constant
struct AsymptoticCoeffs {
  Rational t_log_t;  // exactly -c_D
  double t = 0.0;
  double log_t = 0.0;
  double constant = 0.0;

  double eval(double aT) const;
};

AsymptoticCoeffs asymptotic_coeffs(int D, BoundaryCondition bc);

// Derivative at s = 0 of the Debye-subtracted remainder for one mode nu at
// argument x = a m, subtracting orders 1..N. Dirichlet-type when c is empty.
class BPrimeEvaluator {
 public:
  BPrimeEvaluator(std::optional<Rational> c, int N, int max_order = 12);

  double operator()(double nu, double x) const;
  // Large-argument / large-order form: -2 sum_{i=N+1}^{M} E_{2i}(t)/nu^(2i)
  double asymptotic(double nu, double x) const;
  // sum_{p > P} value(nu, h p) from the asymptotic form
  double lattice_tail(double nu, double h, long P) const;
  // Above this order the truncated uniform expansion beats the Bessel route,
  // whose log(I K) cancellation leaves ~1e-15 absolute noise.
  static constexpr double kUniformOrder = 12.0;
  // crossover to the asymptotic form
  double x_switch(double nu) const { return nu > 5.0 ? 4.0 * nu : 20.0; }

  int order() const { return N_; }
  int max_order() const { return M_; }
  bool robin() const { return robin_; }
  double c() const { return c_; }

 private:
  int N_, M_;
  bool robin_;
  double c_ = 0.0;
  std::vector<std::vector<double>> e_;     // e_[i][k], i = 1..M
  std::vector<std::vector<double>> e_lo_;  // e_ + e_lo_ carries ~106 bits
};

double bprime_remainder(std::optional<Rational> c, double nu, double x, int N);

// Bessel-K remainders of the thermal Epstein-type sums; c = 2 pi aT.
double xi_regular(double s, int alpha, double chi, double c, const Accuracy& acc = {});
double x_regular(double s, int D, double aT, const Accuracy& acc = {});

// Precomputed per (D, bc, truncation); immutable and shareable across threads.
class ThermalModel;
std::shared_ptr<const ThermalModel> thermal_model(int D, BoundaryCondition bc, const Truncation& tr);

FreeEnergyResult casimir_free_energy(const ThermalConfig& cfg);

}  // namespace casimir
