// SPDX-License-Identifier: Apache-2.0
#include "casimir/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace casimir {

namespace detail {

// Reference path: identical block/lane schedule to the AVX2 kernel.
LatticeSum lattice_scalar(const double* c, int n, double y) {
  const int deg = n - 1;
  double acc[4] = {0, 0, 0, 0};
  double e[4], step = std::exp(-4.0 * y);
  long p0 = 1;
  long blocks = 0;
  for (;; p0 += 4, ++blocks) {
    if (blocks % kAnchor == 0)
      for (int l = 0; l < 4; ++l) e[l] = std::exp(-static_cast<double>(p0 + l) * y);
    double tmax = 0.0;
    for (int l = 0; l < 4; ++l) {
      const double z = static_cast<double>(p0 + l) * y;
      double q = c[deg];
      for (int r = deg - 1; r >= 0; --r) q = std::fma(q, z, c[r]);
      const double t = q * e[l];
      acc[l] += t;
      tmax = std::fmax(tmax, std::fabs(t));
      e[l] *= step;
    }
    const double zlo = static_cast<double>(p0) * y;
    const double total = std::fabs((acc[0] + acc[1]) + (acc[2] + acc[3]));
    if (zlo > deg && (tmax <= 1e-18 * total || tmax == 0.0)) break;
    if (zlo > 800.0) break;
  }
  return {(acc[0] + acc[1]) + (acc[2] + acc[3]), (blocks + 1) * 4};
}

}  // namespace detail

SimdPath detected_simd_path() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return SimdPath::Avx2;
#endif
  return SimdPath::Scalar;
}

SimdPath active_simd_path() {
  static const SimdPath p = [] {
    const char* env = std::getenv("CASIMIR_SIMD");
    if (env && std::string_view(env) == "scalar") return SimdPath::Scalar;
    return detected_simd_path();
  }();
  return p;
}

const char* to_string(SimdPath p) { return p == SimdPath::Avx2 ? "avx2" : "scalar"; }

LatticeSum poly_exp_lattice_sum(std::span<const double> coeffs, double y, SimdPath path) {
  if (!(y > 0.0)) throw std::domain_error("poly_exp_lattice_sum: y must be > 0");
  if (coeffs.empty()) return {};
  const int n = static_cast<int>(coeffs.size());
  if (path == SimdPath::Avx2) {
    if (detected_simd_path() != SimdPath::Avx2) throw std::runtime_error("AVX2 path not supported on this CPU");
    return detail::lattice_avx2(coeffs.data(), n, y);
  }
  return detail::lattice_scalar(coeffs.data(), n, y);
}

LatticeSum poly_exp_lattice_sum(std::span<const double> coeffs, double y) {
  return poly_exp_lattice_sum(coeffs, y, active_simd_path());
}

}  // namespace casimir
