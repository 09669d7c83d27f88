// SPDX-License-Identifier: Apache-2.0
// Built with -mavx2 -mfma; only entered after the runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "casimir/lattice.hpp"

namespace casimir::detail {

LatticeSum lattice_avx2(const double* c, int n, double y) {
  const int deg = n - 1;
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d step = _mm256_set1_pd(std::exp(-4.0 * y));
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  __m256d e = _mm256_setzero_pd();
  __m256d pv = _mm256_set_pd(4.0, 3.0, 2.0, 1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  long p0 = 1;
  long blocks = 0;
  alignas(32) double lanes[4];
  for (;; p0 += 4, ++blocks) {
    if (blocks % kAnchor == 0) {
      for (int l = 0; l < 4; ++l) lanes[l] = std::exp(-static_cast<double>(p0 + l) * y);
      e = _mm256_load_pd(lanes);
    }
    const __m256d z = _mm256_mul_pd(pv, vy);
    __m256d q = _mm256_set1_pd(c[deg]);
    for (int r = deg - 1; r >= 0; --r) q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(c[r]));
    const __m256d t = _mm256_mul_pd(q, e);
    acc = _mm256_add_pd(acc, t);
    e = _mm256_mul_pd(e, step);
    pv = _mm256_add_pd(pv, four);

    _mm256_store_pd(lanes, _mm256_andnot_pd(sign_mask, t));
    const double tmax = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
    alignas(32) double a[4];
    _mm256_store_pd(a, acc);
    const double total = std::fabs((a[0] + a[1]) + (a[2] + a[3]));
    const double zlo = static_cast<double>(p0) * y;
    if (zlo > deg && (tmax <= 1e-18 * total || tmax == 0.0)) break;
    if (zlo > 800.0) break;
  }
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  return {(a[0] + a[1]) + (a[2] + a[3]), (blocks + 1) * 4};
}

}  // namespace casimir::detail
