// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

namespace casimir {

enum class SimdPath { Scalar, Avx2 };

// Sum over p >= 1 of Q(p y) exp(-p y), Q given by ascending coefficients.
// Four interleaved lanes step exp(-p y) by exp(-4y) and re-anchor with a
// fresh exp every kAnchor blocks, so both paths see the same rounding pattern.
struct LatticeSum {
  double value = 0.0;
  long terms = 0;
};

LatticeSum poly_exp_lattice_sum(std::span<const double> coeffs, double y, SimdPath path);
LatticeSum poly_exp_lattice_sum(std::span<const double> coeffs, double y);  // dispatched

SimdPath detected_simd_path();
// CASIMIR_SIMD=scalar forces the reference path.
SimdPath active_simd_path();
const char* to_string(SimdPath p);

namespace detail {
inline constexpr int kAnchor = 16;
LatticeSum lattice_scalar(const double* c, int n, double y);
LatticeSum lattice_avx2(const double* c, int n, double y);
}  // namespace detail

}  // namespace casimir
