// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "casimir/exactnum.hpp"

namespace casimir {

// Coefficients of b_D and h_D as polynomials in nu = l + (D-2)/2.
struct DegeneracySet {
  int dimension = 0;
  std::vector<Rational> y;  // scalar / TM, index j = 0..D-2
  std::vector<Rational> x;  // TE, index j = 0..D-2

  Rational nu_offset() const { return Rational(dimension - 2, 2); }
  double y_at(double nu) const;
  double x_at(double nu) const;
};

// (2l+D-2)(l+D-3)! / ((D-2)! l!)
Rational b_deg(int D, int l);
// l(l+D-2)(2l+D-2)(l+D-4)! / ((D-3)! (l+1)!), l >= 1
Rational h_deg(int D, int l);

DegeneracySet nu_expansion(int D);

}  // namespace casimir
