/*
Copyright 2026 The lagoc Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

     https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef LAGOC_LINALG_HPP
#define LAGOC_LINALG_HPP

#include "lagoc/types.hpp"

#include <cmath>

namespace lagoc {

/// Determinant from LU with partial pivoting, kept as sign and log|det| so
/// that the sign survives under- and overflow.
struct SignedDeterminant {
  int sign = 0;            ///< -1, 0 or +1
  double log_abs = -HUGE_VAL;

  double value() const;
};

SignedDeterminant lu_determinant(const Mat &a);

/// Numerical rank: column-pivoted QR, counting |R_ii| > rel_tol * ||a||_F.
int numerical_rank(const Mat &a, double rel_tol);

/// Solves a * x = b for symmetric-or-not square a; throws SingularHessian
/// when the partial-pivot LU hits an exact zero or a pivot below
/// 1e-14 * max|a|.
Mat solve_square(const Mat &a, const Mat &b);

} // namespace lagoc

#endif // LAGOC_LINALG_HPP
