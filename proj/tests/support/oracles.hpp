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

// Independent reference computations used by the tests. Nothing here calls
// into the library's integrators, shooting or conjugate-time code.

#ifndef LAGOC_TESTS_ORACLES_HPP
#define LAGOC_TESTS_ORACLES_HPP

#include "lagoc/lq.hpp"

#include <random>

namespace oracle {

using lagoc::Mat;
using lagoc::Vec;

/// First positive root of cos t cosh t = 1 by scalar bisection.
double beam_conjugate_time();

/// Hamiltonian system matrix of an LQ problem, written out from the data
/// (q' = v, v' = A1 q + A2 v + B R^-1 B' lv, lq' = Q1 q - A1' lv,
///  lv' = Q2 v - lq - A2' lv).
Mat lq_hamiltonian_matrix(const lagoc::LqProblem &lq);

struct LqSolution {
  Vec z;       ///< (kappa(0), kappadot(0))
  double cost; ///< J
};

/// Solves the LQ two-point boundary problem with the matrix exponential of
/// the Hamiltonian system, and integrates the cost with Van Loan's block
/// exponential.
LqSolution lq_exact(const lagoc::LqProblem &lq);

/// Smallest eigenvalue of the discretized second variation of an LQ problem
///   1/2 int x'Wx x + 2 x'Wxu u + u'Wuu u dt
/// over controls u on N intervals with x' = A x + B u (implicit trapezoid),
/// x(0) = 0 and x(T) = 0 eliminated through an orthonormal nullspace.
double discrete_second_variation_min_eig(const Mat &A, const Mat &B,
                                         const Mat &Wxx, const Mat &Wxu,
                                         const Mat &Wuu, double T, int N);

/// Beam problem second variation (f = u, C = u^2/2 - q^2/2).
double beam_second_variation_min_eig(double T, int N = 200);

/// Random LQ data. Q1 is negative definite so that conjugate times exist.
lagoc::LqProblem random_indefinite_lq(std::mt19937 &rng, int nq, int m,
                                      double T);
/// Random LQ with unrestricted symmetric Q1, Q2.
lagoc::LqProblem random_lq(std::mt19937 &rng, int nq, int m, double T);

Vec uniform(std::mt19937 &rng, int n, double a = -1.0, double b = 1.0);
Mat uniform_matrix(std::mt19937 &rng, int r, int c, double a = -1.0, double b = 1.0);

/// Central difference of a scalar function.
template <class F> double central(F &&f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace oracle

#endif
