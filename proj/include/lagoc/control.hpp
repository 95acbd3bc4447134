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

#ifndef LAGOC_CONTROL_HPP
#define LAGOC_CONTROL_HPP

#include "lagoc/extremal.hpp"
#include "lagoc/lagrangian.hpp"
#include "lagoc/problem.hpp"

#include <string>
#include <vector>

namespace lagoc {

struct ControlSolveOptions {
  double tol = 1e-12; ///< absolute, on ||dL/du||_inf
  int max_iter = 50;
};

struct ControlSolution {
  Vec u;
  int iterations = 0;
  double residual = 0.0;
};

/// Newton on dL/du(y, ydot, u) = 0 starting from pt.u. Stops when the
/// residual is within tol or the step falls to rounding level.
/// Throws MaxIterations or SingularHessian.
ControlSolution eliminate_control(const SecondOrderOcp &p,
                                  const ExtendedPoint &pt,
                                  const ControlSolveOptions &opts = {});

/// Coefficients of du = du_dy * dy + du_dydot * dydot obtained by
/// differentiating the optimality equation; each is m x 2nq.
struct ControlSensitivity {
  Mat du_dy, du_dydot;
};

ControlSensitivity control_sensitivity(const SecondOrderOcp &p,
                                       const ExtendedPoint &pt);

/// Extremal state at t with the control re-eliminated from the dense state,
/// warm-started from the nearest stored node control.
struct ExtremalSample {
  ElState state;
  Vec u;
};

ExtremalSample sample_extremal(const SecondOrderOcp &p, const Extremal &ex,
                               double t);

enum class LegendreVerdict { strong, weak_only, violated };

std::string to_string(LegendreVerdict v);

struct LegendreReport {
  std::vector<double> grid;
  std::vector<double> min_eig; ///< smallest eigenvalue of -sym(L_uu)
  double overall_min = 0.0;
  double margin = 1e-9;
  LegendreVerdict verdict = LegendreVerdict::strong;
};

/// Smallest eigenvalue of -(L_uu + L_uu')/2 at a single point.
double legendre_min_eigenvalue(const SecondOrderOcp &p,
                               const ExtendedPoint &pt);

/// Strong iff overall_min > margin, violated iff overall_min < -margin.
/// n_samples == 0 selects the extremal's output sample count.
LegendreReport legendre_check(const SecondOrderOcp &p, const Extremal &ex,
                              double margin = 1e-9,
                              std::size_t n_samples = 0);

} // namespace lagoc

#endif // LAGOC_CONTROL_HPP
