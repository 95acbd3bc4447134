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

#include "lagoc/control.hpp"
#include "lagoc/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

namespace lagoc {

ControlSolution eliminate_control(const SecondOrderOcp &p,
                                  const ExtendedPoint &pt,
                                  const ControlSolveOptions &opts) {
  ExtendedPoint cur = pt;
  ControlSolution sol;
  for (int it = 0;; ++it) {
    const Vec r = lagrangian_control_gradient(p, cur);
    sol.residual = r.lpNorm<Eigen::Infinity>();
    if (sol.residual <= opts.tol) {
      sol.u = cur.u;
      sol.iterations = it;
      return sol;
    }
    if (it >= opts.max_iter)
      throw MaxIterations("control elimination: no convergence after " +
                          std::to_string(opts.max_iter) +
                          " iterations, residual " +
                          sci(sol.residual));
    const Mat luu = hessian_blocks(p, cur).uu;
    const Vec step = solve_square(luu, r);
    cur.u -= step;
    if (!cur.u.allFinite())
      throw NonFiniteError("control elimination: non-finite iterate");
    // A step at rounding level means the residual has reached its floor.
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (step.lpNorm<Eigen::Infinity>() <=
        8 * eps * (1.0 + cur.u.lpNorm<Eigen::Infinity>())) {
      sol.u = cur.u;
      sol.iterations = it + 1;
      sol.residual =
          lagrangian_control_gradient(p, cur).lpNorm<Eigen::Infinity>();
      return sol;
    }
  }
}

ControlSensitivity control_sensitivity(const SecondOrderOcp &p,
                                       const ExtendedPoint &pt) {
  const LagrangianHessianBlocks b = hessian_blocks(p, pt);
  ControlSensitivity s;
  s.du_dy = -solve_square(b.uu, b.yu.transpose());
  s.du_dydot = -solve_square(b.uu, b.ydotu.transpose());
  return s;
}

ExtremalSample sample_extremal(const SecondOrderOcp &p, const Extremal &ex,
                               double t) {
  ExtremalSample s;
  s.state = ex.state_at(t);
  s.u = eliminate_control(p, s.state.with_control(ex.control_hint(t))).u;
  return s;
}

std::string to_string(LegendreVerdict v) {
  switch (v) {
  case LegendreVerdict::strong:
    return "strong";
  case LegendreVerdict::weak_only:
    return "weak-only";
  case LegendreVerdict::violated:
    return "violated";
  }
  return "unknown";
}

double legendre_min_eigenvalue(const SecondOrderOcp &p,
                               const ExtendedPoint &pt) {
  const Mat luu = hessian_blocks(p, pt).uu;
  const Mat sym = -0.5 * (luu + luu.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

LegendreReport legendre_check(const SecondOrderOcp &p, const Extremal &ex,
                              double margin, std::size_t n_samples) {
  LegendreReport rep;
  rep.margin = margin;
  rep.grid = ex.uniform_grid(n_samples == 0 ? ex.output_samples : n_samples);
  rep.min_eig.reserve(rep.grid.size());
  rep.overall_min = std::numeric_limits<double>::infinity();
  for (double t : rep.grid) {
    const ElState s = ex.state_at(t);
    // Elimination may fail exactly where Legendre degenerates; the stored
    // node control is the best available value then.
    Vec u = ex.control_hint(t);
    try {
      u = eliminate_control(p, s.with_control(u)).u;
    } catch (const Error &) {
    }
    const double e = legendre_min_eigenvalue(p, s.with_control(u));
    rep.min_eig.push_back(e);
    rep.overall_min = std::min(rep.overall_min, e);
  }
  if (rep.overall_min > margin)
    rep.verdict = LegendreVerdict::strong;
  else if (rep.overall_min < -margin)
    rep.verdict = LegendreVerdict::violated;
  else
    rep.verdict = LegendreVerdict::weak_only;
  return rep;
}

} // namespace lagoc
