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

#ifndef LAGOC_LAGRANGIAN_HPP
#define LAGOC_LAGRANGIAN_HPP

#include "lagoc/extremal.hpp"
#include "lagoc/problem.hpp"
#include "lagoc/state.hpp"

#include <functional>

namespace lagoc {

/// Second derivatives of the control Lagrangian
///   L(q, kappa, v_q, v_kappa, u) = v_kappa' v_q + kappa' f(q, v_q, u)
///                                  - C(q, v_q, u)
/// with y = (q, kappa) and ydot = (v_q, v_kappa). Entry (i, j) of `yydot` is
/// d^2 L / dy_i dydot_j, and likewise for the mixed control blocks.
struct LagrangianHessianBlocks {
  Mat yy, yydot, ydotydot, yu, ydotu, uu;
};

/// Hessian blocks of the reduced Lagrangian L(y, ydot, u*(y, ydot)), formed
/// by Schur complement against the control block.
struct ReducedLagrangianBlocks {
  Mat yy, yydot, ydotydot;
};

struct ElAcceleration {
  Vec qddot, kappaddot;
};

double eval_lagrangian(const SecondOrderOcp &p, const ExtendedPoint &pt);

/// dL/du, the left side of the optimality equation dL/du = 0.
Vec lagrangian_control_gradient(const SecondOrderOcp &p,
                                const ExtendedPoint &pt);

LagrangianHessianBlocks hessian_blocks(const SecondOrderOcp &p,
                                       const ExtendedPoint &pt);

/// Throws SingularHessian if the control block is not invertible.
ReducedLagrangianBlocks reduce_blocks(const LagrangianHessianBlocks &b);

/// Explicit Euler-Lagrange right-hand side
///   qddot = f,
///   kappaddot = d/dt[C_qdot - f_qdot' kappa] - C_q + f_q' kappa,
/// with the total derivative expanded by the chain rule. `u` must solve the
/// optimality equation at `state`; its rate comes from the control
/// sensitivity.
ElAcceleration el_rhs(const SecondOrderOcp &p, const ElState &state,
                      const Vec &u);

/// Conserved quantity of the autonomous Euler-Lagrange flow, signed so that
/// it equals the Pontryagin Hamiltonian under the costate identification:
///   E = L - <dL/dydot, ydot>.
double energy(const SecondOrderOcp &p, const ElState &state, const Vec &u);

/// Matrix M(t) of the Jacobi equation written as a first-order system in
/// (dq, dqdot, dkappa, dkappadot): d/dt(delta) = M(t) delta.
///
/// The Jacobi equation is the linearisation of d/dt(dL/dydot) = dL/dy for
/// the reduced Lagrangian:
///   dydd = P_vv^{-1} [ (P_yy - d/dt P_vy) dy + (P_yv - P_vy - d/dt P_vv) dyd ].
/// The time derivatives of the reduced blocks are taken as symmetric
/// directional differences along the extremal tangent, so only second
/// derivatives of f and C are required. For time-invariant blocks (LQ) they
/// vanish exactly.
Mat jacobi_matrix(const SecondOrderOcp &p, const Extremal &ex, double t);

ElAcceleration reduced_jacobi_rhs(const SecondOrderOcp &p, const Extremal &ex,
                                  double t, const ElState &delta);

/// A variation (dq, dqdot, du) along an extremal.
struct VariationPath {
  std::function<Vec(double)> dq, dqdot, du;
};

/// Second variation of the frozen-multiplier augmented functional
///   -int (dx, du)' Hess_{(x,u)} L (dx, du) dt,  x = (q, qdot),
/// by composite Simpson on a uniform grid with `n_intervals` (even) cells;
/// 0 selects max(2000, extremal output samples). Throws InvalidVariation if
/// dq, dqdot do not vanish at both ends.
double second_variation(const SecondOrderOcp &p, const Extremal &ex,
                        const VariationPath &var, std::size_t n_intervals = 0);

} // namespace lagoc

#endif // LAGOC_LAGRANGIAN_HPP
