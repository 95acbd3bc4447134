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

#ifndef LAGOC_HAMILTONIAN_HPP
#define LAGOC_HAMILTONIAN_HPP

#include "lagoc/extremal.hpp"
#include "lagoc/problem.hpp"
#include "lagoc/state.hpp"

namespace lagoc {

/// The multiplier of the cost in the Pontryagin Hamiltonian. Only the normal
/// case is represented.
struct NormalMultiplier {
  static constexpr double value = -1.0;
};

/// H = lambda_q' v + lambda_v' f(q, v, u) + lambda0 C(q, v, u), lambda0 = -1.
double eval_hamiltonian(const SecondOrderOcp &p, const PhasePoint &pt,
                        const Vec &u);

/// (dH/dlambda_q, dH/dlambda_v, -dH/dq, -dH/dv).
PhasePoint pmp_rhs(const SecondOrderOcp &p, const PhasePoint &pt,
                   const Vec &u);

/// dH/du = f_u' lambda_v - C_u.
Vec optimality_residual(const SecondOrderOcp &p, const PhasePoint &pt,
                        const Vec &u);

struct ReducedRate {
  PhasePoint rate;
  Vec u; ///< eliminated control, reusable as the next warm start
};

/// Vector field of the reduced Hamiltonian: pmp_rhs at u* = u*(x, lambda),
/// with u* found from `u_init`.
ReducedRate reduced_rhs(const SecondOrderOcp &p, const PhasePoint &pt,
                        const Vec &u_init);

/// Hessian of H over w = (q, v, lambda_q, lambda_v) and u.
struct HamiltonianHessian {
  Mat ww, wu, uu;
};

HamiltonianHessian hamiltonian_hessian(const SecondOrderOcp &p,
                                       const PhasePoint &pt, const Vec &u);

/// Second derivatives of the reduced Hamiltonian, H_ww - H_wu H_uu^{-1} H_uw.
Mat reduced_hamiltonian_hessian(const SecondOrderOcp &p, const PhasePoint &pt,
                                const Vec &u);

/// J * Hess(H^r) with J = [[0, I], [-I, 0]]: the matrix of the linearised
/// reduced Hamiltonian system in flat (dq, dv, dlambda_q, dlambda_v) order.
Mat reduced_variational_matrix(const SecondOrderOcp &p, const PhasePoint &pt,
                               const Vec &u);

/// Phase point of the extremal at t under the costate identification.
struct PhaseSample {
  PhasePoint point;
  Vec u;
};

PhaseSample phase_sample(const SecondOrderOcp &p, const Extremal &ex, double t);

PhasePoint reduced_variational_rhs(const SecondOrderOcp &p, const Extremal &ex,
                                   double t, const PhasePoint &delta);

/// Residual of the unreduced variational equations for a candidate field:
/// du is solved from the linearised optimality equation, then the state and
/// adjoint equations are compared against `delta_rate`. Returns the sup-norm.
double variational_residual(const SecondOrderOcp &p, const PhasePoint &pt,
                            const Vec &u, const PhasePoint &delta,
                            const PhasePoint &delta_rate);

/// (q, kappa, v_q, v_kappa, u) -> (q, v_q, v_kappa, kappa, u).
ExtendedPhasePoint tulczyjew_map(const ExtendedPoint &pt);
ExtendedPoint tulczyjew_inverse(const ExtendedPhasePoint &pt);

/// lambda_v = kappa, lambda_q = C_qdot - f_qdot' kappa - kappadot.
PhasePoint costate_from_lagrangian(const SecondOrderOcp &p,
                                   const ElState &state, const Vec &u);

/// Inverse of the identification: kappa = lambda_v,
/// kappadot = C_v - f_v' lambda_v - lambda_q.
ElState lagrangian_from_costate(const SecondOrderOcp &p, const PhasePoint &pt,
                                const Vec &u);

/// Linearised identification at (state, u): maps a Lagrangian variation
/// (dq, dqdot, dkappa, dkappadot) to (dq, dv, dlambda_q, dlambda_v) with
/// dlambda_v = dkappa and dlambda_q = -d(dL/dv_q), the control variation
/// following the control sensitivity.
PhasePoint costate_variation(const SecondOrderOcp &p, const ElState &state,
                             const Vec &u, const ElState &delta);

/// Inverse of costate_variation.
ElState lagrangian_variation(const SecondOrderOcp &p, const ElState &state,
                             const Vec &u, const PhasePoint &delta);

} // namespace lagoc

#endif // LAGOC_HAMILTONIAN_HPP
