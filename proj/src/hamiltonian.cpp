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

#include "lagoc/hamiltonian.hpp"
#include "lagoc/control.hpp"
#include "lagoc/lagrangian.hpp"
#include "lagoc/linalg.hpp"

namespace lagoc {

double eval_hamiltonian(const SecondOrderOcp &p, const PhasePoint &pt,
                        const Vec &u) {
  const Vec f = p.dynamics().value(pt.q, pt.v, u);
  return pt.lambda_q.dot(pt.v) + pt.lambda_v.dot(f) +
         NormalMultiplier::value * p.cost().scalar(pt.q, pt.v, u);
}

PhasePoint pmp_rhs(const SecondOrderOcp &p, const PhasePoint &pt,
                   const Vec &u) {
  const FirstPartials jf = p.dynamics().partials(pt.q, pt.v, u);
  const FirstPartials jc = p.cost().partials(pt.q, pt.v, u);
  const double l0 = NormalMultiplier::value;
  PhasePoint r;
  r.q = pt.v;
  r.v = p.dynamics().value(pt.q, pt.v, u);
  r.lambda_q = -(jf.dq.transpose() * pt.lambda_v + l0 * jc.dq.row(0).transpose());
  r.lambda_v = -(pt.lambda_q + jf.dv.transpose() * pt.lambda_v +
                 l0 * jc.dv.row(0).transpose());
  return r;
}

Vec optimality_residual(const SecondOrderOcp &p, const PhasePoint &pt,
                        const Vec &u) {
  const FirstPartials jf = p.dynamics().partials(pt.q, pt.v, u);
  const FirstPartials jc = p.cost().partials(pt.q, pt.v, u);
  return jf.du.transpose() * pt.lambda_v +
         NormalMultiplier::value * jc.du.row(0).transpose();
}

ReducedRate reduced_rhs(const SecondOrderOcp &p, const PhasePoint &pt,
                        const Vec &u_init) {
  // The optimality equation dH/du = 0 coincides with dL/du = 0 once
  // kappa = lambda_v, so the Lagrangian-side elimination is reused.
  ExtendedPoint ep{pt.q, pt.lambda_v, pt.v, Vec::Zero(pt.q.size()), u_init};
  const Vec u = eliminate_control(p, ep).u;
  return {pmp_rhs(p, pt, u), u};
}

HamiltonianHessian hamiltonian_hessian(const SecondOrderOcp &p,
                                       const PhasePoint &pt, const Vec &u) {
  const int nq = p.dims().nq;
  const int m = p.dims().m;
  const FirstPartials jf = p.dynamics().partials(pt.q, pt.v, u);
  const SecondPartials lf =
      p.dynamics().second_partials(pt.q, pt.v, u, pt.lambda_v);
  const SecondPartials hc = p.cost().second_partials(
      pt.q, pt.v, u, Vec::Constant(1, NormalMultiplier::value));

  // Index offsets of q, v, lambda_q, lambda_v in w.
  const int iq = 0, iv = nq, ilq = 2 * nq, ilv = 3 * nq;
  HamiltonianHessian h;
  h.ww = Mat::Zero(4 * nq, 4 * nq);
  h.ww.block(iq, iq, nq, nq) = lf.qq + hc.qq;
  h.ww.block(iq, iv, nq, nq) = lf.qv + hc.qv;
  h.ww.block(iv, iq, nq, nq) = (lf.qv + hc.qv).transpose();
  h.ww.block(iv, iv, nq, nq) = lf.vv + hc.vv;
  h.ww.block(iv, ilq, nq, nq) = Mat::Identity(nq, nq);
  h.ww.block(ilq, iv, nq, nq) = Mat::Identity(nq, nq);
  h.ww.block(iq, ilv, nq, nq) = jf.dq.transpose();
  h.ww.block(ilv, iq, nq, nq) = jf.dq;
  h.ww.block(iv, ilv, nq, nq) = jf.dv.transpose();
  h.ww.block(ilv, iv, nq, nq) = jf.dv;

  h.wu = Mat::Zero(4 * nq, m);
  h.wu.block(iq, 0, nq, m) = lf.qu + hc.qu;
  h.wu.block(iv, 0, nq, m) = lf.vu + hc.vu;
  h.wu.block(ilv, 0, nq, m) = jf.du;
  h.uu = lf.uu + hc.uu;
  return h;
}

Mat reduced_hamiltonian_hessian(const SecondOrderOcp &p, const PhasePoint &pt,
                                const Vec &u) {
  const HamiltonianHessian h = hamiltonian_hessian(p, pt, u);
  return h.ww - h.wu * solve_square(h.uu, h.wu.transpose());
}

namespace {

Mat symplectic_times(const Mat &hess, int nq) {
  const int n = 2 * nq;
  Mat out(2 * n, 2 * n);
  out.topRows(n) = hess.bottomRows(n);
  out.bottomRows(n) = -hess.topRows(n);
  return out;
}

} // namespace

Mat reduced_variational_matrix(const SecondOrderOcp &p, const PhasePoint &pt,
                               const Vec &u) {
  return symplectic_times(reduced_hamiltonian_hessian(p, pt, u), p.dims().nq);
}

PhaseSample phase_sample(const SecondOrderOcp &p, const Extremal &ex,
                         double t) {
  const ExtremalSample s = sample_extremal(p, ex, t);
  return {costate_from_lagrangian(p, s.state, s.u), s.u};
}

PhasePoint reduced_variational_rhs(const SecondOrderOcp &p, const Extremal &ex,
                                   double t, const PhasePoint &delta) {
  const PhaseSample s = phase_sample(p, ex, t);
  const Vec rate =
      reduced_variational_matrix(p, s.point, s.u) * delta.pack();
  return PhasePoint::unpack(rate, p.dims().nq);
}

double variational_residual(const SecondOrderOcp &p, const PhasePoint &pt,
                            const Vec &u, const PhasePoint &delta,
                            const PhasePoint &delta_rate) {
  const HamiltonianHessian h = hamiltonian_hessian(p, pt, u);
  const Vec dw = delta.pack();
  const Vec du = -solve_square(h.uu, h.wu.transpose() * dw);
  const Vec grad = h.ww * dw + h.wu * du;
  const Vec expected = symplectic_times(grad, p.dims().nq);
  return (delta_rate.pack() - expected).lpNorm<Eigen::Infinity>();
}

ExtendedPhasePoint tulczyjew_map(const ExtendedPoint &pt) {
  return {{pt.q, pt.vq, pt.vkappa, pt.kappa}, pt.u};
}

ExtendedPoint tulczyjew_inverse(const ExtendedPhasePoint &pt) {
  const PhasePoint &x = pt.point;
  return {x.q, x.lambda_v, x.v, x.lambda_q, pt.u};
}

PhasePoint costate_from_lagrangian(const SecondOrderOcp &p,
                                   const ElState &s, const Vec &u) {
  const FirstPartials jf = p.dynamics().partials(s.q, s.qdot, u);
  const FirstPartials jc = p.cost().partials(s.q, s.qdot, u);
  PhasePoint pt;
  pt.q = s.q;
  pt.v = s.qdot;
  pt.lambda_v = s.kappa;
  pt.lambda_q =
      jc.dv.row(0).transpose() - jf.dv.transpose() * s.kappa - s.kappadot;
  return pt;
}

ElState lagrangian_from_costate(const SecondOrderOcp &p, const PhasePoint &pt,
                                const Vec &u) {
  const FirstPartials jf = p.dynamics().partials(pt.q, pt.v, u);
  const FirstPartials jc = p.cost().partials(pt.q, pt.v, u);
  ElState s;
  s.q = pt.q;
  s.qdot = pt.v;
  s.kappa = pt.lambda_v;
  s.kappadot =
      jc.dv.row(0).transpose() - jf.dv.transpose() * pt.lambda_v - pt.lambda_q;
  return s;
}

PhasePoint costate_variation(const SecondOrderOcp &p, const ElState &state,
                             const Vec &u, const ElState &delta) {
  const int nq = p.dims().nq;
  const ExtendedPoint pt = state.with_control(u);
  const LagrangianHessianBlocks b = hessian_blocks(p, pt);
  const ControlSensitivity sens = control_sensitivity(p, pt);
  Vec dy(2 * nq), dyd(2 * nq);
  dy << delta.q, delta.kappa;
  dyd << delta.qdot, delta.kappadot;
  const Vec du = sens.du_dy * dy + sens.du_dydot * dyd;
  // lambda_q = -dL/dv_q: rows 0..nq-1 of the ydot-indexed blocks.
  const Vec d_momentum = b.yydot.leftCols(nq).transpose() * dy +
                         b.ydotydot.topRows(nq) * dyd +
                         b.ydotu.topRows(nq) * du;
  PhasePoint out;
  out.q = delta.q;
  out.v = delta.qdot;
  out.lambda_q = -d_momentum;
  out.lambda_v = delta.kappa;
  return out;
}

ElState lagrangian_variation(const SecondOrderOcp &p, const ElState &state,
                             const Vec &u, const PhasePoint &delta) {
  // dlambda_q depends on dkappadot only through the identity block
  // d^2L/dv_q dv_kappa = I, and du does not depend on dkappadot.
  ElState d{delta.q, delta.v, delta.lambda_v, Vec::Zero(delta.q.size())};
  const PhasePoint partial = costate_variation(p, state, u, d);
  d.kappadot = partial.lambda_q - delta.lambda_q;
  return d;
}

} // namespace lagoc
