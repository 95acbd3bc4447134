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

#include "lagoc/lagrangian.hpp"
#include "lagoc/control.hpp"
#include "lagoc/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace lagoc {

namespace {

/// Derivative data of f and C at one point, contracted against kappa.
struct PointDerivatives {
  Vec f;
  FirstPartials jf;   // f_q, f_v, f_u
  FirstPartials jc;   // C_q, C_v, C_u as 1 x n rows
  SecondPartials kf;  // kappa' d^2 f
  SecondPartials hc;  // d^2 C
};

PointDerivatives derivatives_at(const SecondOrderOcp &p, const Vec &q,
                                const Vec &v, const Vec &kappa, const Vec &u) {
  PointDerivatives d;
  d.f = p.dynamics().value(q, v, u);
  d.jf = p.dynamics().partials(q, v, u);
  d.jc = p.cost().partials(q, v, u);
  d.kf = p.dynamics().second_partials(q, v, u, kappa);
  d.hc = p.cost().second_partials(q, v, u, Vec::Ones(1));
  return d;
}

double max_abs(const Vec &v) {
  return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
}

} // namespace

double eval_lagrangian(const SecondOrderOcp &p, const ExtendedPoint &pt) {
  const Vec f = p.dynamics().value(pt.q, pt.vq, pt.u);
  const double c = p.cost().scalar(pt.q, pt.vq, pt.u);
  return pt.vkappa.dot(pt.vq) + pt.kappa.dot(f) - c;
}

Vec lagrangian_control_gradient(const SecondOrderOcp &p,
                                const ExtendedPoint &pt) {
  const FirstPartials jf = p.dynamics().partials(pt.q, pt.vq, pt.u);
  const FirstPartials jc = p.cost().partials(pt.q, pt.vq, pt.u);
  return jf.du.transpose() * pt.kappa - jc.du.row(0).transpose();
}

LagrangianHessianBlocks hessian_blocks(const SecondOrderOcp &p,
                                       const ExtendedPoint &pt) {
  const int nq = p.dims().nq;
  const int m = p.dims().m;
  const FirstPartials jf = p.dynamics().partials(pt.q, pt.vq, pt.u);
  const SecondPartials kf =
      p.dynamics().second_partials(pt.q, pt.vq, pt.u, pt.kappa);
  const SecondPartials hc =
      p.cost().second_partials(pt.q, pt.vq, pt.u, Vec::Ones(1));
  const Mat I = Mat::Identity(nq, nq);
  const Mat Z = Mat::Zero(nq, nq);

  LagrangianHessianBlocks b;
  b.yy.resize(2 * nq, 2 * nq);
  b.yy << kf.qq - hc.qq, jf.dq.transpose(), jf.dq, Z;
  b.yydot.resize(2 * nq, 2 * nq);
  b.yydot << kf.qv - hc.qv, Z, jf.dv, Z;
  b.ydotydot.resize(2 * nq, 2 * nq);
  b.ydotydot << kf.vv - hc.vv, I, I, Z;
  b.yu.resize(2 * nq, m);
  b.yu << kf.qu - hc.qu, jf.du;
  b.ydotu.resize(2 * nq, m);
  b.ydotu << kf.vu - hc.vu, Mat::Zero(nq, m);
  b.uu = kf.uu - hc.uu;
  return b;
}

ReducedLagrangianBlocks reduce_blocks(const LagrangianHessianBlocks &b) {
  // P_ab = L_ab - L_au L_uu^{-1} L_ub
  const Mat inv_uy = solve_square(b.uu, b.yu.transpose());
  const Mat inv_uv = solve_square(b.uu, b.ydotu.transpose());
  ReducedLagrangianBlocks r;
  r.yy = b.yy - b.yu * inv_uy;
  r.yydot = b.yydot - b.yu * inv_uv;
  r.ydotydot = b.ydotydot - b.ydotu * inv_uv;
  return r;
}

ElAcceleration el_rhs(const SecondOrderOcp &p, const ElState &s,
                      const Vec &u) {
  const PointDerivatives d = derivatives_at(p, s.q, s.qdot, s.kappa, u);
  const Vec &qddot = d.f;

  // Control rate from the differentiated optimality equation. dL/du does
  // not depend on v_kappa, so kappaddot is not needed here.
  const Mat luu = d.kf.uu - d.hc.uu;
  const Mat luq = (d.kf.qu - d.hc.qu).transpose();
  const Mat luv = (d.kf.vu - d.hc.vu).transpose();
  const Mat luk = d.jf.du.transpose();
  const Vec udot =
      -solve_square(luu, luq * s.qdot + luv * qddot + luk * s.kappadot);

  // g = C_qdot - f_qdot' kappa and its partials.
  const Mat g_q = (d.hc.qv - d.kf.qv).transpose();
  const Mat g_v = d.hc.vv - d.kf.vv;
  const Mat g_u = d.hc.vu - d.kf.vu;
  const Mat g_k = -d.jf.dv.transpose();
  const Vec g_dot = g_q * s.qdot + g_v * qddot + g_k * s.kappadot + g_u * udot;

  ElAcceleration acc;
  acc.qddot = qddot;
  acc.kappaddot = g_dot - d.jc.dq.row(0).transpose() +
                  d.jf.dq.transpose() * s.kappa;
  return acc;
}

double energy(const SecondOrderOcp &p, const ElState &s, const Vec &u) {
  const ExtendedPoint pt = s.with_control(u);
  const FirstPartials jf = p.dynamics().partials(s.q, s.qdot, u);
  const FirstPartials jc = p.cost().partials(s.q, s.qdot, u);
  const Vec p_q =
      s.kappadot + jf.dv.transpose() * s.kappa - jc.dv.row(0).transpose();
  const Vec &p_k = s.qdot;
  return eval_lagrangian(p, pt) - (p_q.dot(s.qdot) + p_k.dot(s.kappadot));
}

namespace {

ReducedLagrangianBlocks reduced_at(const SecondOrderOcp &p,
                                   const ExtendedPoint &pt) {
  return reduce_blocks(hessian_blocks(p, pt));
}

ExtendedPoint shifted(const ExtendedPoint &pt, const ExtendedPoint &rate,
                      double h) {
  return {pt.q + h * rate.q, pt.kappa + h * rate.kappa, pt.vq + h * rate.vq,
          pt.vkappa + h * rate.vkappa, pt.u + h * rate.u};
}

} // namespace

Mat jacobi_matrix(const SecondOrderOcp &p, const Extremal &ex, double t) {
  const int nq = p.dims().nq;
  const ExtremalSample smp = sample_extremal(p, ex, t);
  const ExtendedPoint pt = smp.state.with_control(smp.u);
  const ReducedLagrangianBlocks P = reduced_at(p, pt);

  // Tangent of the extremal in (q, kappa, v_q, v_kappa, u).
  const ElAcceleration acc = el_rhs(p, smp.state, smp.u);
  const ControlSensitivity sens = control_sensitivity(p, pt);
  Vec ydd(2 * nq);
  ydd << acc.qddot, acc.kappaddot;
  const Vec udot = sens.du_dy * pt.ydot() + sens.du_dydot * ydd;
  const ExtendedPoint rate{smp.state.qdot, smp.state.kappadot, acc.qddot,
                           acc.kappaddot, udot};

  const double speed = std::max({max_abs(rate.q), max_abs(rate.kappa),
                                 max_abs(rate.vq), max_abs(rate.vkappa),
                                 max_abs(rate.u)});
  const double h = 1e-5 / (1.0 + speed);
  const ReducedLagrangianBlocks Pp = reduced_at(p, shifted(pt, rate, h));
  const ReducedLagrangianBlocks Pm = reduced_at(p, shifted(pt, rate, -h));
  const Mat dP_vy = (Pp.yydot - Pm.yydot).transpose() / (2.0 * h);
  const Mat dP_vv = (Pp.ydotydot - Pm.ydotydot) / (2.0 * h);

  const Mat P_vy = P.yydot.transpose();
  const Mat coeff_y = solve_square(P.ydotydot, P.yy - dP_vy);
  const Mat coeff_v = solve_square(P.ydotydot, P.yydot - P_vy - dP_vv);

  // Reorder from (y, ydot) = (dq, dkappa, dqdot, dkappadot) to the flat
  // layout (dq, dqdot, dkappa, dkappadot).
  const int n = 4 * nq;
  Mat M = Mat::Zero(n, n);
  auto col_of_y = [nq](int k) { return k < nq ? k : 2 * nq + (k - nq); };
  auto col_of_v = [nq](int k) { return k < nq ? nq + k : 3 * nq + (k - nq); };
  for (int k = 0; k < nq; ++k) {
    M(k, nq + k) = 1.0;          // d/dt dq = dqdot
    M(2 * nq + k, 3 * nq + k) = 1.0; // d/dt dkappa = dkappadot
  }
  for (int r = 0; r < 2 * nq; ++r) {
    const int row = r < nq ? nq + r : 3 * nq + (r - nq);
    for (int k = 0; k < 2 * nq; ++k) {
      M(row, col_of_y(k)) += coeff_y(r, k);
      M(row, col_of_v(k)) += coeff_v(r, k);
    }
  }
  return M;
}

ElAcceleration reduced_jacobi_rhs(const SecondOrderOcp &p, const Extremal &ex,
                                  double t, const ElState &delta) {
  const int nq = p.dims().nq;
  const Vec rate = jacobi_matrix(p, ex, t) * delta.pack();
  return {rate.segment(nq, nq), rate.segment(3 * nq, nq)};
}

double second_variation(const SecondOrderOcp &p, const Extremal &ex,
                        const VariationPath &var, std::size_t n_intervals) {
  const int nq = p.dims().nq;
  const double t0 = ex.trajectory.t0(), t1 = ex.trajectory.t_end();
  constexpr double kEndTol = 1e-10;
  for (double te : {t0, t1}) {
    if (max_abs(var.dq(te)) > kEndTol || max_abs(var.dqdot(te)) > kEndTol)
      throw InvalidVariation(
          "second_variation: dq and dqdot must vanish at both endpoints");
  }
  std::size_t n = n_intervals == 0
                      ? std::max<std::size_t>(2000, ex.output_samples)
                      : n_intervals;
  if (n % 2 == 1)
    ++n;
  const std::vector<double> grid = ex.uniform_grid(n);
  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const ExtremalSample smp = sample_extremal(p, ex, t);
    const LagrangianHessianBlocks b =
        hessian_blocks(p, smp.state.with_control(smp.u));
    Vec dx(2 * nq);
    dx << var.dq(t), var.dqdot(t);
    const Vec du = var.du(t);
    Mat lxx(2 * nq, 2 * nq);
    lxx << b.yy.topLeftCorner(nq, nq), b.yydot.topLeftCorner(nq, nq),
        b.yydot.topLeftCorner(nq, nq).transpose(),
        b.ydotydot.topLeftCorner(nq, nq);
    Mat lxu(2 * nq, p.dims().m);
    lxu << b.yu.topRows(nq), b.ydotu.topRows(nq);
    integrand[i] = -(dx.dot(lxx * dx) + 2.0 * dx.dot(lxu * du) +
                     du.dot(b.uu * du));
  }
  return simpson(integrand, (t1 - t0) / static_cast<double>(n));
}

} // namespace lagoc
