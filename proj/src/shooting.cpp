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

#include "lagoc/shooting.hpp"
#include "lagoc/control.hpp"
#include "lagoc/lagrangian.hpp"

#include <algorithm>
#include <sstream>

namespace lagoc {

namespace {

Vec initial_el_state(const SecondOrderOcp &p, const Vec &z) {
  const int nq = p.dims().nq;
  if (z.size() != 2 * nq)
    throw std::invalid_argument("shooting: z must have length 2*nq");
  const BoundaryData &b = p.boundary();
  Vec y0(4 * nq);
  y0 << b.q0, b.v0, z.head(nq), z.tail(nq);
  return y0;
}

Vec boundary_residual(const SecondOrderOcp &p, const Vec &final_state) {
  const int nq = p.dims().nq;
  const BoundaryData &b = p.boundary();
  Vec r(2 * nq);
  r << final_state.segment(0, nq) - b.qT, final_state.segment(nq, nq) - b.vT;
  return r;
}

Extremal make_extremal(const SecondOrderOcp &p, DenseTrajectory traj,
                       std::vector<Vec> controls, const Vec &z,
                       std::size_t samples) {
  Extremal ex;
  ex.problem_name = p.name();
  ex.nq = p.dims().nq;
  ex.m = p.dims().m;
  ex.trajectory = std::move(traj);
  ex.controls = std::move(controls);
  ex.z = z;
  ex.output_samples = samples;
  return ex;
}

} // namespace

DenseTrajectory integrate_el_flow(const SecondOrderOcp &p,
                                  const Vec &el_state0,
                                  const IntegratorOptions &opts,
                                  std::vector<Vec> *node_controls) {
  const int nq = p.dims().nq;
  // Warm start is owned by this integration: each evaluation starts from
  // the previously eliminated control.
  Vec u_warm = Vec::Zero(p.dims().m);
  VectorField rhs = [&p, nq, u_warm](double, const Vec &y) mutable -> Vec {
    const ElState s = ElState::unpack(y, nq);
    u_warm = eliminate_control(p, s.with_control(u_warm)).u;
    const ElAcceleration a = el_rhs(p, s, u_warm);
    Vec out(4 * nq);
    out << s.qdot, a.qddot, s.kappadot, a.kappaddot;
    return out;
  };
  DenseTrajectory traj = integrate(rhs, el_state0, 0.0, p.boundary().T, opts);
  if (node_controls) {
    node_controls->clear();
    node_controls->reserve(traj.size());
    Vec u = Vec::Zero(p.dims().m);
    for (const Vec &y : traj.states()) {
      u = eliminate_control(p, ElState::unpack(y, nq).with_control(u)).u;
      node_controls->push_back(u);
    }
  }
  return traj;
}

Vec shoot_residual(const SecondOrderOcp &p, const Vec &z,
                   const IntegratorOptions &opts) {
  const DenseTrajectory traj =
      integrate_el_flow(p, initial_el_state(p, z), opts);
  return boundary_residual(p, traj.final_state());
}

Mat variational_shooting_jacobian(const SecondOrderOcp &p, const Vec &z,
                                  const ShootingOptions &opts) {
  const int nq = p.dims().nq;
  std::vector<Vec> controls;
  DenseTrajectory traj =
      integrate_el_flow(p, initial_el_state(p, z), opts.integrator, &controls);
  const Extremal ex =
      make_extremal(p, std::move(traj), std::move(controls), z, 0);
  const double T = p.boundary().T;
  VectorField rhs = [&p, &ex](double t, const Vec &d) -> Vec {
    return jacobi_matrix(p, ex, t) * d;
  };
  Mat jac(2 * nq, 2 * nq);
  for (int i = 0; i < 2 * nq; ++i) {
    Vec d0 = Vec::Zero(4 * nq);
    d0(2 * nq + i) = 1.0; // unit variation of kappa(0) or kappadot(0)
    const DenseTrajectory field = integrate(rhs, d0, 0.0, T, opts.jacobi_integrator);
    jac.col(i) = field.final_state().head(2 * nq);
  }
  return jac;
}

Vec linearized_warm_start(const SecondOrderOcp &p,
                          const ShootingOptions &opts) {
  const int nq = p.dims().nq;
  const int m = p.dims().m;
  const BoundaryData &b = p.boundary();
  const Vec u0 = Vec::Zero(m);
  const Vec f0 = p.dynamics().value(b.q0, b.v0, u0);
  const Mat jf = p.dynamics().jacobian(b.q0, b.v0, u0);
  const double c0 = p.cost().scalar(b.q0, b.v0, u0);
  const Vec gc = p.cost().jacobian(b.q0, b.v0, u0).row(0).transpose();
  const Mat hc = p.cost().weighted_hessian(b.q0, b.v0, u0, Vec::Ones(1));

  Vec x0(2 * nq + m);
  x0 << b.q0, b.v0, u0;
  auto dx = [x0](const Vec &q, const Vec &v, const Vec &u) {
    Vec x(x0.size());
    x << q, v, u;
    return Vec(x - x0);
  };
  DifferentiableMap f_lin(
      nq,
      [=](const Vec &q, const Vec &v, const Vec &u) -> Vec {
        return f0 + jf * dx(q, v, u);
      },
      [=](const Vec &, const Vec &, const Vec &) -> Mat { return jf; },
      [=](const Vec &, const Vec &, const Vec &, const Vec &) -> Mat {
        return Mat::Zero(2 * nq + m, 2 * nq + m);
      });
  DifferentiableMap c_quad(
      1,
      [=](const Vec &q, const Vec &v, const Vec &u) -> Vec {
        const Vec d = dx(q, v, u);
        return Vec::Constant(1, c0 + gc.dot(d) + 0.5 * d.dot(hc * d));
      },
      [=](const Vec &q, const Vec &v, const Vec &u) -> Mat {
        return (gc + hc * dx(q, v, u)).transpose();
      },
      [=](const Vec &, const Vec &, const Vec &, const Vec &w) -> Mat {
        return w(0) * hc;
      });
  const SecondOrderOcp lin(p.name() + ":linearized", p.dims(), c_quad, f_lin,
                           b);
  ShootingOptions inner = opts;
  inner.warm_start = WarmStart::none;
  inner.max_iter = std::min(opts.max_iter, 10);
  try {
    return solve(lin, Vec::Zero(2 * nq), inner).z;
  } catch (const Error &) {
    return Vec::Zero(2 * nq);
  }
}

Extremal solve(const SecondOrderOcp &p, const std::optional<Vec> &z0,
               const ShootingOptions &opts) {
  const ValidationReport rep = validate(p);
  if (!rep.valid()) {
    std::ostringstream os;
    os << "solve: invalid problem:";
    for (const auto &v : rep.violations)
      os << ' ' << v << ';';
    throw std::invalid_argument(os.str());
  }
  const int nq = p.dims().nq;
  Vec z_start = z0 ? *z0
                   : (opts.warm_start == WarmStart::linearized
                          ? linearized_warm_start(p, opts)
                          : Vec::Zero(2 * nq));
  if (z_start.size() != 2 * nq || !z_start.allFinite())
    throw std::invalid_argument("solve: z0 must be finite with length 2*nq");

  const VectorMap F = [&p, &opts](const Vec &z) {
    return shoot_residual(p, z, opts.integrator);
  };
  JacobianMap J;
  if (opts.jacobian == ShootingJacobian::variational)
    J = [&p, &opts](const Vec &z, const Vec &) {
      return variational_shooting_jacobian(p, z, opts);
    };

  NewtonOptions nopt;
  nopt.tol = opts.tol;
  nopt.max_iter = opts.max_iter;
  nopt.fd_step = opts.fd_step;

  NewtonResult nr;
  try {
    nr = newton_solve(F, J, z_start, nopt);
  } catch (const NewtonError &e) {
    const auto &h = e.residual_history();
    const double best = h.empty() ? 0.0 : *std::min_element(h.begin(), h.end());
    throw NoConvergence(std::string("shooting: ") + e.what(), e.best_iterate(),
                        best, h);
  }

  std::vector<Vec> controls;
  DenseTrajectory traj = integrate_el_flow(p, initial_el_state(p, nr.z),
                                           opts.integrator, &controls);
  Extremal ex = make_extremal(p, std::move(traj), std::move(controls), nr.z,
                              opts.output_samples);
  ex.iterations = nr.iterations;
  ex.residual = boundary_residual(p, ex.trajectory.final_state())
                    .lpNorm<Eigen::Infinity>();
  ex.residual_history = nr.history;
  ex.cost = cost(p, ex);
  return ex;
}

double cost(const SecondOrderOcp &p, const Extremal &ex,
            std::size_t n_intervals) {
  std::size_t n = n_intervals == 0
                      ? std::max<std::size_t>(2000, ex.output_samples)
                      : n_intervals;
  if (n % 2 == 1)
    ++n;
  const std::vector<double> grid = ex.uniform_grid(n);
  std::vector<double> c(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ExtremalSample s = sample_extremal(p, ex, grid[i]);
    c[i] = p.cost().scalar(s.state.q, s.state.qdot, s.u);
  }
  return simpson(c, ex.horizon() / static_cast<double>(n));
}

} // namespace lagoc
