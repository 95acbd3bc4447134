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
#include "lagoc/hamiltonian.hpp"
#include "lagoc/registry.hpp"
#include "lagoc/shooting.hpp"

#include "oracles.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace lagoc;

namespace {

Vec v1(double x) { return Vec::Constant(1, x); }
Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

SecondOrderOcp rest_to_rest() {
  BoundaryData b{v1(0.4), v1(0), v1(0.4), v1(0), 1.0};
  return double_integrator().with_boundary(b);
}

} // namespace

TEST(ShootResidual, DoubleIntegratorOptimum) {
  EXPECT_LE(shoot_residual(double_integrator(), v2(6, -12)).cwiseAbs().maxCoeff(),
            1e-9);
}

TEST(ShootResidual, ZeroCovector) {
  const Vec r = shoot_residual(double_integrator(), v2(0, 0));
  EXPECT_NEAR(r(0), -1.0, 1e-15);
  EXPECT_NEAR(r(1), 0.0, 1e-15);
}

TEST(ShootResidual, RestToRest) {
  EXPECT_EQ(shoot_residual(rest_to_rest(), v2(0, 0)).norm(), 0.0);
}

TEST(ShootResidual, LqIsAffine) {
  std::mt19937 rng(41);
  const SecondOrderOcp p = to_generic(oracle::random_lq(rng, 2, 1, 1.5));
  IntegratorOptions o;
  o.abs_tol = o.rel_tol = 1e-13;
  const Vec r0 = shoot_residual(p, Vec::Zero(4), o);
  const Vec a = oracle::uniform(rng, 4), b = oracle::uniform(rng, 4);
  const Vec ra = shoot_residual(p, a, o) - r0, rb = shoot_residual(p, b, o) - r0;
  const Vec rab = shoot_residual(p, 2.0 * a - 0.5 * b, o) - r0;
  EXPECT_LE((rab - (2.0 * ra - 0.5 * rb)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Solve, DoubleIntegrator) {
  const SecondOrderOcp p = double_integrator();
  const Extremal ex = solve(p, v2(0, 0));
  EXPECT_NEAR(ex.z(0), 6.0, 1e-6);
  EXPECT_NEAR(ex.z(1), -12.0, 1e-6);
  EXPECT_NEAR(ex.cost, 6.0, 1e-6);
  EXPECT_LE(ex.iterations, 10);
  for (double t : ex.uniform_grid(100))
    EXPECT_NEAR(ex.state_at(t).q(0), 3 * t * t - 2 * t * t * t, 1e-6);
}

TEST(Solve, Invariants) {
  const SecondOrderOcp p = forced_pendulum();
  const Extremal ex = solve(p);
  EXPECT_LE(ex.residual, 1e-9);
  const ElState s0 = ex.state_at(0.0);
  EXPECT_EQ(s0.q(0), p.boundary().q0(0));
  EXPECT_EQ(s0.qdot(0), p.boundary().v0(0));
  for (std::size_t i = 0; i < ex.trajectory.size(); ++i) {
    const ElState s = ElState::unpack(ex.trajectory.states()[i], 1);
    const PhasePoint x = costate_from_lagrangian(p, s, ex.controls[i]);
    EXPECT_LE(std::abs(optimality_residual(p, x, ex.controls[i])(0)), 1e-10);
  }
}

TEST(Solve, RestToRestTrivial) {
  const Extremal ex = solve(rest_to_rest());
  EXPECT_LE(ex.z.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(ex.cost, 0.0, 1e-14);
}

TEST(Solve, LqMatchesMatrixExponential) {
  std::mt19937 rng(42);
  for (int k = 0; k < 5; ++k) {
    const int nq = 1 + k % 2;
    const LqProblem lq = oracle::random_lq(rng, nq, 1, 1.0);
    const SecondOrderOcp p = to_generic(lq);
    const Extremal ex = solve(p);
    const oracle::LqSolution ref = oracle::lq_exact(lq);
    EXPECT_LE((ex.z - ref.z).cwiseAbs().maxCoeff(), 1e-8 * (1 + ref.z.norm()));
    EXPECT_NEAR(ex.cost, ref.cost, 1e-8 * (1 + std::abs(ref.cost)));
  }
}

TEST(Solve, VariationalJacobianAgrees) {
  ShootingOptions o;
  o.jacobian = ShootingJacobian::variational;
  const SecondOrderOcp p = forced_pendulum();
  const Extremal a = solve(p, std::nullopt, o);
  const Extremal b = solve(p);
  EXPECT_LE((a.z - b.z).cwiseAbs().maxCoeff(), 1e-8);
  // At the solution the two Jacobians coincide to FD accuracy.
  const Mat Jv = variational_shooting_jacobian(p, b.z, o);
  const Mat Jf = fd_jacobian([&](const Vec &z) { return shoot_residual(p, z); },
                             b.z, 1e-6);
  EXPECT_LE((Jv - Jf).cwiseAbs().maxCoeff(), 1e-6 * (1 + Jf.norm()));
}

TEST(Solve, LinearizedWarmStart) {
  ShootingOptions o;
  o.warm_start = WarmStart::linearized;
  const Extremal ex = solve(double_integrator(), std::nullopt, o);
  EXPECT_LE(ex.iterations, 1);
  // For a pendulum the warm start is already close.
  const SecondOrderOcp p = forced_pendulum();
  const Vec z = linearized_warm_start(p, o);
  EXPECT_LE((z - solve(p).z).norm(), 0.5);
}

TEST(Solve, NoConvergenceCarriesHistory) {
  ShootingOptions o;
  o.max_iter = 1;
  BoundaryData b = forced_pendulum().boundary();
  b.qT = v1(3.0);
  try {
    solve(forced_pendulum().with_boundary(b), std::nullopt, o);
    FAIL() << "expected NoConvergence";
  } catch (const NoConvergence &e) {
    EXPECT_FALSE(e.residual_history().empty());
    EXPECT_EQ(e.best_iterate().size(), 2);
    EXPECT_GT(e.best_residual(), 0.0);
  }
}

TEST(Solve, HamiltonianReintegrationReproducesState) {
  const SecondOrderOcp p = forced_pendulum();
  const Extremal ex = solve(p);
  const PhaseSample s0 = phase_sample(p, ex, 0.0);
  Vec warm = s0.u;
  VectorField f = [&](double, const Vec &x) -> Vec {
    const ReducedRate r = reduced_rhs(p, PhasePoint::unpack(x, 1), warm);
    warm = r.u;
    return r.rate.pack();
  };
  const auto h = integrate(f, s0.point.pack(), 0.0, p.boundary().T);
  for (double t : ex.uniform_grid(500)) {
    const ElState s = ex.state_at(t);
    EXPECT_NEAR(h(t)(0), s.q(0), 1e-6);
    EXPECT_NEAR(h(t)(1), s.qdot(0), 1e-6);
  }
}

TEST(Cost, GridInvariant) {
  const SecondOrderOcp p = forced_pendulum();
  const Extremal ex = solve(p);
  EXPECT_NEAR(cost(p, ex, 1000), cost(p, ex, 2000), 1e-8);
}
