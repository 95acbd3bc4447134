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
#include "lagoc/lq.hpp"
#include "lagoc/registry.hpp"
#include "lagoc/shooting.hpp"

#include "oracles.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace lagoc;

namespace {

Vec v1(double x) { return Vec::Constant(1, x); }

// f = u with C = u^2/2 + u^4/4.
SecondOrderOcp quartic_effort() {
  DifferentiableMap cost(1, [](const Vec &, const Vec &, const Vec &u) {
    return v1(0.5 * u(0) * u(0) + 0.25 * std::pow(u(0), 4));
  });
  const SecondOrderOcp di = double_integrator();
  return SecondOrderOcp("quartic", Dims{1, 1}, cost, di.dynamics(),
                        di.boundary());
}

// f = u with C = -u^2/2: the control Lagrangian is convex in u.
SecondOrderOcp legendre_violating() {
  DifferentiableMap cost(
      1,
      [](const Vec &, const Vec &, const Vec &u) { return v1(-0.5 * u(0) * u(0)); },
      [](const Vec &, const Vec &, const Vec &u) {
        Mat j(1, 3);
        j << 0, 0, -u(0);
        return j;
      },
      [](const Vec &, const Vec &, const Vec &, const Vec &w) {
        Mat h = Mat::Zero(3, 3);
        h(2, 2) = -w(0);
        return h;
      });
  const SecondOrderOcp di = double_integrator();
  return SecondOrderOcp("concave_effort", Dims{1, 1}, cost, di.dynamics(),
                        di.boundary());
}

ExtendedPoint random_point(std::mt19937 &rng, int nq, int m) {
  return {oracle::uniform(rng, nq), oracle::uniform(rng, nq),
          oracle::uniform(rng, nq), oracle::uniform(rng, nq),
          oracle::uniform(rng, m)};
}

} // namespace

TEST(EliminateControl, LqOneStep) {
  std::mt19937 rng(31);
  const LqProblem lq = oracle::random_lq(rng, 2, 2, 1.0);
  const SecondOrderOcp p = to_generic(lq);
  for (int i = 0; i < 20; ++i) {
    ExtendedPoint pt = random_point(rng, 2, 2);
    pt.u = 10.0 * oracle::uniform(rng, 2);
    const ControlSolution s = eliminate_control(p, pt);
    const Vec expect = lq.R().llt().solve(lq.B().transpose() * pt.kappa);
    EXPECT_EQ(s.iterations, 1);
    EXPECT_LE((s.u - expect).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(EliminateControl, DoubleIntegrator) {
  const ExtendedPoint pt{v1(0), v1(2), v1(0), v1(0), v1(-7)};
  EXPECT_NEAR(eliminate_control(double_integrator(), pt).u(0), 2.0, 1e-14);
}

TEST(EliminateControl, QuarticZeroRoot) {
  const ExtendedPoint pt{v1(0.1), v1(0), v1(0.2), v1(0), v1(0.8)};
  EXPECT_NEAR(eliminate_control(quartic_effort(), pt).u(0), 0.0, 1e-12);
}

TEST(EliminateControl, ResidualViaTulczyjew) {
  std::mt19937 rng(32);
  const SecondOrderOcp p = forced_pendulum();
  for (int i = 0; i < 50; ++i) {
    ExtendedPoint pt = random_point(rng, 1, 1);
    pt.u = eliminate_control(p, pt).u;
    const auto a = tulczyjew_map(pt);
    EXPECT_LE(std::abs(optimality_residual(p, a.point, a.u)(0)), 1e-12);
  }
}

TEST(EliminateControl, SingularHessian) {
  // f = u, C = 0: dL/du = kappa has no u dependence.
  DifferentiableMap zero(1, [](const Vec &, const Vec &, const Vec &) { return v1(0); });
  const SecondOrderOcp di = double_integrator();
  const SecondOrderOcp p("singular", Dims{1, 1}, zero, di.dynamics(), di.boundary());
  const ExtendedPoint pt{v1(0), v1(1), v1(0), v1(0), v1(0)};
  EXPECT_THROW(eliminate_control(p, pt), SingularHessian);
}

TEST(ControlSensitivity, LqBlocks) {
  std::mt19937 rng(33);
  const LqProblem lq = oracle::random_lq(rng, 2, 1, 1.0);
  const SecondOrderOcp p = to_generic(lq);
  ExtendedPoint pt = random_point(rng, 2, 1);
  pt.u = eliminate_control(p, pt).u;
  const ControlSensitivity s = control_sensitivity(p, pt);
  const Mat rb = lq.R().llt().solve(lq.B().transpose());
  EXPECT_LE((s.du_dy.rightCols(2) - rb).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE(s.du_dy.leftCols(2).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE(s.du_dydot.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ControlSensitivity, DoubleIntegrator) {
  const ExtendedPoint pt{v1(0.3), v1(1.0), v1(0.1), v1(0.0), v1(1.0)};
  const ControlSensitivity s = control_sensitivity(double_integrator(), pt);
  EXPECT_NEAR(s.du_dy(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(s.du_dy(0, 0), 0.0, 1e-15);
}

TEST(ControlSensitivity, MatchesFiniteDifferences) {
  std::mt19937 rng(34);
  const SecondOrderOcp p = quartic_effort();
  ExtendedPoint pt = random_point(rng, 1, 1);
  pt.u = eliminate_control(p, pt).u;
  const ControlSensitivity s = control_sensitivity(p, pt);
  const double h = 1e-6;
  auto u_at = [&](ExtendedPoint x) { return eliminate_control(p, x).u(0); };
  ExtendedPoint a = pt, b = pt;
  a.kappa(0) += h;
  b.kappa(0) -= h;
  const double fd = (u_at(a) - u_at(b)) / (2 * h);
  EXPECT_NEAR(s.du_dy(0, 1), fd, 1e-6 * std::max(1.0, std::abs(fd)));
}

TEST(Legendre, LqIsR) {
  std::mt19937 rng(35);
  Mat R = Mat::Zero(2, 2);
  R.diagonal() << 1.0, 2.0;
  const LqProblem base = oracle::random_lq(rng, 2, 2, 1.0);
  const LqProblem lq(base.Q1(), base.Q2(), R, base.A1(), base.A2(),
                     Mat::Identity(2, 2), base.boundary());
  const SecondOrderOcp p = to_generic(lq);
  const Extremal ex = solve(p);
  const LegendreReport rep = legendre_check(p, ex);
  EXPECT_EQ(rep.verdict, LegendreVerdict::strong);
  for (double e : rep.min_eig)
    EXPECT_NEAR(e, 1.0, 1e-14);
}

TEST(Legendre, DoubleIntegrator) {
  const SecondOrderOcp p = double_integrator();
  const LegendreReport rep = legendre_check(p, solve(p));
  EXPECT_EQ(rep.overall_min, 1.0);
  EXPECT_EQ(to_string(rep.verdict), "strong");
}

TEST(Legendre, InjectedViolation) {
  const SecondOrderOcp p = legendre_violating();
  const LegendreReport rep = legendre_check(p, solve(p));
  EXPECT_EQ(rep.overall_min, -1.0);
  EXPECT_EQ(rep.verdict, LegendreVerdict::violated);
}

TEST(Legendre, GridRefinementKeepsVerdict) {
  const SecondOrderOcp p = forced_pendulum();
  const Extremal ex = solve(p);
  EXPECT_EQ(legendre_check(p, ex, 1e-9, 100).verdict,
            legendre_check(p, ex, 1e-9, 5000).verdict);
}
