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
#include "lagoc/lagrangian.hpp"
#include "lagoc/lq.hpp"
#include "lagoc/registry.hpp"
#include "lagoc/shooting.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

using namespace lagoc;

namespace {

Vec v1(double x) { return Vec::Constant(1, x); }

ExtendedPoint random_point(std::mt19937 &rng, int nq, int m) {
  return {oracle::uniform(rng, nq), oracle::uniform(rng, nq),
          oracle::uniform(rng, nq), oracle::uniform(rng, nq),
          oracle::uniform(rng, m)};
}

Vec pack(const ExtendedPoint &pt) {
  Vec z(pt.q.size() * 4 + pt.u.size());
  z << pt.q, pt.kappa, pt.vq, pt.vkappa, pt.u;
  return z;
}

ExtendedPoint unpack(const Vec &z, int nq, int m) {
  return {z.segment(0, nq), z.segment(nq, nq), z.segment(2 * nq, nq),
          z.segment(3 * nq, nq), z.segment(4 * nq, m)};
}

// Full Hessian of L over (q, kappa, v_q, v_kappa, u) by central differences.
Mat fd_hessian(const SecondOrderOcp &p, const ExtendedPoint &pt, double h) {
  const int nq = p.dims().nq, m = p.dims().m;
  const Vec z = pack(pt);
  const int n = static_cast<int>(z.size());
  auto L = [&](const Vec &x) { return eval_lagrangian(p, unpack(x, nq, m)); };
  Mat H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec pp = z, pm = z, mp = z, mm = z;
      pp(i) += h, pp(j) += h;
      pm(i) += h, pm(j) -= h;
      mp(i) -= h, mp(j) += h;
      mm(i) -= h, mm(j) -= h;
      H(i, j) = (L(pp) - L(pm) - L(mp) + L(mm)) / (4 * h * h);
    }
  return H;
}

} // namespace

TEST(EvalLagrangian, DoubleIntegratorHand) {
  const ExtendedPoint pt{v1(1), v1(2), v1(3), v1(4), v1(5)};
  EXPECT_DOUBLE_EQ(eval_lagrangian(double_integrator(), pt), 9.5);
}

TEST(EvalLagrangian, ZeroMultiplierIsMinusCost) {
  const SecondOrderOcp p = forced_pendulum();
  const ExtendedPoint pt{v1(0.4), v1(0), v1(-0.3), v1(0), v1(1.2)};
  EXPECT_DOUBLE_EQ(eval_lagrangian(p, pt),
                   -p.cost().scalar(pt.q, pt.vq, pt.u));
}

TEST(EvalLagrangian, LqClosedForm) {
  std::mt19937 rng(3);
  const LqProblem lq = oracle::random_lq(rng, 2, 2, 1.0);
  const SecondOrderOcp p = to_generic(lq);
  for (int i = 0; i < 50; ++i) {
    const ExtendedPoint pt = random_point(rng, 2, 2);
    const double closed =
        pt.vkappa.dot(pt.vq) +
        pt.kappa.dot(lq.A1() * pt.q + lq.A2() * pt.vq + lq.B() * pt.u) -
        0.5 * (pt.q.dot(lq.Q1() * pt.q) + pt.vq.dot(lq.Q2() * pt.vq) +
               pt.u.dot(lq.R() * pt.u));
    EXPECT_NEAR(eval_lagrangian(p, pt), closed, 1e-12);
  }
}

TEST(ElRhs, DoubleIntegratorOptimalArc) {
  const ElState s{v1(0), v1(0), v1(6), v1(-12)};
  const ElAcceleration a = el_rhs(double_integrator(), s, v1(6));
  EXPECT_DOUBLE_EQ(a.qddot(0), 6.0);
  EXPECT_DOUBLE_EQ(a.kappaddot(0), 0.0);
}

TEST(ElRhs, ZeroMultiplierStaysZero) {
  // C = u^2 / 2 does not depend on q or qdot.
  const SecondOrderOcp p = double_integrator();
  const ElState s{v1(0.7), v1(-0.2), v1(0), v1(0)};
  EXPECT_EQ(el_rhs(p, s, v1(0)).kappaddot(0), 0.0);
}

TEST(ElRhs, MatchesTimeDerivativeOfCostate) {
  // Along a short EL flow, d/dt lambda_q computed by differencing the
  // identification must equal C_q - f_q' kappa.
  std::mt19937 rng(5);
  for (const auto &name : problem_names()) {
    const SecondOrderOcp p = make_problem(name);
    const Vec y0 = oracle::uniform(rng, 4);
    std::vector<Vec> controls;
    IntegratorOptions o;
    o.abs_tol = o.rel_tol = 1e-12;
    const auto flow = integrate_el_flow(
        p, y0, o, &controls);
    (void)flow;
    const double t = 0.5 * p.boundary().T, h = 1e-4;
    auto lam_q = [&](double s) {
      const ElState st = ElState::unpack(flow(s), 1);
      const auto u = eliminate_control(p, st.with_control(Vec::Zero(1))).u;
      return costate_from_lagrangian(p, st, u).lambda_q(0);
    };
    const ElState st = ElState::unpack(flow(t), 1);
    const Vec u = eliminate_control(p, st.with_control(Vec::Zero(1))).u;
    const PhasePoint x = costate_from_lagrangian(p, st, u);
    const PhasePoint r = pmp_rhs(p, x, u);
    EXPECT_NEAR(oracle::central(lam_q, t, h), r.lambda_q(0), 1e-6) << name;
    EXPECT_NEAR(r.lambda_v(0), st.kappadot(0), 1e-12) << name;
  }
}

TEST(HessianBlocks, LqControlBlockIsMinusR) {
  std::mt19937 rng(8);
  const LqProblem lq = oracle::random_lq(rng, 2, 2, 1.0);
  const auto b = hessian_blocks(to_generic(lq), random_point(rng, 2, 2));
  EXPECT_EQ((b.uu + lq.R()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(HessianBlocks, Hyperregular) {
  std::mt19937 rng(9);
  const LqProblem lq = oracle::random_lq(rng, 2, 1, 1.0);
  const auto b = hessian_blocks(to_generic(lq), random_point(rng, 2, 1));
  EXPECT_NEAR(std::abs(b.ydotydot.determinant()), 1.0, 1e-12);
  EXPECT_EQ((b.ydotydot.topRightCorner(2, 2) - Mat::Identity(2, 2)).norm(), 0.0);
  EXPECT_EQ(b.ydotydot.bottomRightCorner(2, 2).norm(), 0.0);
  EXPECT_LT((b.ydotydot.topLeftCorner(2, 2) + lq.Q2()).norm(), 1e-15);
}

TEST(HessianBlocks, MatchFiniteDifferences) {
  std::mt19937 rng(10);
  for (const auto &name : problem_names()) {
    const SecondOrderOcp p = make_problem(name);
    for (int k = 0; k < 50; ++k) {
      const ExtendedPoint pt = random_point(rng, 1, 1);
      const Mat H = fd_hessian(p, pt, 1e-4);
      const auto b = hessian_blocks(p, pt);
      Mat full(5, 5);
      full.topLeftCorner(2, 2) = b.yy;
      full.block(0, 2, 2, 2) = b.yydot;
      full.block(2, 0, 2, 2) = b.yydot.transpose();
      full.block(2, 2, 2, 2) = b.ydotydot;
      full.block(0, 4, 2, 1) = b.yu;
      full.block(2, 4, 2, 1) = b.ydotu;
      full.block(4, 0, 1, 2) = b.yu.transpose();
      full.block(4, 2, 1, 2) = b.ydotu.transpose();
      full(4, 4) = b.uu(0, 0);
      const double err =
          ((full - H).array().abs() / H.array().abs().max(1.0)).maxCoeff();
      EXPECT_LE(err, 1e-5) << name;
    }
  }
}

TEST(Energy, DoubleIntegratorHand) {
  const ElState s{v1(0), v1(0), v1(6), v1(-12)};
  EXPECT_NEAR(energy(double_integrator(), s, v1(6)), 18.0, 1e-14);
}

TEST(Energy, ZeroState) {
  const ElState s{v1(0), v1(0), v1(0), v1(0)};
  EXPECT_EQ(energy(forced_pendulum(), s, v1(0)), 0.0);
}

TEST(Energy, ConservedAlongFlow) {
  const SecondOrderOcp p = forced_pendulum();
  std::vector<Vec> controls;
  const auto flow = integrate_el_flow(
      p, (Vec(4) << 0.2, -0.1, 0.8, 0.3).finished(),
      IntegratorOptions::extremal_defaults(), &controls);
  const double e0 =
      energy(p, ElState::unpack(flow.states().front(), 1), controls.front());
  for (std::size_t i = 0; i < flow.size(); ++i)
    EXPECT_NEAR(energy(p, ElState::unpack(flow.states()[i], 1), controls[i]),
                e0, 1e-8);
}

TEST(Jacobi, DoubleIntegratorReduced) {
  const SecondOrderOcp p = double_integrator();
  const Extremal ex = solve(p);
  const ElState d{v1(0.3), v1(-1.1), v1(0.7), v1(2.0)};
  for (double t : {0.0, 0.4, 1.0}) {
    const ElAcceleration a = reduced_jacobi_rhs(p, ex, t, d);
    EXPECT_NEAR(a.qddot(0), 0.7, 1e-12);
    EXPECT_NEAR(a.kappaddot(0), 0.0, 1e-12);
  }
  const ElState zero{v1(0), v1(0), v1(0), v1(0)};
  const ElAcceleration a0 = reduced_jacobi_rhs(p, ex, 0.5, zero);
  EXPECT_EQ(a0.qddot(0), 0.0);
  EXPECT_EQ(a0.kappaddot(0), 0.0);
}

TEST(Jacobi, LqMatchesAssembledSystem) {
  std::mt19937 rng(12);
  const LqProblem lq = oracle::random_lq(rng, 2, 1, 1.0);
  const SecondOrderOcp p = to_generic(lq);
  const Extremal ex = solve(p);
  const Mat A = assemble_el_system(lq).matrix;
  for (double t : {0.0, 0.37, 1.0}) {
    const Mat M = jacobi_matrix(p, ex, t);
    EXPECT_LE((M - A).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + A.norm()));
  }
}

TEST(SecondVariation, ZeroVariation) {
  const SecondOrderOcp p = double_integrator();
  const Extremal ex = solve(p);
  const VariationPath z{[](double) { return v1(0); },
                        [](double) { return v1(0); },
                        [](double) { return v1(0); }};
  EXPECT_EQ(second_variation(p, ex, z), 0.0);
}

TEST(SecondVariation, DoubleIntegratorIsControlEnergy) {
  // dq = t^2 (1 - t)^2 is admissible; du = dqddot.
  const SecondOrderOcp p = double_integrator();
  const Extremal ex = solve(p);
  std::mt19937 rng(13);
  for (int k = 0; k < 200; ++k) {
    const double a = oracle::uniform(rng, 1)(0), b = oracle::uniform(rng, 1)(0);
    // dq = (a + b t) t^2 (1 - t)^2
    auto dq = [=](double t) { return v1((a + b * t) * t * t * (1 - t) * (1 - t)); };
    auto dqd = [=](double t) {
      const double g = t * t * (1 - t) * (1 - t);
      const double gd = 2 * t * (1 - t) * (1 - 2 * t);
      return v1(b * g + (a + b * t) * gd);
    };
    auto du = [=](double t) {
      const double g = 2 * t * (1 - t) * (1 - 2 * t);
      const double gd = 2 * (1 - 6 * t + 6 * t * t);
      return v1(2 * b * g + (a + b * t) * gd);
    };
    const VariationPath var{dq, dqd, du};
    const double val = second_variation(p, ex, var, 2000);
    // Closed form of int du^2 by fine Simpson for comparison.
    std::vector<double> s;
    for (int i = 0; i <= 4000; ++i) {
      const double x = du(i / 4000.0)(0);
      s.push_back(x * x);
    }
    EXPECT_NEAR(val, simpson(s, 1.0 / 4000), 1e-9 * (1 + val));
    EXPECT_GT(val, 0.0);
  }
}

TEST(SecondVariation, MatchesFunctionalFiniteDifference) {
  const SecondOrderOcp p = forced_pendulum();
  const Extremal ex = solve(p);
  const double T = p.boundary().T, w = std::numbers::pi / T;
  auto dq = [=](double t) { return v1(std::pow(std::sin(w * t), 2)); };
  auto dqd = [=](double t) { return v1(w * std::sin(2 * w * t)); };
  auto dqdd = [=](double t) { return 2 * w * w * std::cos(2 * w * t); };
  // du from the linearised constraint dqddot = -cos(q*) dq + du.
  auto du = [&](double t) {
    const double q = ex.state_at(t).q(0);
    return v1(dqdd(t) + std::cos(q) * dq(t)(0));
  };
  const VariationPath var{dq, dqd, du};
  const std::size_t n = 2000;
  const double sv = second_variation(p, ex, var, n);

  // g(eps) = int C - kappa* f along (q* + eps dq, u* + eps du); terms linear
  // in eps drop out of the second difference.
  auto g = [&](double eps) {
    std::vector<double> s;
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = T * static_cast<double>(i) / n;
      const ExtremalSample x = sample_extremal(p, ex, t);
      const Vec q = x.state.q + eps * dq(t), v = x.state.qdot + eps * dqd(t),
                u = x.u + eps * du(t);
      s.push_back(p.cost().scalar(q, v, u) -
                  x.state.kappa.dot(p.dynamics().value(q, v, u)));
    }
    return simpson(s, T / n);
  };
  const double eps = 1e-3;
  const double fd = (g(eps) - 2 * g(0) + g(-eps)) / (eps * eps);
  EXPECT_NEAR(sv, fd, 1e-4 * std::abs(fd));
}

TEST(SecondVariation, RejectsNonVanishingEnds) {
  const SecondOrderOcp p = double_integrator();
  const Extremal ex = solve(p);
  const VariationPath var{[](double) { return v1(1); },
                          [](double) { return v1(0); },
                          [](double) { return v1(0); }};
  EXPECT_THROW(second_variation(p, ex, var), InvalidVariation);
}
