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

#include "lagoc/numerics.hpp"
#include "lagoc/registry.hpp"
#include "lagoc/shooting.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace lagoc;

namespace {

Vec v1(double x) { return Vec::Constant(1, x); }

} // namespace

TEST(Integrate, ConstantField) {
  const Vec c = (Vec(3) << 1.0, -2.0, 0.5).finished();
  auto traj = integrate([](double, const Vec &y) { return Vec::Zero(y.size()); },
                        c, 0.0, 2.0);
  for (double t : {0.0, 0.3, 1.7, 2.0})
    EXPECT_EQ((traj(t) - c).norm(), 0.0);
}

TEST(Integrate, ExponentialAdaptive) {
  IntegratorOptions o;
  o.abs_tol = o.rel_tol = 1e-12;
  auto traj =
      integrate([](double, const Vec &y) { return y; }, v1(1.0), 0.0, 1.0, o);
  EXPECT_NEAR(traj.final_state()(0), std::exp(1.0), 1e-10);
  EXPECT_EQ(traj.t_end(), 1.0);
  EXPECT_GT(traj.accepted_steps, 0);
  EXPECT_EQ(traj.method, "dp45_adaptive");
}

TEST(Integrate, Rk4FourthOrder) {
  auto err = [](double h) {
    IntegratorOptions o;
    o.method = IntegratorMethod::rk4_fixed;
    o.h_fixed = h;
    auto traj =
        integrate([](double, const Vec &y) { return y; }, v1(1.0), 0.0, 1.0, o);
    return std::abs(traj.final_state()(0) - std::exp(1.0));
  };
  const double ratio = err(0.02) / err(0.01);
  EXPECT_GE(ratio, 14.0);
  EXPECT_LE(ratio, 18.0);
}

TEST(Integrate, DenseOutputHitsNodes) {
  auto traj = integrate(
      [](double t, const Vec &y) {
        return (Vec(2) << y(1), -y(0) + std::sin(t)).finished();
      },
      (Vec(2) << 1.0, 0.0).finished(), 0.0, 3.0);
  for (std::size_t i = 0; i < traj.size(); ++i)
    EXPECT_EQ((traj(traj.times()[i]) - traj.states()[i]).norm(), 0.0);
  // Between nodes the interpolant is a faithful cubic.
  const double t = 0.5 * (traj.times()[3] + traj.times()[4]);
  EXPECT_NEAR(traj(t)(0), 0.5 * (2.0 * std::cos(t) + std::sin(t) -
                                 t * std::cos(t)),
              1e-6);
}

TEST(Integrate, Deterministic) {
  auto run = [] {
    return integrate([](double, const Vec &y) { return -y.cwiseProduct(y); },
                     v1(2.0), 0.0, 5.0);
  };
  const auto a = run(), b = run();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(a.states()[i](0), b.states()[i](0));
}

TEST(Integrate, OutsideSpanThrows) {
  auto traj = integrate([](double, const Vec &y) { return y; }, v1(1.0), 0.0,
                        1.0);
  EXPECT_THROW(traj(1.5), std::out_of_range);
}

TEST(Integrate, NonFiniteStateThrows) {
  EXPECT_THROW(integrate([](double, const Vec &y) { return y.cwiseProduct(y); },
                         v1(1.0), 0.0, 2.0),
               Error);
}

TEST(Integrate, DoubleIntegratorElFlowLands) {
  const SecondOrderOcp p = double_integrator();
  const Vec y0 = (Vec(4) << 0.0, 0.0, 6.0, -12.0).finished();
  auto traj = integrate_el_flow(p, y0, IntegratorOptions::extremal_defaults());
  EXPECT_NEAR(traj.final_state()(0), 1.0, 1e-9);
  EXPECT_NEAR(traj.final_state()(1), 0.0, 1e-9);
}

TEST(SignChange, LinearFunction) {
  auto b = find_sign_change([](double t) { return t - 0.5; }, 0.0, 1.0, 100);
  ASSERT_TRUE(b);
  EXPECT_LE(b->a, 0.5);
  EXPECT_GE(b->b, 0.5);
}

TEST(SignChange, PositiveQuartic) {
  EXPECT_FALSE(find_sign_change([](double t) { return t * t * t * t / 12.0; },
                                1e-3, 1.0, 2000));
}

TEST(SignChange, BeamDeterminant) {
  auto g = [](double t) { return std::cos(t) * std::cosh(t) - 1.0; };
  auto b = find_sign_change(g, 0.1, 6.0, 2000);
  ASSERT_TRUE(b);
  EXPECT_LE(b->a, 4.730041);
  EXPECT_GE(b->b, 4.730040);
}

TEST(Bisect, Roots) {
  EXPECT_NEAR(bisect([](double t) { return t - 0.5; }, 0.0, 1.0, 1e-12), 0.5,
              1e-12);
  EXPECT_NEAR(bisect([](double t) { return std::cos(t) * std::cosh(t) - 1.0; },
                     4.5, 5.0, 1e-10),
              4.7300407448627040, 1e-8);
  EXPECT_NEAR(bisect([](double t) { return t * t * t - 2.0; }, 1.0, 2.0, 1e-12),
              std::cbrt(2.0), 1e-12);
}

TEST(Bisect, InvalidBracket) {
  EXPECT_THROW(bisect([](double t) { return t + 1.0; }, 0.0, 1.0, 1e-9),
               InvalidBracket);
}

TEST(Newton, Affine) {
  auto r = newton_solve([](const Vec &z) { return Vec(z.array() - 3.0); },
                        [](const Vec &, const Vec &) { return Mat::Identity(1, 1); },
                        v1(0.0));
  EXPECT_EQ(r.iterations, 1);
  EXPECT_NEAR(r.z(0), 3.0, 1e-12);
}

TEST(Newton, Quadratic) {
  auto F = [](const Vec &z) { return v1(z(0) * z(0) - 4.0); };
  auto J = [](const Vec &z, const Vec &) {
    return Mat::Constant(1, 1, 2.0 * z(0));
  };
  NewtonOptions o;
  o.tol = 1e-13;
  auto r = newton_solve(F, J, v1(3.0), o);
  EXPECT_NEAR(r.z(0), 2.0, 1e-12);
  EXPECT_LE(r.iterations, 8);
  // Residuals shrink quadratically once close.
  ASSERT_GE(r.history.size(), 3u);
  EXPECT_LT(r.history[2], r.history[1] * r.history[1] * 10.0);
}

TEST(Newton, LinearSystemOneStep) {
  Mat A(2, 2);
  A << 2, 1, 1, 3;
  const Vec b = (Vec(2) << 1.0, -1.0).finished();
  auto r = newton_solve([&](const Vec &z) { return Vec(A * z - b); },
                        [&](const Vec &, const Vec &) { return A; },
                        Vec::Zero(2));
  EXPECT_EQ(r.iterations, 1);
  EXPECT_LT((A * r.z - b).norm(), 1e-14);
}

TEST(Newton, MaxIterationsCarriesHistory) {
  NewtonOptions o;
  o.max_iter = 2;
  o.damping = false;
  try {
    newton_solve([](const Vec &z) { return v1(std::atan(z(0)) - 1.5); }, {},
                 v1(0.0), o);
    FAIL() << "expected NewtonError";
  } catch (const NewtonError &e) {
    EXPECT_EQ(e.kind(), NewtonFailure::max_iterations);
    EXPECT_FALSE(e.residual_history().empty());
    EXPECT_EQ(e.best_iterate().size(), 1);
  }
}

TEST(Newton, SingularJacobian) {
  try {
    newton_solve([](const Vec &z) { return v1(z(0) * z(0) + 1.0); },
                 [](const Vec &, const Vec &) { return Mat::Zero(1, 1).eval(); },
                 v1(0.0));
    FAIL() << "expected NewtonError";
  } catch (const NewtonError &e) {
    EXPECT_EQ(e.kind(), NewtonFailure::singular_jacobian);
  }
}

TEST(Simpson, Cubic) {
  std::vector<double> s;
  const int n = 10;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    s.push_back(t * t * t);
  }
  EXPECT_NEAR(simpson(s, 1.0 / n), 0.25, 1e-15);
}
