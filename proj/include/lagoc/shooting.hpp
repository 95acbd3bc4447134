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

#ifndef LAGOC_SHOOTING_HPP
#define LAGOC_SHOOTING_HPP

#include "lagoc/extremal.hpp"
#include "lagoc/numerics.hpp"
#include "lagoc/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lagoc {

/// Shooting did not converge. Carries the best iterate and the residual
/// history of the Newton loop.
class NoConvergence : public Error {
public:
  NoConvergence(const std::string &what, Vec best, double best_residual,
                std::vector<double> history)
      : Error(what), best_(std::move(best)), best_residual_(best_residual),
        history_(std::move(history)) {}

  const Vec &best_iterate() const { return best_; }
  double best_residual() const { return best_residual_; }
  const std::vector<double> &residual_history() const { return history_; }

private:
  Vec best_;
  double best_residual_;
  std::vector<double> history_;
};

enum class ShootingJacobian { finite_difference, variational };

enum class WarmStart { none, linearized };

struct ShootingOptions {
  IntegratorOptions integrator = IntegratorOptions::extremal_defaults();
  IntegratorOptions jacobi_integrator = IntegratorOptions::jacobi_defaults();
  double tol = 1e-9;  ///< on the boundary residual, sup-norm
  int max_iter = 30;
  ShootingJacobian jacobian = ShootingJacobian::finite_difference;
  double fd_step = 1e-6;
  WarmStart warm_start = WarmStart::none;
  std::size_t output_samples = 1000;
};

/// Integrates the Euler-Lagrange flow with eliminated control from
/// (q0, v0, kappa0, kappadot0) over [0, T].
DenseTrajectory integrate_el_flow(const SecondOrderOcp &p, const Vec &el_state0,
                                  const IntegratorOptions &opts,
                                  std::vector<Vec> *node_controls = nullptr);

/// (q(T) - qT, qdot(T) - vT) for initial covector z = (kappa(0), kappadot(0)).
Vec shoot_residual(const SecondOrderOcp &p, const Vec &z,
                   const IntegratorOptions &opts = {});

/// Jacobian of shoot_residual from Jacobi fields along the flow from z.
Mat variational_shooting_jacobian(const SecondOrderOcp &p, const Vec &z,
                                  const ShootingOptions &opts);

/// Initial covector from the problem with dynamics linearised and cost
/// expanded to second order at (q0, v0, 0).
Vec linearized_warm_start(const SecondOrderOcp &p,
                          const ShootingOptions &opts);

/// Newton on shoot_residual from z0 (empty z0 means zero, or the warm
/// start if requested). Throws NoConvergence.
Extremal solve(const SecondOrderOcp &p, const std::optional<Vec> &z0 = {},
               const ShootingOptions &opts = {});

/// Composite Simpson quadrature of C(q, qdot, u*) on a uniform grid with
/// `n_intervals` cells (0 selects max(2000, output samples), rounded even).
double cost(const SecondOrderOcp &p, const Extremal &ex,
            std::size_t n_intervals = 0);

} // namespace lagoc

#endif // LAGOC_SHOOTING_HPP
