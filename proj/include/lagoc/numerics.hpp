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

#ifndef LAGOC_NUMERICS_HPP
#define LAGOC_NUMERICS_HPP

#include "lagoc/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lagoc {

class StepSizeUnderflow : public Error {
public:
  using Error::Error;
};

class NonFiniteState : public Error {
public:
  using Error::Error;
};

class InvalidBracket : public Error {
public:
  using Error::Error;
};

/// dy/dt = rhs(t, y). The callable may carry private mutable state (for
/// example a warm start) but must be deterministic.
using VectorField = std::function<Vec(double t, const Vec &y)>;

enum class IntegratorMethod { rk4_fixed, dp45_adaptive };

struct IntegratorOptions {
  IntegratorMethod method = IntegratorMethod::dp45_adaptive;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double h_fixed = 1e-3;  ///< step for rk4_fixed
  double h_initial = 0.0; ///< 0 selects the starting step automatically
  double h_max = 0.0;     ///< 0 means no limit
  long max_steps = 2'000'000;

  static IntegratorOptions extremal_defaults() { return {}; }
  static IntegratorOptions jacobi_defaults() {
    IntegratorOptions o;
    o.abs_tol = 1e-8;
    o.rel_tol = 1e-8;
    return o;
  }
};

std::string to_string(IntegratorMethod method);

/// Piecewise cubic Hermite interpolant through integrator nodes, using the
/// node states and the vector field evaluated at the nodes.
class DenseTrajectory {
public:
  DenseTrajectory() = default;
  DenseTrajectory(std::vector<double> times, std::vector<Vec> states,
                  std::vector<Vec> derivatives);

  /// State at t; t must lie in [t0, t_end] (a few ulps of slack allowed).
  Vec operator()(double t) const;
  /// Time derivative of the interpolant at t.
  Vec derivative(double t) const;

  const std::vector<double> &times() const { return times_; }
  const std::vector<Vec> &states() const { return states_; }
  const std::vector<Vec> &derivatives() const { return derivatives_; }
  std::size_t size() const { return times_.size(); }
  int dimension() const;
  double t0() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  const Vec &final_state() const { return states_.back(); }

  // Metadata.
  std::string method;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
  long rhs_evaluations = 0;
  /// Size of the first accepted step.
  double first_step = 0.0;

private:
  std::size_t interval(double t) const;

  std::vector<double> times_;
  std::vector<Vec> states_;
  std::vector<Vec> derivatives_;
};

DenseTrajectory integrate(const VectorField &rhs, const Vec &y0, double t0,
                          double t1, const IntegratorOptions &opts = {});

struct Bracket {
  double a;
  double b;
};

/// Scans n_scan uniformly spaced points of [a, b] and returns the earliest
/// interval with a strict sign change.
std::optional<Bracket> find_sign_change(const std::function<double(double)> &g,
                                        double a, double b, int n_scan);

/// Bisection to |b - a| <= tol_t; returns the midpoint.
double bisect(const std::function<double(double)> &g, double a, double b,
              double tol_t);

enum class NewtonFailure { max_iterations, singular_jacobian, line_search };

/// Newton failure carrying the best iterate seen and the residual history.
class NewtonError : public Error {
public:
  NewtonError(NewtonFailure kind, const std::string &what, Vec best,
              std::vector<double> history)
      : Error(what), kind_(kind), best_(std::move(best)),
        history_(std::move(history)) {}

  NewtonFailure kind() const { return kind_; }
  const Vec &best_iterate() const { return best_; }
  const std::vector<double> &residual_history() const { return history_; }

private:
  NewtonFailure kind_;
  Vec best_;
  std::vector<double> history_;
};

struct NewtonOptions {
  double tol = 1e-10;    ///< on ||F||_inf
  int max_iter = 50;
  bool damping = true;   ///< Armijo backtracking on ||F||^2
  double armijo_c = 1e-4;
  double min_step = 1.0 / (1 << 20);
  double fd_step = 1e-6; ///< relative step for the finite-difference Jacobian
};

struct NewtonResult {
  Vec z;
  int iterations = 0;
  double residual = 0.0; ///< ||F(z)||_inf
  std::vector<double> history;
};

using VectorMap = std::function<Vec(const Vec &)>;
using JacobianMap = std::function<Mat(const Vec &z, const Vec &Fz)>;

/// Central-difference Jacobian with step fd_step * (1 + |z_i|).
Mat fd_jacobian(const VectorMap &F, const Vec &z, double fd_step);

/// Damped Newton. An empty Jacobian provider selects finite differences.
NewtonResult newton_solve(const VectorMap &F, const JacobianMap &J,
                          const Vec &z0, const NewtonOptions &opts = {});

/// Composite Simpson on a uniform grid of samples (even interval count).
double simpson(const std::vector<double> &samples, double h);

} // namespace lagoc

#endif // LAGOC_NUMERICS_HPP
