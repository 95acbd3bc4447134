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

#ifndef LAGOC_PROBLEM_HPP
#define LAGOC_PROBLEM_HPP

#include "lagoc/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lagoc {

struct Dims {
  int nq = 1; ///< configuration dimension
  int m = 1;  ///< control dimension

  int state_dim() const { return 2 * nq; }
  /// Length of the packed argument (q, qdot, u).
  int arg_dim() const { return 2 * nq + m; }
};

struct BoundaryData {
  Vec q0, v0, qT, vT;
  double T = 1.0;
};

/// Argument index ranges inside the packed (q, qdot, u) layout.
struct ArgLayout {
  int nq;
  int m;
  int q() const { return 0; }
  int v() const { return nq; }
  int u() const { return 2 * nq; }
};

/// First partials of g(q, qdot, u), each block rows = output dim.
struct FirstPartials {
  Mat dq, dv, du;
};

/// Blocks of a (possibly weighted) Hessian over (q, qdot, u).
struct SecondPartials {
  Mat qq, qv, qu, vv, vu, uu;

  static SecondPartials from_packed(const Mat &h, int nq, int m);
};

enum class DerivativeMode { analytic, finite_difference };

/// A C^2 map g(q, qdot, u) -> R^k with first and second partials.
///
/// Only `value` is mandatory. Missing Jacobians and Hessians fall back to
/// central differences with per-coordinate step 1e-6 * (1 + |x_i|). The
/// second derivatives are requested in contracted form sum_i w_i d^2 g_i,
/// which is what the optimality systems consume; a per-component Hessian
/// provider is accepted as an alternative and contracted on the fly.
class DifferentiableMap {
public:
  using ValueFn = std::function<Vec(const Vec &q, const Vec &v, const Vec &u)>;
  /// Returns the k x (2nq+m) Jacobian with columns ordered (q, qdot, u).
  using JacobianFn = std::function<Mat(const Vec &q, const Vec &v, const Vec &u)>;
  /// Returns sum_i w_i * Hessian(g_i), a symmetric (2nq+m) square matrix.
  using WeightedHessianFn =
      std::function<Mat(const Vec &q, const Vec &v, const Vec &u, const Vec &w)>;
  /// Returns the Hessian of component i.
  using ComponentHessianFn =
      std::function<Mat(const Vec &q, const Vec &v, const Vec &u, int i)>;

  DifferentiableMap() = default;
  DifferentiableMap(int output_dim, ValueFn value, JacobianFn jacobian = {},
                    WeightedHessianFn weighted_hessian = {});

  DifferentiableMap &with_component_hessian(ComponentHessianFn fn);

  int output_dim() const { return output_dim_; }
  DerivativeMode mode() const;
  bool has_analytic_jacobian() const { return static_cast<bool>(jacobian_); }
  bool has_analytic_hessian() const {
    return static_cast<bool>(weighted_hessian_) ||
           static_cast<bool>(component_hessian_);
  }

  Vec value(const Vec &q, const Vec &v, const Vec &u) const;
  Mat jacobian(const Vec &q, const Vec &v, const Vec &u) const;
  Mat weighted_hessian(const Vec &q, const Vec &v, const Vec &u,
                       const Vec &w) const;

  FirstPartials partials(const Vec &q, const Vec &v, const Vec &u) const;
  SecondPartials second_partials(const Vec &q, const Vec &v, const Vec &u,
                                 const Vec &w) const;

  /// Scalar helpers for cost-like maps (output_dim == 1).
  double scalar(const Vec &q, const Vec &v, const Vec &u) const;

private:
  Mat fd_jacobian(const Vec &q, const Vec &v, const Vec &u) const;
  Mat fd_weighted_hessian(const Vec &q, const Vec &v, const Vec &u,
                          const Vec &w) const;

  int output_dim_ = 0;
  ValueFn value_;
  JacobianFn jacobian_;
  WeightedHessianFn weighted_hessian_;
  ComponentHessianFn component_hessian_;
};

/// Second-order optimal control problem
///   min int_0^T C(q, qdot, u) dt  s.t.  qddot = f(q, qdot, u)
/// with fixed endpoints. Immutable once built.
class SecondOrderOcp {
public:
  SecondOrderOcp(std::string name, Dims dims, DifferentiableMap cost,
                 DifferentiableMap dynamics, BoundaryData boundary);

  const std::string &name() const { return name_; }
  const Dims &dims() const { return dims_; }
  const DifferentiableMap &cost() const { return cost_; }
  const DifferentiableMap &dynamics() const { return dynamics_; }
  const BoundaryData &boundary() const { return boundary_; }

  /// Copy with different boundary data (horizon included).
  SecondOrderOcp with_boundary(BoundaryData boundary) const;

  /// Free-form notes attached by constructors (e.g. relaxed LQ assumptions).
  const std::vector<std::string> &notes() const { return notes_; }
  SecondOrderOcp with_notes(std::vector<std::string> notes) const;

private:
  std::string name_;
  Dims dims_;
  DifferentiableMap cost_;
  DifferentiableMap dynamics_;
  BoundaryData boundary_;
  std::vector<std::string> notes_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  bool valid() const { return violations.empty(); }
};

/// Structural checks: dimensions, finite boundary data, positive horizon.
ValidationReport validate(const SecondOrderOcp &p);

/// Worst relative error of each analytic derivative block against central
/// differences. Relative error is |analytic - fd| / max(1, |fd|) entrywise.
struct DerivativeCheck {
  double dq = 0, dv = 0, du = 0;
  double qq = 0, qv = 0, qu = 0, vv = 0, vu = 0, uu = 0;

  double max_first() const;
  double max_second() const;
  double max() const;
};

DerivativeCheck check_derivatives(const DifferentiableMap &g, const Vec &q,
                                  const Vec &v, const Vec &u, double h);

} // namespace lagoc

#endif // LAGOC_PROBLEM_HPP
