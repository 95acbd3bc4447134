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

#ifndef LAGOC_CONJUGATE_HPP
#define LAGOC_CONJUGATE_HPP

#include "lagoc/control.hpp"
#include "lagoc/extremal.hpp"
#include "lagoc/linalg.hpp"
#include "lagoc/numerics.hpp"
#include "lagoc/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lagoc {

enum class Formulation { hamiltonian, lagrangian };

std::string to_string(Formulation f);

struct BundleOptions {
  IntegratorOptions integrator = IntegratorOptions::jacobi_defaults();
  /// Initial covector variations are initial_scale * e_i.
  double initial_scale = 1.0;
  /// Legendre margin checked before propagation.
  double legendre_margin = 1e-9;
};

/// n = 2 nq Jacobi fields started from (dx, dlambda)(0) = (0, e_i).
///
/// Hamiltonian fields live in (dq, dv, dlambda_q, dlambda_v); Lagrangian
/// fields in (dq, dqdot, dkappa, dkappadot) with the initial covector
/// variation carried over through the linearised costate identification.
/// In both layouts the first 2 nq entries are the state variation dx.
struct JacobiBundle {
  Formulation formulation = Formulation::hamiltonian;
  int nq = 0;
  std::vector<DenseTrajectory> fields;
  double first_step = 0.0; ///< largest first integrator step over the fields

  double horizon() const { return fields.front().t_end(); }
  /// 2nq x 2nq matrix whose columns are dx_i(t).
  Mat state_columns(double t) const;
  SignedDeterminant signed_determinant(double t) const;
  double determinant(double t) const { return signed_determinant(t).value(); }
};

/// Throws LegendreViolation unless strong Legendre holds along `ex`.
JacobiBundle propagate_bundle(const SecondOrderOcp &p, const Extremal &ex,
                              Formulation formulation,
                              const BundleOptions &opts = {});

struct DetSeries {
  std::vector<double> t;
  std::vector<double> D;
};

/// D(t) on a uniform grid of n_intervals + 1 points over [0, T].
DetSeries det_series(const JacobiBundle &bundle, std::size_t n_intervals = 2000);

struct ConjugateSearchOptions {
  std::optional<double> t_skip; ///< default max(1e-3 T, 10 * first step)
  int n_scan = 2000;
  double tol_t = 1e-7;
};

struct ConjugateSearch {
  std::optional<double> t_c;
  std::optional<Bracket> bracket;
  double t_skip = 0.0;
  double tol_t = 0.0;
  /// Scan times before the crossing where D is indistinguishable from zero:
  /// |D| < 1e-12 max|D|, or |D| below 1e-12 of the product of column norms.
  /// Sign changes between two such samples are not crossings.
  std::vector<double> near_zeros;
};

ConjugateSearch first_conjugate_time(const JacobiBundle &bundle,
                                     const ConjugateSearchOptions &opts = {});

enum class OptimalityVerdict { optimal, not_optimal, inconclusive };

std::string to_string(OptimalityVerdict v);

struct FormulationResult {
  Formulation formulation = Formulation::hamiltonian;
  ConjugateSearch search;
  DetSeries det;
};

struct ConjugateReport {
  std::optional<FormulationResult> hamiltonian;
  std::optional<FormulationResult> lagrangian;
  std::optional<double> t_c;
  double horizon = 0.0;
  double tol_t = 0.0;
  LegendreReport legendre;
  OptimalityVerdict verdict = OptimalityVerdict::inconclusive;
  std::vector<std::string> flags;
  std::string error;
  std::string assumptions = "normal, corank-1 assumed";
};

struct VerdictOptions {
  BundleOptions bundle;
  ConjugateSearchOptions search;
  std::size_t det_samples = 2000;
};

/// Legendre check, then first conjugate time in both formulations.
ConjugateReport optimality_verdict(const SecondOrderOcp &p, const Extremal &ex,
                                   const VerdictOptions &opts = {});

} // namespace lagoc

#endif // LAGOC_CONJUGATE_HPP
