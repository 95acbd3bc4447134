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

#ifndef LAGOC_EXTREMAL_HPP
#define LAGOC_EXTREMAL_HPP

#include "lagoc/numerics.hpp"
#include "lagoc/state.hpp"

#include <string>
#include <vector>

namespace lagoc {

/// A solved candidate trajectory: the Euler-Lagrange flow (q, qdot, kappa,
/// kappadot) from the shooting solution, the eliminated control at every
/// integrator node, and the shooting diagnostics.
struct Extremal {
  std::string problem_name;
  int nq = 0;
  int m = 0;
  DenseTrajectory trajectory;
  std::vector<Vec> controls; ///< u* at trajectory nodes

  Vec z;               ///< (kappa(0), kappadot(0))
  double cost = 0.0;   ///< J by composite Simpson
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;
  std::size_t output_samples = 1000; ///< default size of uniform output grids

  double horizon() const { return trajectory.t_end() - trajectory.t0(); }
  ElState state_at(double t) const;
  /// Control stored at the node nearest to t; a warm start for elimination.
  const Vec &control_hint(double t) const;
  /// Uniform grid with n + 1 points on [0, T].
  std::vector<double> uniform_grid(std::size_t n) const;
};

} // namespace lagoc

#endif // LAGOC_EXTREMAL_HPP
