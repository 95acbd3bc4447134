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

#ifndef LAGOC_REGISTRY_HPP
#define LAGOC_REGISTRY_HPP

#include "lagoc/lq.hpp"
#include "lagoc/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lagoc {

class UnknownProblem : public Error {
public:
  using Error::Error;
};

/// f = u, C = u^2 / 2, (0, 0) -> (1, 0) on [0, 1].
SecondOrderOcp double_integrator();
LqProblem double_integrator_lq();

/// f = u, C = u^2 / 2 - q^2 / 2, (0, 0) -> (1, 0) on [0, 6]. Its Jacobi
/// equation is q'''' = q, so the first conjugate time solves
/// cos t cosh t = 1.
LqProblem min_effort_beam_lq(double T = 6.0);
SecondOrderOcp min_effort_beam(double T = 6.0);

/// f = -sin q + u, C = u^2 / 2 + q^2 / 2, (0, 0) -> (1, 0) on [0, 2].
SecondOrderOcp forced_pendulum();

/// Built-in problems by name; throws UnknownProblem.
SecondOrderOcp make_problem(const std::string &name);
std::vector<std::string> problem_names();

/// LQ data of a registry problem with the given boundary, if it has any.
std::optional<LqProblem> registry_lq(const std::string &name,
                                     const BoundaryData &boundary);

} // namespace lagoc

#endif // LAGOC_REGISTRY_HPP
