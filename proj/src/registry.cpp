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

#include "lagoc/registry.hpp"

#include <cmath>

namespace lagoc {

namespace {

Vec scalar(double x) { return Vec::Constant(1, x); }

BoundaryData unit_transfer(double T) {
  return {scalar(0.0), scalar(0.0), scalar(1.0), scalar(0.0), T};
}

} // namespace

LqProblem double_integrator_lq() {
  const Mat z = Mat::Zero(1, 1);
  const Mat one = Mat::Identity(1, 1);
  return LqProblem(z, z, one, z, z, one, unit_transfer(1.0));
}

SecondOrderOcp double_integrator() {
  return to_generic(double_integrator_lq(), "double_integrator").with_notes({});
}

LqProblem min_effort_beam_lq(double T) {
  const Mat z = Mat::Zero(1, 1);
  const Mat one = Mat::Identity(1, 1);
  return LqProblem(-one, z, one, z, z, one, unit_transfer(T));
}

SecondOrderOcp min_effort_beam(double T) {
  return to_generic(min_effort_beam_lq(T), "min_effort_beam");
}

SecondOrderOcp forced_pendulum() {
  DifferentiableMap cost(
      1,
      [](const Vec &q, const Vec &, const Vec &u) {
        return scalar(0.5 * u(0) * u(0) + 0.5 * q(0) * q(0));
      },
      [](const Vec &q, const Vec &, const Vec &u) {
        Mat j(1, 3);
        j << q(0), 0.0, u(0);
        return j;
      },
      [](const Vec &, const Vec &, const Vec &, const Vec &w) {
        Mat h = Mat::Zero(3, 3);
        h(0, 0) = w(0);
        h(2, 2) = w(0);
        return h;
      });
  DifferentiableMap dynamics(
      1,
      [](const Vec &q, const Vec &, const Vec &u) {
        return scalar(-std::sin(q(0)) + u(0));
      },
      [](const Vec &q, const Vec &, const Vec &) {
        Mat j(1, 3);
        j << -std::cos(q(0)), 0.0, 1.0;
        return j;
      },
      [](const Vec &q, const Vec &, const Vec &, const Vec &w) {
        Mat h = Mat::Zero(3, 3);
        h(0, 0) = w(0) * std::sin(q(0));
        return h;
      });
  return SecondOrderOcp("forced_pendulum", Dims{1, 1}, std::move(cost),
                        std::move(dynamics), unit_transfer(2.0));
}

SecondOrderOcp make_problem(const std::string &name) {
  if (name == "double_integrator")
    return double_integrator();
  if (name == "min_effort_beam")
    return min_effort_beam();
  if (name == "forced_pendulum")
    return forced_pendulum();
  throw UnknownProblem("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() {
  return {"double_integrator", "min_effort_beam", "forced_pendulum"};
}

std::optional<LqProblem> registry_lq(const std::string &name,
                                     const BoundaryData &boundary) {
  std::optional<LqProblem> base;
  if (name == "double_integrator")
    base = double_integrator_lq();
  else if (name == "min_effort_beam")
    base = min_effort_beam_lq();
  else
    return std::nullopt;
  return LqProblem(base->Q1(), base->Q2(), base->R(), base->A1(), base->A2(),
                   base->B(), boundary);
}

} // namespace lagoc
