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

#include "lagoc/extremal.hpp"

#include <algorithm>

namespace lagoc {

Vec ExtendedPoint::y() const {
  Vec out(q.size() + kappa.size());
  out << q, kappa;
  return out;
}

Vec ExtendedPoint::ydot() const {
  Vec out(vq.size() + vkappa.size());
  out << vq, vkappa;
  return out;
}

Vec ElState::pack() const {
  Vec out(4 * q.size());
  out << q, qdot, kappa, kappadot;
  return out;
}

ElState ElState::unpack(const Vec &flat, int nq) {
  return {flat.segment(0, nq), flat.segment(nq, nq), flat.segment(2 * nq, nq),
          flat.segment(3 * nq, nq)};
}

Vec PhasePoint::pack() const {
  Vec out(4 * q.size());
  out << q, v, lambda_q, lambda_v;
  return out;
}

PhasePoint PhasePoint::unpack(const Vec &flat, int nq) {
  return {flat.segment(0, nq), flat.segment(nq, nq), flat.segment(2 * nq, nq),
          flat.segment(3 * nq, nq)};
}

ElState Extremal::state_at(double t) const {
  return ElState::unpack(trajectory(t), nq);
}

const Vec &Extremal::control_hint(double t) const {
  const auto &ts = trajectory.times();
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  std::size_t i = static_cast<std::size_t>(it - ts.begin());
  if (i >= ts.size())
    i = ts.size() - 1;
  if (i > 0 && (t - ts[i - 1]) < (ts[i] - t))
    --i;
  return controls[i];
}

std::vector<double> Extremal::uniform_grid(std::size_t n) const {
  std::vector<double> grid(n + 1);
  const double t0 = trajectory.t0(), t1 = trajectory.t_end();
  for (std::size_t i = 0; i <= n; ++i)
    grid[i] = (i == n) ? t1
                       : t0 + (t1 - t0) * static_cast<double>(i) /
                                  static_cast<double>(n);
  return grid;
}

} // namespace lagoc
