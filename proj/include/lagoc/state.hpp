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

#ifndef LAGOC_STATE_HPP
#define LAGOC_STATE_HPP

#include "lagoc/types.hpp"

namespace lagoc {

/// Coordinates (q, kappa, v_q, v_kappa, u) on the Lagrangian side. With
/// y = (q, kappa) the velocities are ydot = (v_q, v_kappa).
struct ExtendedPoint {
  Vec q, kappa, vq, vkappa, u;

  Vec y() const;
  Vec ydot() const;
};

/// Euler-Lagrange phase state (q, qdot, kappa, kappadot), stored flat in that
/// order for integration.
struct ElState {
  Vec q, qdot, kappa, kappadot;

  Vec pack() const;
  static ElState unpack(const Vec &flat, int nq);
  ExtendedPoint with_control(const Vec &u) const {
    return {q, kappa, qdot, kappadot, u};
  }
};

/// Hamiltonian phase point x = (q, v), lambda = (lambda_q, lambda_v), flat
/// order (q, v, lambda_q, lambda_v).
struct PhasePoint {
  Vec q, v, lambda_q, lambda_v;

  Vec pack() const;
  static PhasePoint unpack(const Vec &flat, int nq);
};

/// Phase point together with a control value, the image of the extended
/// Tulczyjew map.
struct ExtendedPhasePoint {
  PhasePoint point;
  Vec u;
};

} // namespace lagoc

#endif // LAGOC_STATE_HPP
