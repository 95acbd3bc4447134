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

#ifndef LAGOC_LQ_HPP
#define LAGOC_LQ_HPP

#include "lagoc/problem.hpp"

#include <string>
#include <vector>

namespace lagoc {

/// min int 1/2 (q'Q1q + qdot'Q2qdot + u'Ru) dt, qddot = A1q + A2qdot + Bu.
///
/// The weights are symmetrized on construction. R must be positive definite;
/// Q1 and Q2 may be indefinite or zero, which is recorded in notes().
class LqProblem {
public:
  LqProblem(Mat Q1, Mat Q2, Mat R, Mat A1, Mat A2, Mat B,
            BoundaryData boundary);

  int nq() const { return static_cast<int>(A1_.rows()); }
  int m() const { return static_cast<int>(B_.cols()); }

  const Mat &Q1() const { return Q1_; }
  const Mat &Q2() const { return Q2_; }
  const Mat &R() const { return R_; }
  const Mat &A1() const { return A1_; }
  const Mat &A2() const { return A2_; }
  const Mat &B() const { return B_; }
  const BoundaryData &boundary() const { return boundary_; }
  /// B R^-1 B'.
  const Mat &BRB() const { return brb_; }

  const std::vector<std::string> &notes() const { return notes_; }

private:
  Mat Q1_, Q2_, R_, A1_, A2_, B_, brb_;
  BoundaryData boundary_;
  std::vector<std::string> notes_;
};

struct KalmanResult {
  int rank = 0;
  bool satisfied = false;
};

/// Rank of [Bt, At Bt, ..., At^(2nq-1) Bt] with At = [[0, I], [A1, A2]],
/// Bt = [0; B].
KalmanResult kalman_check(const LqProblem &lq);

enum class Ordering { ham, el };

/// ham: (q, v, lambda_q, lambda_v); el: (q, qdot, kappa, kappadot).
struct LinearSystemMatrix {
  Mat matrix;
  Ordering ordering = Ordering::ham;

  Vec apply(const Vec &x) const { return matrix * x; }
};

LinearSystemMatrix assemble_hamiltonian_system(const LqProblem &lq);
LinearSystemMatrix assemble_el_system(const LqProblem &lq);

/// (dq, dqdot, dkappa, dkappadot) -> (dq, dv, dlambda_q, dlambda_v) with
/// dlambda_v = dkappa, dlambda_q = Q2 dqdot - A2' dkappa - dkappadot.
Vec lq_transform(const LqProblem &lq, const Vec &el);
Vec lq_transform_inverse(const LqProblem &lq, const Vec &ham);
/// Matrix of lq_transform.
Mat lq_transform_matrix(const LqProblem &lq);

/// Generic problem with analytic derivatives.
SecondOrderOcp to_generic(const LqProblem &lq, const std::string &name = "lq");

} // namespace lagoc

#endif // LAGOC_LQ_HPP
