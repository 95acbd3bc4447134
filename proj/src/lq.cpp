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

#include "lagoc/lq.hpp"
#include "lagoc/linalg.hpp"

#include <Eigen/Cholesky>

namespace lagoc {

namespace {

void require_shape(const Mat &a, Eigen::Index rows, Eigen::Index cols,
                   const char *name) {
  if (a.rows() != rows || a.cols() != cols)
    throw Error(std::string("LqProblem: ") + name + " has shape " +
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                ", expected " + std::to_string(rows) + "x" +
                std::to_string(cols));
}

Mat symmetrized(const Mat &a, const char *name,
                std::vector<std::string> &notes) {
  Mat s = 0.5 * (a + a.transpose());
  if ((s - a).cwiseAbs().maxCoeff() > 0.0)
    notes.push_back(std::string(name) + " symmetrized");
  return s;
}

bool positive_definite(const Mat &a) {
  if (a.size() == 0)
    return false;
  Eigen::LLT<Mat> llt(a);
  return llt.info() == Eigen::Success;
}

} // namespace

LqProblem::LqProblem(Mat Q1, Mat Q2, Mat R, Mat A1, Mat A2, Mat B,
                     BoundaryData boundary)
    : boundary_(std::move(boundary)) {
  const Eigen::Index nq = A1.rows();
  const Eigen::Index m = B.cols();
  if (nq == 0 || m == 0)
    throw Error("LqProblem: empty dimensions");
  require_shape(A1, nq, nq, "A1");
  require_shape(A2, nq, nq, "A2");
  require_shape(B, nq, m, "B");
  require_shape(Q1, nq, nq, "Q1");
  require_shape(Q2, nq, nq, "Q2");
  require_shape(R, m, m, "R");
  for (const Mat *a : {&Q1, &Q2, &R, &A1, &A2, &B})
    if (!a->allFinite())
      throw NonFiniteError("LqProblem: non-finite matrix entry");

  Q1_ = symmetrized(Q1, "Q1", notes_);
  Q2_ = symmetrized(Q2, "Q2", notes_);
  R_ = symmetrized(R, "R", notes_);
  A1_ = std::move(A1);
  A2_ = std::move(A2);
  B_ = std::move(B);

  Eigen::LLT<Mat> llt(R_);
  if (llt.info() != Eigen::Success)
    throw SingularHessian("LqProblem: R is not positive definite");
  brb_ = B_ * llt.solve(B_.transpose());

  if (!positive_definite(Q1_))
    notes_.push_back("deviation: Q1 not positive definite");
  if (!positive_definite(Q2_))
    notes_.push_back("deviation: Q2 not positive definite");
}

KalmanResult kalman_check(const LqProblem &lq) {
  const int nq = lq.nq();
  const int n = 2 * nq;
  Mat At = Mat::Zero(n, n);
  At.topRightCorner(nq, nq).setIdentity();
  At.bottomLeftCorner(nq, nq) = lq.A1();
  At.bottomRightCorner(nq, nq) = lq.A2();
  Mat Bt = Mat::Zero(n, lq.m());
  Bt.bottomRows(nq) = lq.B();

  Mat block(n, n * lq.m());
  Mat col = Bt;
  for (int k = 0; k < n; ++k) {
    block.middleCols(k * lq.m(), lq.m()) = col;
    col = At * col;
  }
  KalmanResult r;
  r.rank = numerical_rank(block, 1e-10);
  r.satisfied = r.rank == n;
  return r;
}

LinearSystemMatrix assemble_hamiltonian_system(const LqProblem &lq) {
  const int nq = lq.nq();
  const Mat I = Mat::Identity(nq, nq);
  Mat a = Mat::Zero(4 * nq, 4 * nq);
  // q' = v
  a.block(0, nq, nq, nq) = I;
  // v' = A1 q + A2 v + B R^-1 B' lambda_v
  a.block(nq, 0, nq, nq) = lq.A1();
  a.block(nq, nq, nq, nq) = lq.A2();
  a.block(nq, 3 * nq, nq, nq) = lq.BRB();
  // lambda_q' = Q1 q - A1' lambda_v
  a.block(2 * nq, 0, nq, nq) = lq.Q1();
  a.block(2 * nq, 3 * nq, nq, nq) = -lq.A1().transpose();
  // lambda_v' = Q2 v - lambda_q - A2' lambda_v
  a.block(3 * nq, nq, nq, nq) = lq.Q2();
  a.block(3 * nq, 2 * nq, nq, nq) = -I;
  a.block(3 * nq, 3 * nq, nq, nq) = -lq.A2().transpose();
  return {a, Ordering::ham};
}

LinearSystemMatrix assemble_el_system(const LqProblem &lq) {
  const int nq = lq.nq();
  const Mat I = Mat::Identity(nq, nq);
  Mat a = Mat::Zero(4 * nq, 4 * nq);
  a.block(0, nq, nq, nq) = I;
  a.block(nq, 0, nq, nq) = lq.A1();
  a.block(nq, nq, nq, nq) = lq.A2();
  a.block(nq, 2 * nq, nq, nq) = lq.BRB();
  a.block(2 * nq, 3 * nq, nq, nq) = I;
  a.block(3 * nq, 0, nq, nq) = lq.Q2() * lq.A1() - lq.Q1();
  a.block(3 * nq, nq, nq, nq) = lq.Q2() * lq.A2();
  a.block(3 * nq, 2 * nq, nq, nq) = lq.A1().transpose() + lq.Q2() * lq.BRB();
  a.block(3 * nq, 3 * nq, nq, nq) = -lq.A2().transpose();
  return {a, Ordering::el};
}

Mat lq_transform_matrix(const LqProblem &lq) {
  const int nq = lq.nq();
  const Mat I = Mat::Identity(nq, nq);
  Mat t = Mat::Zero(4 * nq, 4 * nq);
  t.block(0, 0, nq, nq) = I;
  t.block(nq, nq, nq, nq) = I;
  t.block(2 * nq, nq, nq, nq) = lq.Q2();
  t.block(2 * nq, 2 * nq, nq, nq) = -lq.A2().transpose();
  t.block(2 * nq, 3 * nq, nq, nq) = -I;
  t.block(3 * nq, 2 * nq, nq, nq) = I;
  return t;
}

Vec lq_transform(const LqProblem &lq, const Vec &el) {
  const int nq = lq.nq();
  if (el.size() != 4 * nq)
    throw InvalidVariation("lq_transform: wrong vector length");
  Vec out(4 * nq);
  out.head(2 * nq) = el.head(2 * nq);
  out.segment(2 * nq, nq) = lq.Q2() * el.segment(nq, nq) -
                            lq.A2().transpose() * el.segment(2 * nq, nq) -
                            el.segment(3 * nq, nq);
  out.segment(3 * nq, nq) = el.segment(2 * nq, nq);
  return out;
}

Vec lq_transform_inverse(const LqProblem &lq, const Vec &ham) {
  const int nq = lq.nq();
  if (ham.size() != 4 * nq)
    throw InvalidVariation("lq_transform_inverse: wrong vector length");
  Vec out(4 * nq);
  out.head(2 * nq) = ham.head(2 * nq);
  const Vec dkappa = ham.segment(3 * nq, nq);
  out.segment(2 * nq, nq) = dkappa;
  out.segment(3 * nq, nq) = lq.Q2() * ham.segment(nq, nq) -
                            lq.A2().transpose() * dkappa -
                            ham.segment(2 * nq, nq);
  return out;
}

SecondOrderOcp to_generic(const LqProblem &lq, const std::string &name) {
  const int nq = lq.nq();
  const int m = lq.m();
  const int n = 2 * nq + m;
  Mat W = Mat::Zero(n, n);
  W.block(0, 0, nq, nq) = lq.Q1();
  W.block(nq, nq, nq, nq) = lq.Q2();
  W.block(2 * nq, 2 * nq, m, m) = lq.R();
  Mat F(nq, n);
  F << lq.A1(), lq.A2(), lq.B();

  DifferentiableMap cost(
      1,
      [W, nq, m](const Vec &q, const Vec &v, const Vec &u) {
        Vec x(2 * nq + m);
        x << q, v, u;
        return Vec::Constant(1, 0.5 * x.dot(W * x));
      },
      [W, nq, m](const Vec &q, const Vec &v, const Vec &u) {
        Vec x(2 * nq + m);
        x << q, v, u;
        return Mat((W * x).transpose());
      },
      [W](const Vec &, const Vec &, const Vec &, const Vec &w) {
        return Mat(w(0) * W);
      });
  DifferentiableMap dynamics(
      nq,
      [F, nq, m](const Vec &q, const Vec &v, const Vec &u) {
        Vec x(2 * nq + m);
        x << q, v, u;
        return Vec(F * x);
      },
      [F](const Vec &, const Vec &, const Vec &) { return F; },
      [n](const Vec &, const Vec &, const Vec &, const Vec &) {
        return Mat(Mat::Zero(n, n));
      });

  SecondOrderOcp p(name, Dims{nq, m}, std::move(cost), std::move(dynamics),
                   lq.boundary());
  return p.with_notes(lq.notes());
}

} // namespace lagoc
