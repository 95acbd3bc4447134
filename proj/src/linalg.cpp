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

#include "lagoc/linalg.hpp"

#include <cmath>

namespace lagoc {

double SignedDeterminant::value() const {
  return sign == 0 ? 0.0 : static_cast<double>(sign) * std::exp(log_abs);
}

SignedDeterminant lu_determinant(const Mat &a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("lu_determinant: matrix not square");
  Mat lu = a;
  const Eigen::Index n = lu.rows();
  SignedDeterminant det;
  det.sign = 1;
  det.log_abs = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p;
    const double pivot = lu.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
    p += k;
    if (pivot == 0.0)
      return SignedDeterminant{};
    if (p != k) {
      lu.row(k).swap(lu.row(p));
      det.sign = -det.sign;
    }
    const double d = lu(k, k);
    if (d < 0.0)
      det.sign = -det.sign;
    det.log_abs += std::log(std::abs(d));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double l = lu(i, k) / d;
      lu.row(i).tail(n - k - 1) -= l * lu.row(k).tail(n - k - 1);
    }
  }
  return det;
}

int numerical_rank(const Mat &a, double rel_tol) {
  const double scale = a.norm();
  if (scale == 0.0 || a.size() == 0)
    return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(a);
  const Mat &r = qr.matrixQR();
  const Eigen::Index k = std::min(r.rows(), r.cols());
  int rank = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    if (std::abs(r(i, i)) > rel_tol * scale)
      ++rank;
  return rank;
}

Mat solve_square(const Mat &a, const Mat &b) {
  Eigen::PartialPivLU<Mat> lu(a);
  const Mat &f = lu.matrixLU();
  const double scale = a.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    if (!(std::abs(f(i, i)) > 1e-14 * scale))
      throw SingularHessian("singular matrix in linear solve");
  return lu.solve(b);
}

} // namespace lagoc
