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

#ifndef LAGOC_TYPES_HPP
#define LAGOC_TYPES_HPP

#include <Eigen/Dense>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagoc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonFiniteError : public Error {
public:
  using Error::Error;
};

/// The control Hessian of the Lagrangian (or Hamiltonian) could not be
/// inverted. Signals Legendre degeneracy.
class SingularHessian : public Error {
public:
  using Error::Error;
};

/// Newton on the optimality equation did not reach tolerance.
class MaxIterations : public Error {
public:
  using Error::Error;
};

class LegendreViolation : public Error {
public:
  using Error::Error;
};

/// A variation path handed to the second-variation functional does not
/// vanish at the endpoints.
class InvalidVariation : public Error {
public:
  using Error::Error;
};

inline bool all_finite(const Vec &v) { return v.allFinite(); }

/// Three significant digits in scientific notation, for messages.
inline std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

} // namespace lagoc

#endif // LAGOC_TYPES_HPP
