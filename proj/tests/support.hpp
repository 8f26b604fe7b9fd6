// Copyright 2026 The uniterp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Small independent reference implementations shared by the unit tests.

#pragma once

#include <cmath>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "uniterp/common.hpp"
#include "uniterp/hamiltonian.hpp"
#include "uniterp/random.hpp"

namespace testing {

using namespace uniterp;

inline ComplexMatrix triple_loop(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// exp(-iH) through the Pade-based matrix exponential, no eigensolver.
inline ComplexMatrix pade_expm(const ComplexMatrix& h) {
  const ComplexMatrix a = Complex(0.0, -1.0) * h;
  return a.exp();
}

inline ComplexMatrix random_diagonal(int d, Rng& rng, double scale = 1.0) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = scale * standard_normal(rng);
  return m;
}

/// Two-unitary geodesic U0 (U0^dagger U1)^a computed with the principal
/// matrix logarithm.
inline ComplexMatrix geodesic(const ComplexMatrix& u0, const ComplexMatrix& u1, double a) {
  const ComplexMatrix w = u1 * u0.adjoint();
  const ComplexMatrix l = w.log();
  return (a * l).exp() * u0;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
