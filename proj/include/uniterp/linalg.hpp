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

#pragma once

#include "uniterp/common.hpp"

namespace uniterp {

/// Eigenvalues (or eigenphases) together with a column-unitary basis.
///
/// For a hermitian H the contract is H = V diag(E) V^dagger with E ascending.
/// For a unitary W it is W = V exp(-i diag(E)) V^dagger with E in (-pi, pi].
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;
};

namespace linalg {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Dense hermitian eigendecomposition (LAPACK divide and conquer).
EigenSystem hermitian_eig(const ComplexMatrix& h);

/// Eigenphases and eigenvectors of a unitary. Small phases (|E| < pi/2, the
/// usual case for displacement operators) go through a hermitian solve of
/// the skew part; otherwise a complex Schur decomposition is used, whose
/// triangular factor is diagonal for a normal matrix.
EigenSystem unitary_log_eig(const ComplexMatrix& w);

/// True when any phase sits within 1e-6 of the +-pi branch cut.
bool phase_wrap_warning(const RealVector& phases);

/// Returns diag(exp(-i E a)) * r without forming the diagonal matrix.
ComplexMatrix scale_rows_by_phases(const RealVector& phases, double a,
                                   const ComplexMatrix& r);
void scale_rows_in_place(const RealVector& phases, double a, ComplexMatrix& r);
void scale_in_place(const RealVector& phases, double a, ComplexVector& v);

/// Q factor of X = QR, with columns rephased so diag(R) is real positive.
ComplexMatrix qr_unitary(const ComplexMatrix& x);

/// V exp(-i diag(E) a) V^dagger.
ComplexMatrix phase_power(const EigenSystem& eig, double a);

double max_abs(const ComplexMatrix& m);
double hermiticity_error(const ComplexMatrix& h);
double unitarity_error(const ComplexMatrix& u);

}  // namespace linalg
}  // namespace uniterp
