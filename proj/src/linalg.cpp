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

#include "uniterp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

// LAPACKE defaults to the C99 complex type; route it through std::complex.
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace uniterp::linalg {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) +
                         " and " + std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  out.noalias() = a * b;
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& h) {
  return max_abs(h - h.adjoint());
}

double unitarity_error(const ComplexMatrix& u) {
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols()));
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("hermitian_eig: matrix not square");
  const double herr = hermiticity_error(h);
  if (herr > 1e-12 * std::max(1.0, max_abs(h))) {
    throw NotHermitianError("hermitian_eig: max|H - H^dagger| = " + std::to_string(herr));
  }
  const lapack_int n = static_cast<lapack_int>(h.rows());
  EigenSystem out;
  out.vectors = h;  // overwritten with eigenvectors
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n,
                                         out.values.data());
  if (info != 0) {
    throw ConvergenceError("hermitian_eig: zheevd returned info = " + std::to_string(info));
  }
  return out;
}

EigenSystem unitary_log_eig(const ComplexMatrix& w) {
  if (w.rows() != w.cols()) throw DimensionError("unitary_log_eig: matrix not square");
  const double uerr = unitarity_error(w);
  if (uerr > 1e-10) {
    throw NotUnitaryError("unitary_log_eig: max|W^dagger W - I| = " + std::to_string(uerr));
  }
  const Eigen::Index d = w.rows();

  // Fast path: W = V exp(-iE) V^dagger gives (W - W^dagger)/2i = -V sin(E) V^dagger,
  // and sin is injective on |E| < pi/2, so a hermitian solver recovers V. The
  // phases come from V^dagger W V, whose off-diagonal part certifies the basis.
  {
    const ComplexMatrix k = (w - w.adjoint()) * Complex(0.0, -0.5);
    EigenSystem out = hermitian_eig(k);
    if (out.values.size() == 0 || out.values.cwiseAbs().maxCoeff() < 0.98) {
      const ComplexMatrix t = out.vectors.adjoint() * w * out.vectors;
      double off = 0.0;
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index r = 0; r < d; ++r)
          if (r != c) off = std::max(off, std::abs(t(r, c)));
      if (off <= 1e-13) {
        for (Eigen::Index j = 0; j < d; ++j) out.values(j) = -std::arg(t(j, j));
        if (out.values.size() == 0 || out.values.cwiseAbs().maxCoeff() < 0.5 * kPi) return out;
      }
    }
  }

  Eigen::ComplexSchur<ComplexMatrix> schur(w, true);
  if (schur.info() != Eigen::Success) throw ConvergenceError("unitary_log_eig: Schur failed");

  EigenSystem out;
  out.values.resize(d);
  const ComplexMatrix& t = schur.matrixT();
  for (Eigen::Index k = 0; k < d; ++k) {
    double e = -std::arg(t(k, k));
    if (e <= -kPi) e = kPi;  // keep the branch (-pi, pi]
    out.values(k) = e;
  }
  out.vectors = schur.matrixU();
  // Accumulated Householder rotations drift slightly on degenerate clusters.
  if (unitarity_error(out.vectors) > 1e-12) out.vectors = qr_unitary(out.vectors);
  return out;
}

bool phase_wrap_warning(const RealVector& phases) {
  return phases.size() > 0 && phases.cwiseAbs().maxCoeff() > kPhaseWrapLimit;
}

void scale_rows_in_place(const RealVector& phases, double a, ComplexMatrix& r) {
  if (phases.size() != r.rows()) throw DimensionError("scale_rows: length mismatch");
  ComplexVector f(phases.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) f(k) = std::polar(1.0, -phases(k) * a);
  // Column sweeps keep the column-major storage contiguous.
  r.array().colwise() *= f.array();
}

ComplexMatrix scale_rows_by_phases(const RealVector& phases, double a, const ComplexMatrix& r) {
  ComplexMatrix out = r;
  scale_rows_in_place(phases, a, out);
  return out;
}

void scale_in_place(const RealVector& phases, double a, ComplexVector& v) {
  if (phases.size() != v.size()) throw DimensionError("scale: length mismatch");
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) *= std::polar(1.0, -phases(k) * a);
}

ComplexMatrix qr_unitary(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("qr_unitary: matrix not square");
  Eigen::HouseholderQR<ComplexMatrix> qr(x);
  const ComplexMatrix& packed = qr.matrixQR();
  const Eigen::Index d = x.rows();
  const double scale = std::max(max_abs(x), 1e-300);
  ComplexMatrix q = qr.householderQ();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex r = packed(k, k);
    if (std::abs(r) <= 1e-13 * scale) throw RankDeficientError("qr_unitary: rank deficient input");
    q.col(k) *= r / std::abs(r);
  }
  return q;
}

ComplexMatrix phase_power(const EigenSystem& eig, double a) {
  return eig.vectors * scale_rows_by_phases(eig.values, a, eig.vectors.adjoint());
}

}  // namespace uniterp::linalg
