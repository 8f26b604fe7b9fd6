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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "uniterp/linalg.hpp"

using namespace uniterp;
using testing::max_abs;

TEST_CASE("matmul") {
  Rng rng = make_rng(1);
  const ComplexMatrix a = ginibre(4, rng), b = ginibre(4, rng);
  CHECK(max_abs(linalg::matmul(ComplexMatrix::Identity(4, 4), a) - a) == 0.0);
  ComplexMatrix p(2, 2), q(2, 2);
  p << Complex(0, 1), 0, 0, Complex(0, -1);
  q << Complex(0, -1), 0, 0, Complex(0, 1);
  CHECK(max_abs(linalg::matmul(p, q) - ComplexMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(linalg::matmul(a, b) - testing::triple_loop(a, b)) <= 1e-13);
  CHECK_THROWS_AS(linalg::matmul(a, ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("hermitian_eig") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 3;
  h(1, 1) = -1;
  EigenSystem e = linalg::hermitian_eig(h);
  CHECK(e.values(0) == doctest::Approx(-1));
  CHECK(e.values(1) == doctest::Approx(3));
  CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1));

  e = linalg::hermitian_eig(testing::pauli_x());
  CHECK(e.values(0) == doctest::Approx(-1));
  CHECK(e.values(1) == doctest::Approx(1));

  Rng rng = make_rng(2);
  h = random_hermitian(16, 1.0, rng);
  e = linalg::hermitian_eig(h);
  const double scale = e.values.cwiseAbs().maxCoeff();
  CHECK(max_abs(e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - h) <= 1e-12 * std::max(1.0, scale));
  CHECK(std::is_sorted(e.values.data(), e.values.data() + e.values.size()));
  CHECK(linalg::unitarity_error(e.vectors) <= 1e-12);

  h(0, 1) += 1e-6;
  CHECK_THROWS_AS(linalg::hermitian_eig(h), NotHermitianError);
}

static ComplexMatrix rebuild(const EigenSystem& e) { return linalg::phase_power(e, 1.0); }

TEST_CASE("unitary_log_eig known spectra") {
  EigenSystem e = linalg::unitary_log_eig(ComplexMatrix::Identity(3, 3));
  CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);

  ComplexMatrix w = ComplexMatrix::Zero(2, 2);
  w(0, 0) = std::polar(1.0, -kPi / 2);
  w(1, 1) = std::polar(1.0, kPi / 2);
  e = linalg::unitary_log_eig(w);
  std::vector<double> got{e.values(0), e.values(1)};
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(-kPi / 2));
  CHECK(got[1] == doctest::Approx(kPi / 2));

  // -I sits on the branch cut; the phase is reported as +pi.
  e = linalg::unitary_log_eig(-ComplexMatrix::Identity(2, 2));
  CHECK(e.values(0) == doctest::Approx(kPi));
  CHECK(linalg::phase_wrap_warning(e.values));
}

TEST_CASE("unitary_log_eig reconstruction") {
  Rng rng = make_rng(3);
  // Large phases (Schur route).
  const ComplexMatrix haar = haar_unitary(8, rng);
  EigenSystem e = linalg::unitary_log_eig(haar);
  CHECK(max_abs(rebuild(e) - haar) <= 1e-10);
  CHECK(linalg::unitarity_error(e.vectors) <= 1e-10);
  for (int k = 0; k < 8; ++k) CHECK((e.values(k) > -kPi && e.values(k) <= kPi));

  // Small phases (hermitian route), checked against the generator spectrum.
  const ComplexMatrix h = random_hermitian(16, 0.2, rng);
  const ComplexMatrix w = testing::pade_expm(h);
  e = linalg::unitary_log_eig(w);
  CHECK(max_abs(rebuild(e) - w) <= 1e-12);
  std::vector<double> phases(e.values.data(), e.values.data() + 16);
  const EigenSystem he = linalg::hermitian_eig(h);
  std::vector<double> energies(he.values.data(), he.values.data() + 16);
  std::sort(phases.begin(), phases.end());
  std::sort(energies.begin(), energies.end());
  for (int k = 0; k < 16; ++k) CHECK(phases[k] == doctest::Approx(energies[k]).epsilon(1e-10));

  // A near-degenerate cluster keeps a unitary basis.
  RealVector ph(6);
  ph << 0.3, 0.3, 0.3 + 1e-11, -1.0, 2.0, 2.0;
  const ComplexMatrix v = haar_unitary(6, rng);
  const ComplexMatrix wc = linalg::phase_power({ph, v}, 1.0);
  e = linalg::unitary_log_eig(wc);
  CHECK(linalg::unitarity_error(e.vectors) <= 1e-12);
  CHECK(max_abs(rebuild(e) - wc) <= 1e-10);

  CHECK_THROWS_AS(linalg::unitary_log_eig(2.0 * haar), NotUnitaryError);
}

TEST_CASE("fractional powers match the matrix logarithm") {
  Rng rng = make_rng(4);
  const ComplexMatrix w = testing::pade_expm(random_hermitian(8, 0.5, rng));
  const EigenSystem e = linalg::unitary_log_eig(w);
  for (double a : {0.0, 0.25, 0.5, 0.8, 1.0}) {
    const ComplexMatrix oracle = (a * ComplexMatrix(w.log())).exp();
    CHECK(max_abs(linalg::phase_power(e, a) - oracle) <= 1e-12);
  }
}

TEST_CASE("scale_rows_by_phases") {
  Rng rng = make_rng(5);
  const ComplexMatrix r = ginibre(6, rng);
  RealVector e(6);
  for (int k = 0; k < 6; ++k) e(k) = standard_normal(rng);
  CHECK(max_abs(linalg::scale_rows_by_phases(e, 0.0, r) - r) == 0.0);
  CHECK(max_abs(linalg::scale_rows_by_phases(RealVector::Constant(2, kPi), 1.0, ComplexMatrix::Identity(2, 2)) +
                ComplexMatrix::Identity(2, 2)) <= 1e-15);
  const double a = 0.37;
  ComplexMatrix diag = ComplexMatrix::Zero(6, 6);
  for (int k = 0; k < 6; ++k) diag(k, k) = std::exp(Complex(0, -e(k) * a));
  CHECK(max_abs(linalg::scale_rows_by_phases(e, a, r) - testing::triple_loop(diag, r)) <= 1e-14);
  CHECK_THROWS_AS(linalg::scale_rows_by_phases(RealVector::Zero(5), a, r), DimensionError);
}

TEST_CASE("qr_unitary") {
  CHECK(max_abs(linalg::qr_unitary(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)) <= 1e-15);
  CHECK(max_abs(linalg::qr_unitary(2.0 * ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)) <= 1e-15);
  Rng rng = make_rng(6);
  const ComplexMatrix x = ginibre(16, rng);
  const ComplexMatrix q = linalg::qr_unitary(x);
  CHECK(linalg::unitarity_error(q) <= 1e-12);
  // R = Q^dagger X is upper triangular with a positive real diagonal.
  const ComplexMatrix r = q.adjoint() * x;
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(r(i, i).imag()) <= 1e-12);
    CHECK(r(i, i).real() > 0);
    for (int j = 0; j < i; ++j) CHECK(std::abs(r(i, j)) <= 1e-12);
  }
  ComplexMatrix singular = x;
  singular.col(3) = singular.col(1);
  CHECK_THROWS_AS(linalg::qr_unitary(singular), RankDeficientError);
}
