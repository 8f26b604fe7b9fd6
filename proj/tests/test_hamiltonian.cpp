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

#include <boost/math/distributions/normal.hpp>

#include "support.hpp"
#include "uniterp/linalg.hpp"

using namespace uniterp;
using testing::max_abs;

namespace {

ParametricHamiltonian pauli_model() {
  return ParametricHamiltonian(ComplexMatrix::Zero(2, 2), {testing::pauli_z()}, {{0.0, 1.0}});
}

}  // namespace

TEST_CASE("construction validates inputs") {
  Rng rng = make_rng(1);
  const ComplexMatrix h = random_hermitian(4, 1.0, rng);
  CHECK_THROWS_AS(ParametricHamiltonian(h, {}, {}), Error);
  CHECK_THROWS_AS(ParametricHamiltonian(h, {ComplexMatrix::Identity(3, 3)}, {{0, 1}}), DimensionError);
  ComplexMatrix bad = h;
  bad(0, 1) += 0.1;
  CHECK_THROWS_AS(ParametricHamiltonian(h, {bad}, {{0, 1}}), NotHermitianError);
  CHECK_THROWS_AS(ParametricHamiltonian(h, {h}, {{1, 1}}), Error);
}

TEST_CASE("assemble") {
  const auto model = pauli_model();
  CHECK(max_abs(assemble(model, RealVector::Zero(1))) == 0.0);
  RealVector c(1);
  c << 0.5;
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = 0.5;
  expect(1, 1) = -0.5;
  CHECK(max_abs(assemble(model, c) - expect) == 0.0);
  CHECK_THROWS_AS(assemble(model, RealVector::Zero(2)), DimensionError);
  c << 2.0;
  CHECK_THROWS_AS(assemble(model, c, true), OutOfBoundsError);

  const auto ham = random_hamiltonian({6, 1.0, 9}, 3, std::vector<Bounds>(3, {0, 1}));
  Rng rng = make_rng(2);
  RealVector a(3), b(3);
  for (int p = 0; p < 3; ++p) a(p) = uniform01(rng), b(p) = uniform01(rng);
  ComplexMatrix oracle = ham.drift();
  for (int p = 0; p < 3; ++p)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) oracle(i, j) += a(p) * ham.term(p)(i, j);
  CHECK(max_abs(assemble(ham, a) - oracle) <= 1e-15);
  // Linearity.
  CHECK(max_abs(assemble(ham, a) + assemble(ham, b) - assemble(ham, RealVector::Zero(3)) -
                assemble(ham, a + b)) <= 1e-14);
}

TEST_CASE("exact_unitary") {
  const auto model = pauli_model();
  CHECK(max_abs(exact_unitary(model, RealVector::Zero(1)) - ComplexMatrix::Identity(2, 2)) <= 1e-15);
  const ParametricHamiltonian x(ComplexMatrix::Zero(2, 2), {kPi * testing::pauli_x()}, {{0, 1}});
  RealVector one(1);
  one << 1.0;
  CHECK(max_abs(exact_unitary(x, one) + ComplexMatrix::Identity(2, 2)) <= 1e-13);

  const auto ham = random_hamiltonian({8, kPi / 2, 3}, 2, std::vector<Bounds>(2, {0, 1}));
  RealVector c(2);
  c << 0.3, 0.7;
  const ComplexMatrix u = exact_unitary(ham, c);
  CHECK(linalg::unitarity_error(u) <= 1e-12);
  CHECK(max_abs(u - testing::pade_expm(assemble(ham, c))) <= 1e-11);
  // Spectral calculus: eigenphases of U are the energies modulo 2 pi.
  const EigenSystem he = linalg::hermitian_eig(assemble(ham, c));
  const ComplexMatrix diag = he.vectors.adjoint() * u * he.vectors;
  for (int k = 0; k < 8; ++k) CHECK(std::abs(diag(k, k) - std::polar(1.0, -he.values(k))) <= 1e-12);
}

TEST_CASE("random_hamiltonian determinism and spectrum") {
  const std::vector<Bounds> b(2, {0, 0.1});
  const auto h1 = random_hamiltonian({16, kPi / 2, 11}, 2, b);
  const auto h2 = random_hamiltonian({16, kPi / 2, 11}, 2, b);
  CHECK(max_abs(h1.drift() - h2.drift()) == 0.0);
  CHECK(max_abs(h1.term(1) - h2.term(1)) == 0.0);
  CHECK(max_abs(h1.term(0) - random_hamiltonian({16, kPi / 2, 12}, 2, b).term(0)) > 0.1);

  // Sample std of drift eigenvalues and a pooled KS test against N(0, sigma^2).
  const double sigma = kPi / 2;
  std::vector<double> pooled;
  int in_band = 0;
  double mean_sd = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto h = random_hamiltonian({16, sigma, static_cast<std::uint64_t>(100 + k)}, 1, {{0, 1}});
    const RealVector e = linalg::hermitian_eig(h.drift()).values;
    const double mean = e.mean();
    const double sd = std::sqrt((e.array() - mean).square().sum() / 15.0);
    in_band += sd >= 1.18 && sd <= 1.96;
    mean_sd += sd / 100;
    for (int i = 0; i < 16; ++i) pooled.push_back(e(i));
    const RealVector t = linalg::hermitian_eig(h.term(0)).values;
    for (int i = 0; i < 16; ++i) pooled.push_back(t(i));
  }
  CHECK((mean_sd >= 1.18 && mean_sd <= 1.96));
  // Fraction of single draws inside the band versus direct sampling of
  // 16 normal variates.
  Rng ref = make_rng(99);
  constexpr int kRef = 20000;
  int ref_in = 0;
  for (int k = 0; k < kRef; ++k) {
    double s1 = 0, s2 = 0;
    for (int i = 0; i < 16; ++i) {
      const double x = sigma * standard_normal(ref);
      s1 += x;
      s2 += x * x;
    }
    const double sd = std::sqrt((s2 - s1 * s1 / 16) / 15);
    ref_in += sd >= 1.18 && sd <= 1.96;
  }
  const double p_ref = static_cast<double>(ref_in) / kRef;
  CHECK(std::abs(in_band / 100.0 - p_ref) <= 3 * std::sqrt(p_ref * (1 - p_ref) / 100));
  std::sort(pooled.begin(), pooled.end());
  const boost::math::normal_distribution<double> normal(0.0, sigma);
  double ks = 0.0;
  const double m = static_cast<double>(pooled.size());
  for (size_t i = 0; i < pooled.size(); ++i) {
    const double f = boost::math::cdf(normal, pooled[i]);
    ks = std::max({ks, std::abs(f - i / m), std::abs(f - (i + 1) / m)});
  }
  CHECK(ks < 1.628 / std::sqrt(m));  // alpha = 0.01
}

TEST_CASE("orthogonalized terms") {
  const auto h = random_hamiltonian({8, 1.0, 5}, 3, std::vector<Bounds>(3, {0, 1}), true);
  for (int p = 0; p < 3; ++p) {
    CHECK(std::abs((h.drift() * h.term(p)).trace()) <= 1e-10);
    for (int q = 0; q < p; ++q) CHECK(std::abs((h.term(q) * h.term(p)).trace()) <= 1e-10);
  }
}

TEST_CASE("haar_unitary") {
  Rng rng = make_rng(7);
  const ComplexMatrix one = haar_unitary(1, rng);
  CHECK(std::abs(std::abs(one(0, 0)) - 1.0) <= 1e-15);
  CHECK(linalg::unitarity_error(haar_unitary(64, rng)) <= 1e-12);
  double moment = 0.0;
  for (int k = 0; k < 2000; ++k) moment += std::norm(haar_unitary(8, rng).trace()) / 2000;
  CHECK(moment == doctest::Approx(1.0).epsilon(0.1));
}
