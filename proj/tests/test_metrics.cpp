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

#include <cmath>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "support.hpp"
#include "uniterp/metrics.hpp"

using namespace uniterp;

namespace {

double monomial(const RealVector& a, const std::vector<int>& j) {
  double v = 1;
  for (std::size_t p = 0; p < j.size(); ++p) v *= std::pow(a(static_cast<int>(p)), j[p]);
  return v;
}

bool in_cell(const RealVector& a) {
  for (int p = 0; p < a.size(); ++p) {
    if (a(p) < 0 || a(p) > 1) return false;
    for (int q = 0; q < p; ++q)
      if (a(p) + a(q) > 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gate infidelity") {
  Rng rng = make_rng(1);
  const ComplexMatrix u = haar_unitary(5, rng);
  CHECK(std::abs(avg_gate_infidelity(u, u)) <= 1e-15);
  CHECK(std::abs(avg_gate_infidelity(u, Complex(0.6, 0.8) * u)) <= 1e-15);
  CHECK(avg_gate_infidelity(ComplexMatrix::Identity(2, 2), testing::pauli_x()) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  // Fully orthogonal pair of unitaries: trace zero leaves d/(d+1).
  CHECK(avg_gate_infidelity(testing::pauli_z(), testing::pauli_x()) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  ComplexVector a = ComplexVector::Zero(2), b = ComplexVector::Zero(2);
  a(0) = 1;
  b(0) = b(1) = std::sqrt(0.5);
  CHECK(state_infidelity(a, b) == doctest::Approx(0.5));
  CHECK(state_infidelity(a, Complex(0, 1) * a) == doctest::Approx(0.0));
}

TEST_CASE("asymmetric spread") {
  AsymmetricStd s = asymmetric_std({-1.0, 0.0, 1.0});
  CHECK(s.mean == 0.0);
  CHECK(s.std_lo == doctest::Approx(1.0));
  CHECK(s.std_hi == doctest::Approx(1.0));
  s = asymmetric_std({0.0, 0.0, 0.0, 4.0});
  CHECK(s.mean == 1.0);
  CHECK(s.std_lo == doctest::Approx(std::sqrt(1.5)));  // three unit deviations below the mean
  CHECK(s.std_hi == 0.0);                   // a single sample above
  CHECK(asymmetric_std({2.0}).std_lo == 0.0);
}

TEST_CASE("log-log slope") {
  std::vector<double> x, y;
  for (double v : {1.0, 2.0, 4.0, 8.0}) {
    x.push_back(v);
    y.push_back(3 * std::pow(v, -4.0));
  }
  CHECK(loglog_slope(x, y) == doctest::Approx(-4.0));
}

TEST_CASE("fit exponents") {
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 5; ++m) {
      const auto e = fit_exponents(n, m);
      CHECK(static_cast<double>(e.size()) == boost::math::binomial_coefficient<double>(m + n, n) - 1);
      int prev = 0;
      for (const auto& j : e) {
        int deg = 0;
        for (int v : j) deg += v;
        CHECK((deg >= 1 && deg <= m));
        CHECK(deg >= prev);
        prev = deg;
      }
    }
}

TEST_CASE("basis averages") {
  using boost::math::factorial;
  // Hypercube: independent uniforms.
  CHECK(basis_average({2, 3}, Volume::kHypercube) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(basis_average({1, 0, 4}, Volume::kHypercube) == doctest::Approx(0.1).epsilon(1e-15));
  // One parameter: the cell is the unit interval.
  CHECK(basis_average({3}, Volume::kUiCell) == doctest::Approx(0.25).epsilon(1e-15));
  // Two parameters: the unit simplex, Dirichlet moments 2 i! j! / (i + j + 2)!.
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4 - i; ++j) {
      const double want = 2 * factorial<double>(i) * factorial<double>(j) / factorial<double>(i + j + 2);
      CHECK(basis_average({i, j}, Volume::kUiCell) == doctest::Approx(want).epsilon(1e-14));
    }
  CHECK(volume_size(2, Volume::kUiCell) == doctest::Approx(0.5));
  // Three parameters: the cube of side 1/2 plus three corner pieces of 1/24.
  CHECK(volume_size(3, Volume::kUiCell) == doctest::Approx(0.25));
  CHECK(volume_size(3, Volume::kHypercube) == 1.0);

  // Higher dimensions against plain Monte Carlo on the cube.
  Rng rng = make_rng(2);
  for (int n : {3, 4}) {
    const auto exps = fit_exponents(n, 3);
    std::vector<double> sums(exps.size(), 0.0);
    int hits = 0;
    const int total = 400000;
    for (int s = 0; s < total; ++s) {
      RealVector a(n);
      for (int p = 0; p < n; ++p) a(p) = uniform01(rng);
      if (!in_cell(a)) continue;
      ++hits;
      for (std::size_t k = 0; k < exps.size(); ++k) sums[k] += monomial(a, exps[k]);
    }
    CHECK(static_cast<double>(hits) / total == doctest::Approx(volume_size(n, Volume::kUiCell)).epsilon(0.01));
    for (std::size_t k = 0; k < exps.size(); ++k)
      CHECK(sums[k] / hits == doctest::Approx(basis_average(exps[k], Volume::kUiCell)).epsilon(0.02));
  }
}

TEST_CASE("volume sampling stays inside") {
  Rng rng = make_rng(3);
  for (int n = 1; n <= 4; ++n)
    for (int s = 0; s < 2000; ++s) CHECK(in_cell(sample_volume(n, Volume::kUiCell, rng)));
}

TEST_CASE("fits recover polynomials in their span") {
  Rng rng = make_rng(4);
  for (int n = 1; n <= 3; ++n) {
    const auto exps = fit_exponents(n, 4);
    RealVector coef(static_cast<int>(exps.size()));
    for (int k = 0; k < coef.size(); ++k) coef(k) = standard_normal(rng);
    std::vector<FitSample> samples;
    for (int s = 0; s < 3 * coef.size(); ++s) {
      FitSample f{sample_volume(n, Volume::kUiCell, rng), 0.0};
      for (int k = 0; k < coef.size(); ++k) f.value += coef(k) * monomial(f.alpha, exps[k]);
      samples.push_back(f);
    }
    const PolyFit fit = fit_infidelity(samples, 4, false);
    CHECK((fit.coefficients - coef).cwiseAbs().maxCoeff() <= 1e-9);
    double avg = 0;
    for (int k = 0; k < coef.size(); ++k) avg += coef(k) * basis_average(exps[k], Volume::kUiCell);
    CHECK(cell_average_infidelity(fit) == doctest::Approx(avg).epsilon(1e-9));
    const AsymmetricStd mc = cell_std_infidelity(fit, rng, 20000);
    CHECK(mc.mean == doctest::Approx(avg).epsilon(0.05));
  }

  // A polynomial vanishing at the unit corners, fitted with the corner rows.
  std::vector<FitSample> samples;
  for (int s = 0; s < 30; ++s) {
    FitSample f{sample_volume(2, Volume::kUiCell, rng), 0.0};
    const double a = f.alpha(0), b = f.alpha(1);
    f.value = a * (1 - a) + 2 * b * (1 - b * b) + 0.5 * a * b;
    samples.push_back(f);
  }
  const PolyFit fit = fit_infidelity(samples, 3, true);
  RealVector probe(2);
  probe << 0.2, 0.3;
  CHECK(fit.predict(probe) == doctest::Approx(0.2 * 0.8 + 0.6 * 0.91 + 0.03).epsilon(1e-10));

  CHECK_THROWS(fit_infidelity(std::vector<FitSample>(samples.begin(), samples.begin() + 3), 3, false));
}
