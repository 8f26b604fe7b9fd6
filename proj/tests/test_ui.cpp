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

#include <memory>

#include "support.hpp"
#include "uniterp/linalg.hpp"
#include "uniterp/metrics.hpp"
#include "uniterp/ui.hpp"

using namespace uniterp;

namespace {

ParametricHamiltonian draw(int n, std::uint64_t seed, double width = 0.05, int d = 6) {
  EnsembleSpec spec;
  spec.dim = d;
  spec.seed = seed;
  return random_hamiltonian(spec, n, std::vector<Bounds>(n, {0.0, width}));
}

RealVector random_point(const ParametricHamiltonian& ham, Rng& rng) {
  RealVector c(ham.num_params());
  for (int p = 0; p < c.size(); ++p) c(p) = ham.bounds()[p].lo + ham.bounds()[p].width() * uniform01(rng);
  return c;
}

bool inside(const ParametricHamiltonian& ham, const RealVector& c) {
  for (int p = 0; p < c.size(); ++p)
    if (c(p) < ham.bounds()[p].lo || c(p) > ham.bounds()[p].hi) return false;
  return true;
}

const std::vector<Binning> kBinnings = {{4}, {3, 4}, {2, 3, 2}};

}  // namespace

TEST_CASE("exact at every lattice vertex") {
  for (const Binning& bins : kBinnings) {
    const int n = static_cast<int>(bins.size());
    const auto ham = draw(n, 10 + n);
    for (bool sym : {false, true}) {
      BuildOptions opt;
      opt.symmetric = sym;
      const UICache cache = build_cache(ham, bins, opt);
      for (std::int64_t k = 0; k < cache.lattice.num_vertices(); ++k) {
        const RealVector c = cache.lattice.amplitude(cache.lattice.vertex(k));
        const ComplexMatrix u = sym ? evaluate_sym(cache, c) : evaluate(cache, c);
        CHECK(testing::max_abs(u - exact_unitary(ham, c)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("single-bin one-parameter case is the geodesic between its end points") {
  const auto ham = draw(1, 3, 0.3, 4);
  const UICache cache = build_cache(ham, {1});
  const ComplexMatrix u0 = exact_unitary(ham, RealVector::Constant(1, 0.0));
  const ComplexMatrix u1 = exact_unitary(ham, RealVector::Constant(1, 0.3));
  for (double a : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    const RealVector c = RealVector::Constant(1, 0.3 * a);
    // The seed is the upper end point, so the fraction runs from u1 to u0.
    CHECK(testing::max_abs(evaluate(cache, c) - testing::geodesic(u1, u0, 1.0 - a)) <= 1e-12);
  }
}

TEST_CASE("cached evaluation matches the uncached reference") {
  Rng rng = make_rng(5);
  for (const Binning& bins : kBinnings) {
    const int n = static_cast<int>(bins.size());
    const auto ham = draw(n, 20 + n);
    BuildOptions opt;
    const UICache plain = build_cache(ham, bins, opt);
    opt.symmetric = true;
    const UICache sym = build_cache(ham, bins, opt);
    for (int s = 0; s < 50; ++s) {
      const RealVector c = random_point(ham, rng);
      CHECK(testing::max_abs(evaluate(plain, c) - reference_evaluate(ham, bins, c)) <= 1e-12);
      CHECK(testing::max_abs(evaluate_sym(sym, c) - reference_evaluate_sym(ham, bins, c)) <= 1e-12);
      CHECK(linalg::unitarity_error(evaluate(plain, c)) <= 1e-12);
    }
  }
}

TEST_CASE("gradients match central differences") {
  Rng rng = make_rng(6);
  for (const Binning& bins : kBinnings) {
    const int n = static_cast<int>(bins.size());
    const auto ham = draw(n, 30 + n);
    const UICache cache = build_cache(ham, bins);
    const double h = 1e-6 * ham.bounds()[0].width();
    for (int s = 0; s < 20; ++s) {
      const RealVector c = random_point(ham, rng);
      const GradientResult g = evaluate_with_gradients(cache, c);
      CHECK(testing::max_abs(g.u - evaluate(cache, c)) <= 1e-13);
      // Skip points whose FD stencil would cross a cell boundary.
      const CellDecomposition cell = cache.lattice.locate(c);
      bool interior = true;
      for (int p = 0; p < n; ++p) {
        RealVector cp = c, cm = c;
        cp(p) += h;
        cm(p) -= h;
        if (!inside(ham, cp) || !inside(ham, cm) ||
            cache.lattice.locate(cp).seed != cell.seed || cache.lattice.locate(cm).seed != cell.seed)
          interior = false;
      }
      if (!interior) continue;
      for (int p = 0; p < n; ++p) {
        RealVector cp = c, cm = c;
        cp(p) += h;
        cm(p) -= h;
        const ComplexMatrix fd = (evaluate(cache, cp) - evaluate(cache, cm)) / (2 * h);
        CHECK(testing::max_abs(g.du[p] - fd) <= 1e-6 * std::max(1.0, testing::max_abs(fd)));
      }
    }
  }
}

TEST_CASE("a vanishing term has a vanishing derivative") {
  auto base = draw(2, 40);
  std::vector<ComplexMatrix> terms = base.terms();
  terms[1].setZero();
  const ParametricHamiltonian ham(base.drift(), terms, base.bounds());
  REQUIRE(ham.term_is_zero(1));
  const UICache cache = build_cache(ham, {3, 3});
  Rng rng = make_rng(7);
  for (int s = 0; s < 10; ++s) {
    const GradientResult g = evaluate_with_gradients(cache, random_point(ham, rng));
    CHECK(testing::max_abs(g.du[1]) == 0.0);
    CHECK(testing::max_abs(g.du[0]) > 0.0);
  }
}

TEST_CASE("state application equals matrix times state") {
  Rng rng = make_rng(8);
  for (const Binning& bins : kBinnings) {
    const int n = static_cast<int>(bins.size());
    const auto ham = draw(n, 50 + n);
    const UICache cache = build_cache(ham, bins);
    for (int s = 0; s < 20; ++s) {
      const RealVector c = random_point(ham, rng);
      const ComplexVector psi = haar_state(ham.dim(), rng);
      CHECK((apply_state(cache, c, psi) - evaluate(cache, c) * psi).cwiseAbs().maxCoeff() <= 1e-13);
    }
  }
}

TEST_CASE("symmetric variant is more accurate on average") {
  Rng rng = make_rng(9);
  for (const Binning& bins : kBinnings) {
    const int n = static_cast<int>(bins.size());
    const auto ham = draw(n, 60 + n, 0.2, 8);
    BuildOptions opt;
    const UICache plain = build_cache(ham, bins, opt);
    opt.symmetric = true;
    const UICache sym = build_cache(ham, bins, opt);
    double ip = 0, is = 0;
    for (int s = 0; s < 200; ++s) {
      const RealVector c = random_point(ham, rng);
      const ComplexMatrix ue = exact_unitary(ham, c);
      ip += avg_gate_infidelity(evaluate(plain, c), ue);
      is += avg_gate_infidelity(evaluate_sym(sym, c), ue);
    }
    CHECK(is < ip);
  }
}

TEST_CASE("builds are deterministic and threads do not change results") {
  const auto ham = draw(2, 70);
  BuildOptions opt;
  const UICache a = build_cache(ham, {3, 4}, opt);
  opt.threads = 3;
  const UICache b = build_cache(ham, {3, 4}, opt);
  REQUIRE(a.left.size() == b.left.size());
  for (std::size_t k = 0; k < a.left.size(); ++k) CHECK(a.left[k] == b.left[k]);
  for (std::size_t k = 0; k < a.right.size(); ++k) CHECK(a.right[k] == b.right[k]);
  for (std::size_t s = 0; s < a.couplings.size(); ++s) {
    REQUIRE(a.couplings[s].size() == b.couplings[s].size());
    for (std::size_t k = 0; k < a.couplings[s].size(); ++k) CHECK(a.couplings[s][k] == b.couplings[s][k]);
  }
  for (std::size_t p = 0; p < a.phases.size(); ++p)
    for (std::size_t k = 0; k < a.phases[p].size(); ++k) CHECK(a.phases[p][k] == b.phases[p][k]);
}

TEST_CASE("materialized counts match the closed forms") {
  for (const Binning& bins : std::vector<Binning>{{4}, {5, 5}, {2, 3, 4}, {1, 1, 1}}) {
    const auto ham = draw(static_cast<int>(bins.size()), 80, 0.05, 2);
    for (bool sym : {false, true}) {
      BuildOptions opt;
      opt.symmetric = sym;
      const CacheCounts got = build_cache(ham, bins, opt).counts();
      const CacheCounts want = cache_counts(bins, sym);
      CHECK(got.num_c == want.num_c);
      CHECK(got.num_l == want.num_l);
      CHECK(got.num_r == want.num_r);
      CHECK(got.num_e == want.num_e);
      CHECK(got.num_c_matrices == want.num_c_matrices);
    }
  }
}

TEST_CASE("errors") {
  // exp(-i pi X) = -I, so the single displacement sits on the branch cut.
  const ParametricHamiltonian wrap(ComplexMatrix::Zero(2, 2), {kPi * testing::pauli_x()}, {{0.0, 1.0}});
  try {
    build_cache(wrap, {1});
    FAIL("expected a phase wrap error");
  } catch (const PhaseWrapError& e) {
    CHECK(e.direction() == 0);
  }
  CHECK_NOTHROW(build_cache(wrap, {4}));

  BuildOptions tiny;
  tiny.memory_budget = 1;
  CHECK_THROWS_AS(build_cache(draw(2, 90), {3, 3}, tiny), MemoryBudgetError);

  const UICache cache = build_cache(draw(2, 91), {2, 2});
  CHECK_THROWS_AS(evaluate(cache, RealVector::Constant(2, 1.0)), OutOfBoundsError);
  CHECK_THROWS_AS(evaluate(cache, RealVector::Constant(3, 0.01)), DimensionError);
  CHECK_THROWS(evaluate_sym(cache, RealVector::Constant(2, 0.01)));
}
