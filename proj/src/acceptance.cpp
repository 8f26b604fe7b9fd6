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


#include "uniterp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "uniterp/baselines.hpp"
#include "uniterp/bench.hpp"
#include "uniterp/binopt.hpp"
#include "uniterp/linalg.hpp"
#include "uniterp/metrics.hpp"
#include "uniterp/ui.hpp"

namespace uniterp {

namespace {

std::string sci(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return buf;
}

std::string fixed(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

CriterionResult start(int id, std::string name, double threshold) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.threshold = threshold;
  return r;
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

std::vector<Bounds> uniform_bounds(int n, double hi) { return std::vector<Bounds>(n, Bounds{0.0, hi}); }

RealVector random_point(const std::vector<Bounds>& bounds, Rng& rng) {
  RealVector c(bounds.size());
  for (size_t p = 0; p < bounds.size(); ++p) c(p) = bounds[p].lo + bounds[p].width() * uniform01(rng);
  return c;
}

Binning default_bins(int n) {
  static const std::vector<Binning> table = {{4}, {3, 4}, {2, 3, 2}};
  return table.at(n - 1);
}

struct Context {
  AcceptanceOptions options;
  std::optional<SweepResult> converge_n, converge_amp;

  std::uint64_t seed(int criterion) const { return options.seed * 1000 + criterion; }

  void ensure_converge() {
    if (converge_n) return;
    Json base = {{"methods", {"ui", "sym-ui", "trotter", "sym-trotter"}},
                 {"d", 16},
                 {"n", 1},
                 {"cmax", 0.025},
                 {"ensemble", 20},
                 {"seed", seed(2)},
                 {"threads", options.threads}};
    Json by_n = base;
    by_n["axis"] = {{"name", "N"}, {"values", {1, 2, 4, 8}}};
    converge_n = run_converge(RunConfig::from_json(by_n));
    Json by_amp = base;
    by_amp["axis"] = {{"name", "cmax"}, {"values", {0.0125, 0.025, 0.05, 0.1}}};
    converge_amp = run_converge(RunConfig::from_json(by_amp));
  }
};

CriterionResult vertex_exactness(Context& ctx) {
  CriterionResult r = start(1, "vertex exactness", 1e-12);
  Rng rng = make_rng(ctx.seed(1));
  double worst = 0.0;
  int vertices = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int draw = 0; draw < 5; ++draw) {
      const auto ham = random_hamiltonian({8, kPi / 2, rng()}, n, uniform_bounds(n, 0.05));
      for (bool sym : {false, true}) {
        BuildOptions opt;
        opt.symmetric = sym;
        opt.threads = ctx.options.threads;
        const UICache cache = build_cache(ham, default_bins(n), opt);
        for (std::int64_t k = 0; k < cache.lattice.num_vertices(); ++k) {
          const RealVector c = cache.lattice.amplitude(cache.lattice.vertex(k));
          worst = std::max(worst, avg_gate_infidelity(exact_unitary(ham, c), evaluate(cache, c)));
          ++vertices;
        }
      }
    }
  }
  r.measured = worst;
  r.passed = worst <= r.threshold;
  r.detail = "max vertex infidelity over " + std::to_string(vertices) + " vertices (plain and symmetric, n=1..3, d=8)";
  return r;
}

CriterionResult convergence_orders(Context& ctx) {
  CriterionResult r = start(2, "convergence orders", 3.6);
  ctx.ensure_converge();
  const SweepResult& sn = *ctx.converge_n;
  const SweepResult& sa = *ctx.converge_amp;
  auto slope = [](const SweepResult& s, Method m) { return loglog_slope(s.values(m), s.means(m)); };
  const double ui_n = -slope(sn, Method::kUi), sym_n = -slope(sn, Method::kSymTrotter),
               tr_n = -slope(sn, Method::kTrotter), symui_n = -slope(sn, Method::kSymUi);
  const double ui_a = slope(sa, Method::kUi), tr_a = slope(sa, Method::kTrotter),
               sym_a = slope(sa, Method::kSymTrotter);
  const bool ok = within(ui_n, 3.6, 4.4) && within(sym_n, 3.6, 4.4) && within(tr_n, 1.8, 2.2) &&
                  within(ui_a, 3.6, 4.4) && within(tr_a, 1.8, 2.2) && within(sym_a, 1.8, 2.2);
  r.measured = ui_n;
  r.passed = ok;
  r.detail = "-slope vs N: ui " + fixed(ui_n) + " sym-trotter " + fixed(sym_n) + " trotter " + fixed(tr_n) +
             " (sym-ui " + fixed(symui_n) + "); slope vs c_max: ui " + fixed(ui_a) + " trotter " + fixed(tr_a) +
             " sym-trotter " + fixed(sym_a) + "; ranges [3.6,4.4] and [1.8,2.2]";
  return r;
}

CriterionResult doubling_factor(Context& ctx) {
  CriterionResult r = start(3, "per-doubling reduction", 10.0);
  ctx.ensure_converge();
  auto mean_ratio = [&](Method m) {
    const auto means = ctx.converge_n->means(m);
    double sum = 0.0;
    for (size_t k = 0; k + 1 < means.size(); ++k) sum += means[k] / means[k + 1];
    return sum / (means.size() - 1);
  };
  const double ui = mean_ratio(Method::kUi);
  r.measured = ui;
  r.passed = within(ui, 10.0, 22.0);
  r.detail = "mean I(N)/I(2N) over N=1,2,4 for ui, window [10,22]; sym-ui " + fixed(mean_ratio(Method::kSymUi), 2) +
             ", sym-trotter " + fixed(mean_ratio(Method::kSymTrotter), 2);
  return r;
}

CriterionResult infidelity_map(Context& ctx) {
  CriterionResult r = start(4, "5x5 infidelity map", 0.95);
  constexpr int kDraws = 20;
  std::vector<double> maxima;
  for (int k = 0; k < kDraws; ++k) {
    const Json cfg = {{"method", "ui"}, {"n", 2},          {"d", 16},        {"bins", {5, 5}},
                      {"cmax", 0.025},  {"grid", 41},      {"seed", ctx.seed(4)}, {"draw", k},
                      {"threads", ctx.options.threads}};
    maxima.push_back(run_map(RunConfig::from_json(cfg)).max_infidelity);
  }
  const auto below = std::count_if(maxima.begin(), maxima.end(), [](double x) { return x < 1e-9; });
  std::sort(maxima.begin(), maxima.end());
  r.measured = static_cast<double>(below) / kDraws;
  r.passed = r.measured >= r.threshold;
  r.detail = "fraction of draws with 41x41 max < 1e-9; median max " + sci(maxima[kDraws / 2]) + ", worst " +
             sci(maxima.back());
  return r;
}

CriterionResult oracle_equivalence(Context& ctx) {
  CriterionResult r = start(5, "cache vs direct products", 1e-12);
  Rng rng = make_rng(ctx.seed(5));
  double worst = 0.0, worst_sym = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto bounds = uniform_bounds(n, 0.05);
    const auto ham = random_hamiltonian({8, kPi / 2, rng()}, n, bounds);
    const Binning bins = default_bins(n);
    BuildOptions opt;
    opt.threads = ctx.options.threads;
    const UICache plain = build_cache(ham, bins, opt);
    opt.symmetric = true;
    const UICache sym = build_cache(ham, bins, opt);
    for (int k = 0; k < 1000; ++k) {
      const RealVector c = random_point(bounds, rng);
      worst = std::max(worst, linalg::max_abs(evaluate(plain, c) - reference_evaluate(ham, bins, c)));
      if (k < 200) {
        worst_sym = std::max(worst_sym, linalg::max_abs(evaluate_sym(sym, c) - reference_evaluate_sym(ham, bins, c)));
      }
    }
  }
  r.measured = std::max(worst, worst_sym);
  r.passed = r.measured <= r.threshold;
  r.detail = "max entry difference over 1000 points per n=1..3 (d=8): plain " + sci(worst) + ", symmetric (200 points) " +
             sci(worst_sym);
  return r;
}

CriterionResult gradients(Context& ctx) {
  CriterionResult r = start(6, "analytic gradients", 1e-6);
  constexpr double kStep = 1e-5;
  Rng rng = make_rng(ctx.seed(6));
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto bounds = uniform_bounds(n, 0.05);
    const auto ham = random_hamiltonian({8, kPi / 2, rng()}, n, bounds);
    BuildOptions opt;
    opt.threads = ctx.options.threads;
    const UICache cache = build_cache(ham, default_bins(n), opt);
    int accepted = 0;
    while (accepted < 100) {
      const RealVector c = random_point(bounds, rng);
      const GradientResult g = evaluate_with_gradients(cache, c);
      const CellDecomposition home = cache.lattice.locate(c);
      bool interior = std::none_of(g.one_sided.begin(), g.one_sided.end(), [](bool b) { return b; });
      std::vector<ComplexMatrix> fd(n);
      for (int p = 0; p < n && interior; ++p) {
        RealVector cp = c, cm = c;
        cp(p) += kStep;
        cm(p) -= kStep;
        if (!within(cm(p), bounds[p].lo, bounds[p].hi) || !within(cp(p), bounds[p].lo, bounds[p].hi)) {
          interior = false;
          break;
        }
        const CellDecomposition a = cache.lattice.locate(cp), b = cache.lattice.locate(cm);
        if (a.seed != home.seed || b.seed != home.seed || a.signs != home.signs || b.signs != home.signs) {
          interior = false;
          break;
        }
        fd[p] = (evaluate(cache, cp) - evaluate(cache, cm)) / (2 * kStep);
      }
      if (!interior) continue;
      double num = 0.0, den = 0.0;
      for (int p = 0; p < n; ++p) {
        num = std::max(num, linalg::max_abs(g.du[p] - fd[p]));
        den = std::max(den, linalg::max_abs(g.du[p]));
      }
      worst = std::max(worst, num / den);
      ++accepted;
    }
  }
  r.measured = worst;
  r.passed = worst <= r.threshold;
  r.detail = "max relative error vs central differences (h=1e-5), 100 interior points per n=1..3";
  return r;
}

CriterionResult average_infidelity(Context& ctx) {
  CriterionResult r = start(7, "average infidelity identity", 3.0);
  constexpr int kStates = 2000, kPairs = 10, kDim = 16;
  Rng rng = make_rng(ctx.seed(7));
  double worst_z = 0.0;
  for (int k = 0; k < kPairs; ++k) {
    const ComplexMatrix ex = haar_unitary(kDim, rng);
    const ComplexMatrix ap = ex * expm_hermitian(random_hermitian(kDim, 0.1 * (k + 1), rng));
    const ComplexMatrix m = ex.adjoint() * ap;
    std::vector<double> f(kStates);
    double mean = 0.0;
    for (auto& x : f) {
      const ComplexVector psi = haar_state(kDim, rng);
      x = 1.0 - std::norm(psi.dot(m * psi));
      mean += x / kStates;
    }
    double var = 0.0;
    for (double x : f) var += (x - mean) * (x - mean) / (kStates - 1);
    const double sem = std::sqrt(var / kStates);
    worst_z = std::max(worst_z, std::abs(mean - avg_gate_infidelity(ex, ap)) / sem);
  }
  r.measured = worst_z;
  r.passed = worst_z <= r.threshold;
  r.detail = "max |MC - closed form| in standard errors over 10 pairs, 2000 Haar states each (d=16)";
  return r;
}

CriterionResult basis_fit(Context& ctx) {
  CriterionResult r = start(8, "basis-function fit", 1e-3);
  constexpr int kOrder = 4, kHeldOut = 200;
  const int basis = static_cast<int>(fit_exponents(2, kOrder).size());
  const int train_count = 2 * basis;  // point ratio 2.0
  Rng rng = make_rng(ctx.seed(8));
  double worst = 0.0, mean_r = 0.0;
  int count = 0;
  for (int draw = 0; draw < 5; ++draw) {
    const auto ham = random_hamiltonian({16, kPi / 2, rng()}, 2, uniform_bounds(2, 0.025));
    BuildOptions opt;
    opt.threads = ctx.options.threads;
    const UICache cache = build_cache(ham, {5, 5}, opt);
    const Index seed{1, 2};
    for (int mask = 0; mask < 4; ++mask) {
      const std::vector<int> signs{mask & 1 ? -1 : 1, mask & 2 ? -1 : 1};
      const auto train = sample_cell(cache, seed, signs, train_count, rng);
      const auto test = sample_cell(cache, seed, signs, kHeldOut, rng);
      const PolyFit fit = fit_infidelity(train, kOrder, true);
      double scale = 0.0;
      for (const auto& s : test) scale += s.value / kHeldOut;
      for (const auto& s : test) {
        const double ri = std::abs(fit.predict(s.alpha) - s.value) / scale;
        worst = std::max(worst, ri);
        mean_r += ri;
        ++count;
      }
    }
  }
  r.measured = worst;
  r.passed = worst <= r.threshold;
  r.detail = "max held-out |I_fit - I|/mean(I) over 20 UI cells (d=16, n=2, m=4, " + std::to_string(train_count) +
             " training points, corner-zero); mean " + sci(mean_r / count);
  return r;
}

CriterionResult bin_optimizer(Context& ctx) {
  CriterionResult r = start(9, "bin optimizer", 0.10);
  auto run = [&](int n, int cap) {
    const Json cfg = {{"n", n}, {"d", 16}, {"cmax", 0.025}, {"target", 1e-12}, {"ensemble", 20},
                      {"cap", cap}, {"seed", ctx.seed(9) + n}, {"threads", ctx.options.threads}};
    return run_optbins(RunConfig::from_json(cfg));
  };
  const OptbinsResult r1 = run(1, 32), r2 = run(2, 32), r3 = run(3, 0);
  const double acc = std::max({r1.rel_accuracy.mean, r2.rel_accuracy.mean, r3.rel_accuracy.mean});
  const double opt = std::max(r1.rel_optimum.mean, r2.rel_optimum.mean);
  const double size = r1.bin_product.mean;
  r.measured = acc;
  r.passed = acc <= 0.10 && opt <= 0.05 && within(size, 7.0, 13.0);
  r.detail = "mean model error n=1,2,3: " + sci(r1.rel_accuracy.mean, 2) + " " + sci(r2.rel_accuracy.mean, 2) + " " +
             sci(r3.rel_accuracy.mean, 2) + " (<= 0.10); mean excess over exhaustive n=1,2: " +
             sci(r1.rel_optimum.mean, 2) + " " + sci(r2.rel_optimum.mean, 2) + " (<= 0.05); n=1 mean bins " +
             fixed(size, 2) + " in [7,13] (matrix total " + fixed(r1.cache_total.mean, 1) + ", n=2 bins " +
             fixed(r2.bin_product.mean, 1) + ", n=3 bins " + fixed(r3.bin_product.mean, 1) + ")";
  return r;
}

CriterionResult state_paths(Context& ctx) {
  CriterionResult r = start(10, "state propagation", 1.0);
  Rng rng = make_rng(ctx.seed(10));

  // apply_state against the full unitary.
  double path = 0.0;
  {
    const auto bounds = uniform_bounds(2, 0.025);
    const auto ham = random_hamiltonian({16, kPi / 2, rng()}, 2, bounds);
    const UICache cache = build_cache(ham, {3, 3});
    for (int k = 0; k < 1000; ++k) {
      const RealVector c = random_point(bounds, rng);
      const ComplexVector psi = haar_state(16, rng);
      path = std::max(path, (apply_state(cache, c, psi) - evaluate(cache, c) * psi).cwiseAbs().maxCoeff());
    }
  }

  // expm_action against the eigendecomposition.
  double action = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix h = random_hermitian(32, kPi / 2 * (1 + 2 * k), rng);
    const ComplexVector psi = haar_state(32, rng);
    const ComplexVector ref = expm_hermitian(h) * psi;
    action = std::max(action, (expm_action(h, psi, 1e-12) - ref).norm());
  }

  // Timing at d=128 with bins chosen by the optimizer for 1e-12.
  Json cfg = {{"methods", {"ui", "expm-action"}}, {"d", 128}, {"n", 2}, {"cmax", 0.025},
              {"state", true}, {"tol", 1e-12}, {"seed", ctx.seed(10)}};
  const RunConfig probe = RunConfig::from_json(cfg);
  const auto ham = draw_hamiltonian(probe, probe.draw, probe.bounds);
  TraceOptions topt;
  topt.threads = ctx.options.threads;
  const Binning bins = optimize_bins(estimate_traces(ham, topt)).bins;
  cfg["bins"] = bins;
  const SweepResult timing = run_timing(RunConfig::from_json(cfg));
  double t_ui = 0, t_ex = 0, i_ui = 0, i_ex = 0;
  for (const auto& row : timing.rows) {
    const double worst = *std::max_element(row.samples.begin(), row.samples.end());
    if (row.method == Method::kUi) t_ui = row.time_median, i_ui = worst;
    else t_ex = row.time_median, i_ex = worst;
  }
  const double ratio = t_ui / t_ex;
  r.measured = ratio;
  r.passed = path <= 1e-13 && action <= 1e-12 && i_ui <= 1e-11 && i_ex <= 1e-11 && ratio < 1.0;
  r.detail = "time ratio ui/expm-action at d=128 (bins " + std::to_string(bins[0]) + "x" + std::to_string(bins[1]) +
             ", speedup " + fixed(1.0 / ratio, 1) + "x); max state infidelity ui " + sci(i_ui) + " expm " + sci(i_ex) +
             " (<= 1e-11); apply_state vs evaluate " + sci(path) + " (<= 1e-13); expm_action error " + sci(action) +
             " (<= 1e-12)";
  return r;
}

CriterionResult performance(Context& ctx) {
  CriterionResult r = start(11, "evaluation wall time", 0.5);
  const Json cfg = {{"methods", {"ui", "sym-ui", "trotter", "sym-trotter", "exact"}},
                    {"n", 2},
                    {"cmax", 0.025},
                    {"axis", {{"name", "d"}, {"values", {16, 32, 64, 128, 256}}}},
                    {"seed", ctx.seed(11)}};
  const SweepResult t = run_timing(RunConfig::from_json(cfg));
  const double ratio = t.times(Method::kUi).back() / t.times(Method::kExact).back();
  bool slopes_ok = true;
  std::string slopes;
  for (Method m : {Method::kUi, Method::kSymUi, Method::kTrotter, Method::kSymTrotter, Method::kExact}) {
    const double s = loglog_slope(t.values(m), t.times(m));
    slopes_ok = slopes_ok && within(s, 2.5, 3.5);
    slopes += " " + method_name(m) + " " + fixed(s, 2);
  }
  r.measured = ratio;
  r.passed = ratio <= 0.5 && slopes_ok;
  r.detail = "ui/exact median time at d=256; dimension slopes (need [2.5,3.5]):" + slopes;
  return r;
}

CriterionResult cache_accounting(Context& ctx) {
  CriterionResult r = start(12, "cache accounting", 0.0);
  Rng rng = make_rng(ctx.seed(12));
  int mismatches = 0, checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      Binning bins(n);
      for (auto& b : bins) b = 1 + static_cast<int>(uniform01(rng) * (n == 1 ? 8 : 4));
      const auto ham = random_hamiltonian({2, kPi / 2, rng()}, n, uniform_bounds(n, 0.025));
      const CacheCounts got = build_cache(ham, bins).counts();
      std::int64_t prod = 1;
      for (int b : bins) prod *= b;
      // Closed forms: one C entry per cell quadrant, one matrix per edge of
      // the first and last directions (the plain n=1 cache has no C entries).
      std::int64_t first = bins[0], last = bins[n - 1];
      for (int p = 1; p < n; ++p) first *= bins[p] + 1;
      for (int p = 0; p + 1 < n; ++p) last *= bins[p] + 1;
      const std::int64_t central = n == 1 ? 0 : (std::int64_t{1} << (n - 1)) * prod;
      const bool ok = got.num_c == central && got.num_r == first && got.num_l == last &&
                      got == cache_counts(bins, false) &&
                      build_cache(ham, bins, {true}).counts() == cache_counts(bins, true);
      mismatches += !ok;
      ++checked;
    }
  }
  r.measured = mismatches;
  r.passed = mismatches == 0;
  r.detail = "count mismatches over " + std::to_string(checked) + " random binnings (n=1..3, plain and symmetric)";
  return r;
}

struct TraceStat {
  double mean = 0, sem = 0;
};

TraceStat trace_ratio(std::uint64_t seed, int n, int draws) {
  Rng rng = make_rng(seed);
  std::vector<double> ratios;
  for (int k = 0; k < draws; ++k) {
    const auto ham = random_hamiltonian({16, kPi / 2, rng()}, n, uniform_bounds(n, 0.025));
    const auto a = estimate_generators(ham, Binning(n, 1));
    std::vector<const ComplexMatrix*> g;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g.push_back(&a[i][j]);
    for (size_t x = 0; x < g.size(); ++x) {
      const double diag = std::abs((*g[x] * *g[x]).trace());
      for (size_t y = 0; y < g.size(); ++y)
        if (x != y) ratios.push_back(std::abs((*g[x] * *g[y]).trace()) / diag);
    }
  }
  TraceStat s;
  for (double x : ratios) s.mean += x / ratios.size();
  double var = 0.0;
  for (double x : ratios) var += (x - s.mean) * (x - s.mean) / (ratios.size() - 1);
  s.sem = std::sqrt(var / ratios.size());
  return s;
}

CriterionResult trace_statistic(Context& ctx) {
  CriterionResult r = start(13, "cross-trace suppression", 0.0);
  constexpr int kDim = 16, kDraws = 100;
  TraceStat s = trace_ratio(ctx.seed(13), 2, kDraws);
  bool rerun = false;
  if (s.mean >= 3.0 / kDim + 3 * s.sem) {
    s = trace_ratio(ctx.seed(13) + 1, 2, kDraws);
    rerun = true;
  }
  const TraceStat s3 = trace_ratio(ctx.seed(13) + 2, 3, kDraws);
  r.measured = s.mean;
  r.threshold = 3.0 / kDim + 3 * s.sem;
  r.passed = s.mean < r.threshold;
  r.detail = "mean |Tr(A_ij A_kl)|/|Tr(A_ij^2)| over 100 draws (n=2, d=16)" + std::string(rerun ? ", after one rerun" : "") +
             "; bound 3/d + 3 SEM; n=3 gives " + fixed(s3.mean, 4) + " (bound " + fixed(3.0 / kDim + 3 * s3.sem, 4) + ")";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  using Fn = CriterionResult (*)(Context&);
  struct Entry {
    Fn fn;
    double budget;
  };
  const Entry table[kNumCriteria] = {
      {vertex_exactness, 10},   {convergence_orders, 60}, {doubling_factor, 60},  {infidelity_map, 60},
      {oracle_equivalence, 30}, {gradients, 20},          {average_infidelity, 20}, {basis_fit, 30},
      {bin_optimizer, 120},     {state_paths, 60},        {performance, 60},      {cache_accounting, 60},
      {trace_statistic, 60}};
  Context ctx{options, {}, {}};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kNumCriteria; ++id) {
    if (!options.only.empty() && !options.only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = table[id - 1].fn(ctx);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.budget = table[id - 1].budget;
    if (r.seconds >= r.budget) {
      r.passed = false;
      r.detail += "; over the time budget";
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": measured " << sci(r.measured)
     << " threshold " << sci(r.threshold) << " (" << fixed(r.seconds, 1) << " s of " << fixed(r.budget, 0)
     << " s) " << r.detail;
  return os.str();
}

}  // namespace uniterp
