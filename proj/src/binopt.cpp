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


#include "uniterp/binopt.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "uniterp/metrics.hpp"
#include "uniterp/parallel.hpp"
#include "uniterp/ui.hpp"

namespace uniterp {

std::int64_t cache_size(const Binning& bins) { return cache_counts(bins).total(); }

CellDecomposition probe_cell(const Binning& bins, const std::vector<double>& alpha_abs) {
  const int n = static_cast<int>(bins.size());
  CellDecomposition cell;
  cell.seed.assign(n, 0);
  cell.seed[0] = 1;
  cell.signs.assign(n, 1);
  cell.signs[0] = -1;
  cell.alpha.resize(n);
  for (int p = 0; p < n; ++p) cell.alpha(p) = cell.signs[p] * alpha_abs.at(p);
  return cell;
}

namespace {

RealVector cell_point(const Lattice& lat, const CellDecomposition& cell) {
  RealVector c = lat.amplitude(cell.seed);
  for (int p = 0; p < lat.num_params(); ++p) c(p) += cell.alpha(p) * lat.spacing(p);
  return c;
}

// U_exact^dagger U_UI - I at the probe point with the given |alpha|.
ComplexMatrix generator_estimate(const ParametricHamiltonian& ham, const UICache& cache,
                                 const std::vector<double>& alpha_abs) {
  const CellDecomposition cell = probe_cell(cache.lattice.bins(), alpha_abs);
  const ComplexMatrix ui = evaluate_cell(cache, cell);
  const ComplexMatrix ex = exact_unitary(ham, cell_point(cache.lattice, cell));
  const int d = ham.dim();
  return ex.adjoint() * ui - ComplexMatrix::Identity(d, d);
}

}  // namespace

double probe_infidelity(const ParametricHamiltonian& ham, const Binning& bins) {
  const Lattice lat(ham.bounds(), bins);
  const CellDecomposition cell = probe_cell(bins, std::vector<double>(bins.size(), 0.5));
  const ComplexMatrix ui = reference_evaluate_cell(ham, bins, cell);
  return avg_gate_infidelity(exact_unitary(ham, cell_point(lat, cell)), ui);
}

std::vector<std::vector<ComplexMatrix>> estimate_generators(const ParametricHamiltonian& ham,
                                                            const Binning& test_bins, int threads) {
  const int n = ham.num_params();
  BuildOptions build;
  build.threads = threads;
  const UICache cache = build_cache(ham, test_bins, build);
  std::vector<std::vector<ComplexMatrix>> a(n, std::vector<ComplexMatrix>(n));
  parallel_for(n, threads, [&](std::int64_t i) {
    std::vector<double> alpha(n, 0.0);
    alpha[i] = 0.5;
    a[i][i] = generator_estimate(ham, cache, alpha);
  });
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  parallel_for(static_cast<std::int64_t>(pairs.size()), threads, [&](std::int64_t k) {
    const auto [i, j] = pairs[k];
    std::vector<double> alpha(n, 0.0);
    alpha[i] = alpha[j] = 0.5;
    a[i][j] = generator_estimate(ham, cache, alpha) - a[i][i] - a[j][j];
    a[j][i] = a[i][j];
  });
  return a;
}

InfidelityModel estimate_traces(const ParametricHamiltonian& ham, const TraceOptions& options) {
  const int n = ham.num_params();
  InfidelityModel model;
  model.n = n;
  model.dim = ham.dim();
  model.target = options.target;
  model.kappa_theory = -1.0 / (2.0 * (ham.dim() + 1));
  model.test_bins.assign(n, 1);

  std::vector<std::vector<ComplexMatrix>> a;
  for (int attempt = 0;; ++attempt) {
    try {
      a = estimate_generators(ham, model.test_bins, options.threads);
      break;
    } catch (const PhaseWrapError& e) {
      if (attempt >= options.max_refinements || e.direction() < 0) throw;
      model.test_bins[e.direction()] *= 2;
    }
  }

  model.traces.resize(n, n);
  double raw_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double t = 2.0 * (a[i][j] * a[i][j]).trace().real();
      raw_sum += t;
      const double scale = static_cast<double>(model.test_bins[i]) * model.test_bins[j];
      model.traces(i, j) = model.traces(j, i) = t * scale * scale;
    }
  }
  model.probe_at_test = probe_infidelity(ham, model.test_bins);
  // Commuting terms leave only rounding noise; fall back to the leading order.
  const bool usable = raw_sum < 0.0 && model.probe_at_test > 1e-15;
  model.kappa = usable ? model.probe_at_test / raw_sum : model.kappa_theory;
  return model;
}

double model_infidelity(const InfidelityModel& model, const Binning& bins) {
  validate_binning(bins, model.n);
  double sum = 0.0;
  for (int i = 0; i < model.n; ++i) {
    for (int j = i; j < model.n; ++j) {
      const double ni = bins[i], nj = bins[j];
      sum += model.traces(i, j) / (ni * ni * nj * nj);
    }
  }
  return model.kappa * sum;
}

namespace {

// Largest admissible s_m = 1/N_m^2 with the other directions fixed, from
// P_mm s^2 + Q_m s + I_0 = 0 where P = kappa T; returns false if none exists.
bool solve_direction(const InfidelityModel& model, const Binning& bins, int m, int& out) {
  const int n = model.n;
  std::vector<double> s(n);
  for (int k = 0; k < n; ++k) s[k] = 1.0 / (static_cast<double>(bins[k]) * bins[k]);
  double i0 = -model.target;
  double q = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double p = model.kappa * model.traces(i, j);
      if (i != m && j != m) i0 += p * s[i] * s[j];
      else if (i != j) q += p * s[i == m ? j : i];
    }
  }
  const double pmm = model.kappa * model.traces(m, m);
  if (i0 >= 0.0) return false;
  double root;
  if (pmm > 0.0) {
    const double h = q / (2.0 * pmm);
    root = -h + std::sqrt(h * h - i0 / pmm);
  } else if (q > 0.0) {
    root = -i0 / q;
  } else {
    out = 1;
    return true;
  }
  if (!(root > 0.0)) return false;
  const double nm = std::ceil(1.0 / std::sqrt(root));
  out = static_cast<int>(std::clamp(nm, 1.0, 1e9));
  return true;
}

void record(OptimizerResult& r, int phase, const InfidelityModel& model, const Binning& bins) {
  r.steps.push_back({phase, bins, cache_size(bins), model_infidelity(model, bins)});
}

}  // namespace

OptimizerResult optimize_bins(const InfidelityModel& model, const OptimizerOptions& options) {
  if (!(model.target > 0.0)) throw ConfigError("optimize_bins: target must be positive");
  const int n = model.n;
  Binning bins = options.initial.empty() ? Binning(n, 1) : options.initial;
  validate_binning(bins, n);
  auto feasible = [&](const Binning& b) { return model_infidelity(model, b) < model.target; };
  OptimizerResult result;
  record(result, 0, model, bins);

  // Phase 1: add bins where they buy the most infidelity per cache entry.
  while (!feasible(bins)) {
    const double current = model_infidelity(model, bins);
    const std::int64_t cost = cache_size(bins);
    int best = -1;
    double best_ratio = 0.0;
    for (int j = 0; j < n; ++j) {
      Binning next = bins;
      next[j] += 1;
      const double ratio = (current - model_infidelity(model, next)) /
                           static_cast<double>(cache_size(next) - cost);
      if (ratio > best_ratio) best_ratio = ratio, best = j;
    }
    if (best < 0) throw InfeasibleError("optimize_bins: no direction lowers the model infidelity");
    bins[best] += 1;
    if (bins[best] > options.max_bins)
      throw InfeasibleError("optimize_bins: target unreachable below " + std::to_string(options.max_bins) +
                            " bins per direction");
    record(result, 1, model, bins);
  }

  // Phase 2: drop single bins while the target holds.
  while (true) {
    int best = -1;
    std::int64_t best_cost = cache_size(bins);
    for (int i = 0; i < n; ++i) {
      if (bins[i] <= 1) continue;
      Binning next = bins;
      next[i] -= 1;
      if (feasible(next) && cache_size(next) < best_cost) best_cost = cache_size(next), best = i;
    }
    if (best < 0) break;
    bins[best] -= 1;
    record(result, 2, model, bins);
  }

  // Phase 3: remove a bin along i and resize m to just meet the target.
  while (n > 1) {
    Binning best;
    std::int64_t best_cost = cache_size(bins);
    for (int i = 0; i < n; ++i) {
      if (bins[i] <= 1) continue;
      for (int m = 0; m < n; ++m) {
        if (m == i) continue;
        Binning next = bins;
        next[i] -= 1;
        int nm;
        if (!solve_direction(model, next, m, nm)) continue;
        next[m] = nm;
        // ceil can land exactly on the target; the bound is strict.
        for (int guard = 0; guard < 4 && !feasible(next); ++guard) next[m] += 1;
        if (feasible(next) && cache_size(next) < best_cost) best_cost = cache_size(next), best = next;
      }
    }
    if (best.empty()) break;
    bins = best;
    record(result, 3, model, bins);
  }

  result.bins = bins;
  result.cache_total = cache_size(bins);
  result.model = model_infidelity(model, bins);
  return result;
}

Binning exhaustive_bins(const InfidelityModel& model, int cap) {
  if (cap < 1) throw ConfigError("exhaustive_bins: cap must be positive");
  const int n = model.n;
  Binning bins(n, 1), best;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  double best_model = 0.0;
  while (true) {
    const double value = model_infidelity(model, bins);
    if (value < model.target) {
      const std::int64_t cost = cache_size(bins);
      if (cost < best_cost || (cost == best_cost && value < best_model))
        best = bins, best_cost = cost, best_model = value;
    }
    int p = 0;
    while (p < n && bins[p] == cap) bins[p++] = 1;
    if (p == n) break;
    bins[p] += 1;
  }
  if (best.empty()) throw InfeasibleError("exhaustive_bins: target unreachable within the cap");
  return best;
}

}  // namespace uniterp
