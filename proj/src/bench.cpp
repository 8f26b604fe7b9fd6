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


#include "uniterp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <set>

#include "uniterp/baselines.hpp"
#include "uniterp/binopt.hpp"
#include "uniterp/linalg.hpp"
#include "uniterp/parallel.hpp"
#include "uniterp/ui.hpp"

namespace uniterp {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

const std::set<std::string> kKnownKeys = {
    "method", "methods", "d", "n", "sigma", "bounds", "cmin", "cmax", "bins", "steps", "ensemble",
    "seed", "axis", "grid", "fit", "draw", "target", "cap", "repeats", "warmup", "threads",
    "orthogonalize", "state", "tol", "out"};

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j[key].get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Bounds> with_cmax(std::vector<Bounds> bounds, double cmax) {
  for (auto& b : bounds) b.hi = cmax;
  return bounds;
}

RealVector bin_center(const Lattice& lat, const Index& bin) {
  RealVector c(lat.num_params());
  for (int p = 0; p < lat.num_params(); ++p) {
    c(p) = lat.bounds()[p].lo + (bin[p] + 0.5) * lat.spacing(p);
  }
  return c;
}

RealVector upper_corner(const ParametricHamiltonian& ham) {
  RealVector c(ham.num_params());
  for (int p = 0; p < ham.num_params(); ++p) c(p) = ham.bounds()[p].hi;
  return c;
}

std::string join_bins(const Binning& bins) {
  std::string s;
  for (size_t p = 0; p < bins.size(); ++p) s += (p ? "x" : "") + std::to_string(bins[p]);
  return s;
}

using Clock = std::chrono::steady_clock;

/// Values of the sweep axis; a missing axis is a single point.
std::vector<double> axis_values(const RunConfig& cfg) {
  return cfg.axis == "none" ? std::vector<double>{0.0} : cfg.values;
}

struct Point {
  std::vector<Bounds> bounds;
  Binning bins;
  int steps;
  int d;
};

Point resolve(const RunConfig& cfg, double value) {
  Point pt{cfg.bounds, cfg.bins, cfg.steps, cfg.d};
  if (cfg.axis == "N") {
    const int v = static_cast<int>(value);
    pt.bins.assign(cfg.n, v);
    pt.steps = v;
  } else if (cfg.axis == "cmax") {
    pt.bounds = with_cmax(cfg.bounds, value);
  } else if (cfg.axis == "d") {
    pt.d = static_cast<int>(value);
  }
  return pt;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Method parse_method(const std::string& name) {
  static const std::map<std::string, Method> table = {
      {"ui", Method::kUi},           {"sym-ui", Method::kSymUi},
      {"trotter", Method::kTrotter}, {"sym-trotter", Method::kSymTrotter},
      {"exact", Method::kExact},     {"expm-action", Method::kExpmAction}};
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown method '" + name + "'");
  return it->second;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kUi: return "ui";
    case Method::kSymUi: return "sym-ui";
    case Method::kTrotter: return "trotter";
    case Method::kSymTrotter: return "sym-trotter";
    case Method::kExact: return "exact";
    case Method::kExpmAction: return "expm-action";
  }
  return "?";
}

bool is_product_formula(Method m) { return m == Method::kTrotter || m == Method::kSymTrotter; }

RunConfig RunConfig::from_json(const Json& j) {
  require(j.is_object(), "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    require(kKnownKeys.count(key) > 0, "unknown config field '" + key + "'");
  }
  RunConfig cfg;
  cfg.raw = j;
  if (j.contains("methods")) {
    require(j["methods"].is_array() && !j["methods"].empty(), "methods must be a non-empty array");
    cfg.methods.clear();
    for (const auto& m : j["methods"]) cfg.methods.push_back(parse_method(m.get<std::string>()));
  } else if (j.contains("method")) {
    cfg.methods = {parse_method(get_or<std::string>(j, "method", "ui"))};
  }
  cfg.d = get_or(j, "d", cfg.d);
  cfg.n = get_or(j, "n", cfg.n);
  require(cfg.d >= 1 && cfg.n >= 1, "d and n must be positive");
  cfg.sigma = get_or(j, "sigma", cfg.sigma);
  require(cfg.sigma > 0, "sigma must be positive");

  if (j.contains("bounds")) {
    require(!j.contains("cmax") && !j.contains("cmin"), "give either bounds or cmin/cmax");
    require(j["bounds"].is_array() && static_cast<int>(j["bounds"].size()) == cfg.n,
            "bounds must hold n [lo, hi] pairs");
    for (const auto& b : j["bounds"]) {
      require(b.is_array() && b.size() == 2, "bounds entries must be [lo, hi]");
      cfg.bounds.push_back({b[0].get<double>(), b[1].get<double>()});
    }
  } else {
    auto per_dir = [&](const char* key, double fallback) {
      std::vector<double> v(cfg.n, fallback);
      if (j.contains(key)) {
        if (j[key].is_number()) {
          v.assign(cfg.n, j[key].get<double>());
        } else {
          v = j[key].get<std::vector<double>>();
          require(static_cast<int>(v.size()) == cfg.n, std::string(key) + " must have n entries");
        }
      }
      return v;
    };
    const auto lo = per_dir("cmin", 0.0), hi = per_dir("cmax", 0.025);
    for (int p = 0; p < cfg.n; ++p) cfg.bounds.push_back({lo[p], hi[p]});
  }
  for (const auto& b : cfg.bounds) require(b.hi > b.lo, "bounds need lo < hi");

  if (j.contains("bins")) {
    cfg.bins = j["bins"].is_number() ? Binning(cfg.n, j["bins"].get<int>()) : j["bins"].get<Binning>();
  } else {
    cfg.bins.assign(cfg.n, 1);
  }
  try {
    validate_binning(cfg.bins, cfg.n);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  cfg.steps = get_or(j, "steps", cfg.steps);
  require(cfg.steps >= 1, "steps must be positive");
  cfg.ensemble = get_or(j, "ensemble", cfg.ensemble);
  require(cfg.ensemble >= 1, "ensemble must be positive");
  require(j.contains("seed") && j["seed"].is_number_unsigned(), "seed is mandatory and must be a non-negative integer");
  cfg.seed = j["seed"].get<std::uint64_t>();
  cfg.has_seed = true;

  if (j.contains("axis")) {
    const Json& a = j["axis"];
    require(a.is_object() && a.contains("name") && a.contains("values"), "axis needs name and values");
    cfg.axis = a["name"].get<std::string>();
    require(cfg.axis == "N" || cfg.axis == "cmax" || cfg.axis == "d", "axis name must be N, cmax or d");
    cfg.values = a["values"].get<std::vector<double>>();
    require(!cfg.values.empty(), "axis values must be non-empty");
    for (double v : cfg.values) {
      require(v > 0, "axis values must be positive");
      if (cfg.axis != "cmax") require(v == std::floor(v), "N and d axis values must be integers");
    }
  }
  cfg.grid = get_or(j, "grid", cfg.grid);
  require(cfg.grid == 0 || cfg.grid >= 2, "grid must be 0 (lattice vertices) or at least 2");
  cfg.fit = get_or(j, "fit", cfg.fit);
  cfg.draw = get_or(j, "draw", cfg.draw);
  require(cfg.draw >= 0, "draw must be non-negative");
  cfg.target = get_or(j, "target", cfg.target);
  require(cfg.target > 0, "target must be positive");
  cfg.cap = get_or(j, "cap", cfg.cap);
  require(cfg.cap >= 0, "cap must be non-negative");
  cfg.repeats = get_or(j, "repeats", cfg.repeats);
  require(cfg.repeats >= 5, "repeats must be at least 5");
  cfg.warmup = get_or(j, "warmup", cfg.warmup);
  require(cfg.warmup >= 0, "warmup must be non-negative");
  cfg.threads = get_or(j, "threads", cfg.threads);
  require(cfg.threads >= 1, "threads must be positive");
  cfg.orthogonalize = get_or(j, "orthogonalize", cfg.orthogonalize);
  cfg.state = get_or(j, "state", cfg.state);
  cfg.tol = get_or(j, "tol", cfg.tol);
  require(cfg.tol >= 1e-14 && cfg.tol <= 1e-6, "tol must lie in [1e-14, 1e-6]");
  cfg.out = get_or<std::string>(j, "out", "");
  return cfg;
}

ParametricHamiltonian draw_hamiltonian(const RunConfig& cfg, int k, const std::vector<Bounds>& bounds,
                                       int d) {
  const EnsembleSpec spec{d > 0 ? d : cfg.d, cfg.sigma, mix_seed(cfg.seed, static_cast<std::uint64_t>(k))};
  return random_hamiltonian(spec, cfg.n, bounds, cfg.orthogonalize);
}

double probe_max_infidelity(const ParametricHamiltonian& ham, Method method, const Binning& bins,
                            int steps) {
  switch (method) {
    case Method::kUi:
    case Method::kSymUi: {
      BuildOptions opt;
      opt.symmetric = method == Method::kSymUi;
      const UICache cache = build_cache(ham, bins, opt);
      const Lattice& lat = cache.lattice;
      std::int64_t count = 1;
      for (int b : bins) count *= b;
      double worst = 0.0;
      Index bin(bins.size(), 0);
      for (std::int64_t k = 0; k < count; ++k) {
        const RealVector c = bin_center(lat, bin);
        worst = std::max(worst, avg_gate_infidelity(exact_unitary(ham, c), evaluate(cache, c)));
        for (size_t p = 0; p < bin.size() && ++bin[p] == bins[p]; ++p) bin[p] = 0;
      }
      return worst;
    }
    case Method::kTrotter:
    case Method::kSymTrotter: {
      const TrotterCache cache = build_trotter_cache(ham);
      const RealVector c = upper_corner(ham);
      const ComplexMatrix u = method == Method::kTrotter ? trotter_unitary(cache, c, steps)
                                                         : strang_unitary(cache, c, steps);
      return avg_gate_infidelity(exact_unitary(ham, c), u);
    }
    case Method::kExact:
      return 0.0;
    case Method::kExpmAction:
      break;
  }
  throw ConfigError("method " + method_name(method) + " has no unitary convergence sweep");
}

std::vector<double> SweepResult::values(Method m) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.method == m) out.push_back(r.value);
  return out;
}

std::vector<double> SweepResult::means(Method m) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.method == m) out.push_back(r.stats.mean);
  return out;
}

std::vector<double> SweepResult::times(Method m) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.method == m) out.push_back(r.time_median);
  return out;
}

SweepResult run_converge(const RunConfig& cfg) {
  const auto values = axis_values(cfg);
  const size_t nm = cfg.methods.size(), nv = values.size();
  for (Method m : cfg.methods) {
    require(m != Method::kExpmAction, "expm-action has no convergence parameter");
    if (is_product_formula(m) && cfg.axis == "N") {
      for (double v : values) {
        const int s = static_cast<int>(v);
        require((s & (s - 1)) == 0, "product-formula step counts must be powers of two");
      }
    }
  }
  // samples[value][method][draw]
  std::vector<std::vector<std::vector<double>>> samples(
      nv, std::vector<std::vector<double>>(nm, std::vector<double>(cfg.ensemble)));
  parallel_for(cfg.ensemble, cfg.threads, [&](std::int64_t k) {
    for (size_t v = 0; v < nv; ++v) {
      const Point pt = resolve(cfg, values[v]);
      const ParametricHamiltonian ham = draw_hamiltonian(cfg, static_cast<int>(k), pt.bounds, pt.d);
      for (size_t m = 0; m < nm; ++m) {
        samples[v][m][k] = probe_max_infidelity(ham, cfg.methods[m], pt.bins, pt.steps);
      }
    }
  });
  SweepResult out;
  out.axis = cfg.axis;
  for (size_t m = 0; m < nm; ++m) {
    for (size_t v = 0; v < nv; ++v) {
      SweepRow row;
      row.method = cfg.methods[m];
      row.value = values[v];
      row.samples = samples[v][m];
      row.stats = asymmetric_std(row.samples);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

std::vector<FitSample> sample_cell(const UICache& cache, const Index& seed, const std::vector<int>& signs,
                                   int count, Rng& rng) {
  const int n = cache.num_params();
  const Lattice& lat = cache.lattice;
  std::vector<FitSample> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    const RealVector a = sample_volume(n, Volume::kUiCell, rng);
    CellDecomposition cell{seed, RealVector(n), signs};
    RealVector c(n);
    for (int p = 0; p < n; ++p) {
      cell.alpha(p) = signs[p] * a(p);
      c(p) = lat.bounds()[p].lo + (seed[p] + cell.alpha(p)) * lat.spacing(p);
    }
    out.push_back({a, avg_gate_infidelity(exact_unitary(*cache.ham, c), evaluate_cell(cache, cell))});
  }
  return out;
}

MapResult run_map(const RunConfig& cfg) {
  require(cfg.n == 2, "map needs n = 2");
  require(cfg.methods.size() == 1, "map takes exactly one method");
  const Method method = cfg.methods[0];
  require(method != Method::kExpmAction, "map does not support expm-action");
  require(!cfg.fit || method == Method::kUi || method == Method::kSymUi, "fit residuals need an interpolation method");
  const ParametricHamiltonian ham = draw_hamiltonian(cfg, cfg.draw, cfg.bounds);

  MapResult out;
  for (int p = 0; p < 2; ++p) {
    auto& axis = p == 0 ? out.c1 : out.c2;
    const Bounds& b = cfg.bounds[p];
    const int g = cfg.grid == 0 ? cfg.bins[p] + 1 : cfg.grid;
    for (int k = 0; k < g; ++k) axis.push_back(k == g - 1 ? b.hi : b.lo + b.width() * k / (g - 1));
  }
  const auto g1 = static_cast<Eigen::Index>(out.c1.size()), g2 = static_cast<Eigen::Index>(out.c2.size());
  out.infidelity.resize(g1, g2);

  std::unique_ptr<UICache> cache;
  std::unique_ptr<TrotterCache> trotter;
  if (is_product_formula(method)) {
    trotter = std::make_unique<TrotterCache>(build_trotter_cache(ham));
  } else if (method != Method::kExact) {
    BuildOptions opt;
    opt.symmetric = method == Method::kSymUi;
    opt.threads = cfg.threads;
    cache = std::make_unique<UICache>(build_cache(ham, cfg.bins, opt));
  }
  parallel_for(g1 * g2, cfg.threads, [&](std::int64_t k) {
    const Eigen::Index i = k / g2, j = k % g2;
    RealVector c(2);
    c << out.c1[i], out.c2[j];
    const ComplexMatrix ex = exact_unitary(ham, c);
    ComplexMatrix u;
    if (cache) u = evaluate(*cache, c);
    else if (method == Method::kTrotter) u = trotter_unitary(*trotter, c, cfg.steps);
    else if (method == Method::kSymTrotter) u = strang_unitary(*trotter, c, cfg.steps);
    else u = ex;
    out.infidelity(i, j) = avg_gate_infidelity(ex, u);
  });
  out.max_infidelity = out.infidelity.maxCoeff();

  if (cfg.fit) {
    // One polynomial fit per visited cell, sampled at twice the basis size.
    constexpr int kOrder = 4;
    const int basis = static_cast<int>(fit_exponents(2, kOrder).size());
    std::map<std::int64_t, std::pair<PolyFit, double>> fits;
    Rng rng = make_rng(cfg.seed, 7);
    out.fit_error.resize(g1, g2);
    for (Eigen::Index i = 0; i < g1; ++i) {
      for (Eigen::Index j = 0; j < g2; ++j) {
        RealVector c(2);
        c << out.c1[i], out.c2[j];
        const CellDecomposition cell = cache->lattice.locate(c);
        const std::int64_t slot = cache->coupling_slot(cell.seed, cell.signs);
        auto it = fits.find(slot);
        if (it == fits.end()) {
          const auto samples = sample_cell(*cache, cell.seed, cell.signs, 2 * basis, rng);
          double mean = 0.0;
          for (const auto& s : samples) mean += s.value / samples.size();
          it = fits.emplace(slot, std::make_pair(fit_infidelity(samples, kOrder, true), mean)).first;
        }
        const double pred = it->second.first.predict(cell.alpha.cwiseAbs());
        out.fit_error(i, j) = std::abs(pred - out.infidelity(i, j)) / it->second.second;
      }
    }
  }
  return out;
}

SweepResult run_timing(const RunConfig& cfg) {
  constexpr int kPoints = 16;
  constexpr double kMinRepeat = 0.01;
  const auto values = axis_values(cfg);
  SweepResult out;
  out.axis = cfg.axis;
  for (Method m : cfg.methods) {
    require(cfg.state || m != Method::kExpmAction, "expm-action needs state = true");
    require(!cfg.state || m != Method::kSymUi, "sym-ui has no state path");
    if (is_product_formula(m) && !cfg.state) {
      for (double v : values) {
        const int s = cfg.axis == "N" ? static_cast<int>(v) : cfg.steps;
        require((s & (s - 1)) == 0, "product-formula step counts must be powers of two");
      }
    }
  }
  for (Method method : cfg.methods) {
    for (double value : values) {
      const Point pt = resolve(cfg, value);
      const ParametricHamiltonian ham = draw_hamiltonian(cfg, cfg.draw, pt.bounds, pt.d);
      const int d = ham.dim();
      Rng rng = make_rng(cfg.seed, 1);
      std::vector<RealVector> points(kPoints);
      std::vector<ComplexVector> states(kPoints);
      for (int k = 0; k < kPoints; ++k) {
        points[k].resize(cfg.n);
        for (int p = 0; p < cfg.n; ++p) points[k](p) = pt.bounds[p].lo + pt.bounds[p].width() * uniform01(rng);
        states[k] = haar_state(d, rng);
      }

      // Preparation is excluded from the timings.
      std::unique_ptr<UICache> cache;
      std::unique_ptr<TrotterCache> trotter;
      if (method == Method::kUi || method == Method::kSymUi) {
        BuildOptions opt;
        opt.symmetric = method == Method::kSymUi;
        opt.threads = cfg.threads;
        cache = std::make_unique<UICache>(build_cache(ham, pt.bins, opt));
      } else if (is_product_formula(method)) {
        trotter = std::make_unique<TrotterCache>(build_trotter_cache(ham));
      }

      std::vector<ComplexMatrix> units(kPoints);
      std::vector<ComplexVector> vecs(kPoints);
      auto run = [&](int k) {
        const RealVector& c = points[k];
        if (cfg.state) {
          const ComplexVector& psi = states[k];
          switch (method) {
            case Method::kUi: vecs[k] = apply_state(*cache, c, psi); break;
            case Method::kTrotter: vecs[k] = trotter_apply_state(*trotter, c, pt.steps, psi); break;
            case Method::kSymTrotter: vecs[k] = strang_apply_state(*trotter, c, pt.steps, psi); break;
            case Method::kExpmAction: vecs[k] = expm_action(assemble(ham, c), psi, cfg.tol); break;
            case Method::kExact: {
              const EigenSystem eig = linalg::hermitian_eig(assemble(ham, c));
              ComplexVector x = eig.vectors.adjoint() * psi;
              linalg::scale_in_place(eig.values, 1.0, x);
              vecs[k] = eig.vectors * x;
              break;
            }
            case Method::kSymUi: break;
          }
        } else {
          switch (method) {
            case Method::kUi:
            case Method::kSymUi: units[k] = evaluate(*cache, c); break;
            case Method::kTrotter: units[k] = trotter_unitary(*trotter, c, pt.steps); break;
            case Method::kSymTrotter: units[k] = strang_unitary(*trotter, c, pt.steps); break;
            case Method::kExact: units[k] = exact_unitary(ham, c); break;
            case Method::kExpmAction: break;
          }
        }
      };
      auto batch = [&] {
        const auto t0 = Clock::now();
        for (int k = 0; k < kPoints; ++k) run(k);
        return std::chrono::duration<double>(Clock::now() - t0).count();
      };
      double probe = 0.0;
      for (int w = 0; w < cfg.warmup; ++w) probe = batch();
      if (cfg.warmup == 0) probe = batch();
      // Each repeat spans at least kMinRepeat seconds so fast methods are not
      // dominated by clock jitter.
      const int inner = static_cast<int>(std::clamp(std::ceil(kMinRepeat / std::max(probe, 1e-9)), 1.0, 10000.0));
      std::vector<double> per_eval;
      for (int r = 0; r < cfg.repeats; ++r) {
        double total = 0.0;
        for (int b = 0; b < inner; ++b) total += batch();
        per_eval.push_back(total / (static_cast<double>(inner) * kPoints));
      }

      SweepRow row;
      row.method = method;
      row.value = value;
      for (int k = 0; k < kPoints; ++k) {
        if (cfg.state) {
          const ComplexMatrix ex = exact_unitary(ham, points[k]);
          row.samples.push_back(state_infidelity(ex * states[k], vecs[k]));
        } else {
          row.samples.push_back(avg_gate_infidelity(exact_unitary(ham, points[k]), units[k]));
        }
      }
      row.stats = asymmetric_std(row.samples);
      row.time_median = median(per_eval);
      row.time_min = *std::min_element(per_eval.begin(), per_eval.end());
      row.time_max = *std::max_element(per_eval.begin(), per_eval.end());
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

OptbinsResult run_optbins(const RunConfig& cfg) {
  OptbinsResult out;
  out.draws.resize(cfg.ensemble);
  const bool search = cfg.cap > 0 && cfg.n <= 2;
  parallel_for(cfg.ensemble, cfg.threads, [&](std::int64_t k) {
    const ParametricHamiltonian ham = draw_hamiltonian(cfg, static_cast<int>(k), cfg.bounds);
    TraceOptions topt;
    topt.target = cfg.target;
    const InfidelityModel model = estimate_traces(ham, topt);
    OptbinsDraw& draw = out.draws[k];
    draw.result = optimize_bins(model);
    draw.measured = probe_infidelity(ham, draw.result.bins);
    draw.bin_product = 1;
    for (int b : draw.result.bins) draw.bin_product *= b;
    if (search) draw.exhaustive_cache = cache_size(exhaustive_bins(model, cfg.cap));
    draw.kappa_ratio = model.kappa / model.kappa_theory;
  });
  std::vector<double> total, product, acc, opt;
  for (const auto& d : out.draws) {
    total.push_back(static_cast<double>(d.result.cache_total));
    product.push_back(static_cast<double>(d.bin_product));
    acc.push_back(std::abs(d.result.model - d.measured) / d.measured);
    if (search) {
      opt.push_back(static_cast<double>(d.result.cache_total - d.exhaustive_cache) / d.exhaustive_cache);
    }
  }
  out.cache_total = asymmetric_std(total);
  out.bin_product = asymmetric_std(product);
  out.rel_accuracy = asymmetric_std(acc);
  if (search) out.rel_optimum = asymmetric_std(opt);
  return out;
}

void write_sweep_csv(const RunConfig& cfg, const SweepResult& sweep, const std::string& path) {
  CsvWriter csv(path,
                {"method", "axis", "value", "mean", "std_lo", "std_hi", "draws", "time_median_s",
                 "time_min_s", "time_max_s"},
                cfg.hash());
  for (const auto& r : sweep.rows) {
    const bool timed = r.time_median > 0;
    csv.row({method_name(r.method), sweep.axis, format_double(r.value), format_double(r.stats.mean),
             format_double(r.stats.std_lo), format_double(r.stats.std_hi), std::to_string(r.samples.size()),
             timed ? format_double(r.time_median) : "", timed ? format_double(r.time_min) : "",
             timed ? format_double(r.time_max) : ""});
  }
}

void write_map_csv(const RunConfig& cfg, const MapResult& map, const std::string& path) {
  CsvWriter csv(path, {"c_1", "c_2", "infidelity", "method", "N", "fit_rel_error"}, cfg.hash());
  const std::string method = method_name(cfg.methods[0]);
  const std::string bins = is_product_formula(cfg.methods[0]) ? std::to_string(cfg.steps) : join_bins(cfg.bins);
  for (size_t i = 0; i < map.c1.size(); ++i) {
    for (size_t j = 0; j < map.c2.size(); ++j) {
      csv.row({format_double(map.c1[i]), format_double(map.c2[j]), format_double(map.infidelity(i, j)), method,
               bins, map.fit_error.size() ? format_double(map.fit_error(i, j)) : ""});
    }
  }
}

Json optbins_report(const RunConfig& cfg, const OptbinsResult& res) {
  auto stats = [](const AsymmetricStd& s) { return Json{{"mean", s.mean}, {"stdLo", s.std_lo}, {"stdHi", s.std_hi}}; };
  Json draws = Json::array();
  for (size_t k = 0; k < res.draws.size(); ++k) {
    const auto& d = res.draws[k];
    Json entry = optimizer_report(d.result, d.measured);
    entry["draw"] = k;
    entry["binProduct"] = d.bin_product;
    entry["kappaRatio"] = d.kappa_ratio;
    if (d.exhaustive_cache >= 0) entry["exhaustiveCacheTotal"] = d.exhaustive_cache;
    draws.push_back(std::move(entry));
  }
  Json summary{{"cacheTotal", stats(res.cache_total)},
               {"binProduct", stats(res.bin_product)},
               {"relAccuracy", stats(res.rel_accuracy)}};
  if (cfg.cap > 0 && cfg.n <= 2) summary["relErrorOptimum"] = stats(res.rel_optimum);
  return {{"version", kCsvFormatVersion}, {"configHash", cfg.hash()}, {"draws", std::move(draws)},
          {"summary", std::move(summary)}};
}

}  // namespace uniterp
