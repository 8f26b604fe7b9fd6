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

#include <cstdint>
#include <string>
#include <vector>

#include "uniterp/hamiltonian.hpp"
#include "uniterp/io.hpp"
#include "uniterp/metrics.hpp"
#include "uniterp/ui.hpp"

namespace uniterp {

enum class Method { kUi, kSymUi, kTrotter, kSymTrotter, kExact, kExpmAction };

Method parse_method(const std::string& name);
std::string method_name(Method m);
bool is_product_formula(Method m);

/// Parsed run configuration. Every field has a default except the seed; the
/// raw JSON is kept so outputs can carry its hash.
struct RunConfig {
  std::vector<Method> methods{Method::kUi};
  int d = 16;
  int n = 2;
  double sigma = kPi / 2;
  std::vector<Bounds> bounds;  // defaults to [0, 0.025] per direction
  Binning bins;                // defaults to one bin per direction
  int steps = 1;
  int ensemble = 100;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string axis = "none";  // N, cmax, d or none
  std::vector<double> values;
  int grid = 41;  // map resolution per direction; 0 selects lattice vertices
  bool fit = false;
  int draw = 0;
  double target = 1e-12;
  int cap = 0;  // exhaustive-search cap for optbins; 0 disables
  int repeats = 5;
  int warmup = 2;
  int threads = 1;
  bool orthogonalize = false;
  bool state = false;  // timing: propagate a state instead of building a unitary
  double tol = 1e-12;  // expm-action tolerance
  std::string out;
  Json raw;

  /// Validates and fills defaults. Throws ConfigError.
  static RunConfig from_json(const Json& j);
  std::string hash() const { return config_hash(raw); }
};

/// Hamiltonian of ensemble draw k; the same draw index gives the same
/// matrices for any bounds, so sweeps over amplitudes share inputs.
ParametricHamiltonian draw_hamiltonian(const RunConfig& cfg, int k, const std::vector<Bounds>& bounds,
                                       int d = 0);

/// Maximum infidelity over the probe points of one method. Interpolation
/// methods probe every bin center; product formulas probe c = c_max.
double probe_max_infidelity(const ParametricHamiltonian& ham, Method method, const Binning& bins,
                            int steps);

/// Infidelity at `count` points drawn uniformly from one UI cell; alpha in
/// each sample holds magnitudes.
std::vector<FitSample> sample_cell(const UICache& cache, const Index& seed, const std::vector<int>& signs,
                                   int count, Rng& rng);

struct SweepRow {
  Method method = Method::kUi;
  double value = 0.0;
  AsymmetricStd stats;
  std::vector<double> samples;  // per draw, in draw order
  double time_median = 0.0;     // seconds; timing runs only
  double time_min = 0.0;
  double time_max = 0.0;
};

struct SweepResult {
  std::string axis;
  std::vector<SweepRow> rows;

  std::vector<double> values(Method m) const;
  std::vector<double> means(Method m) const;
  std::vector<double> times(Method m) const;
};

SweepResult run_converge(const RunConfig& cfg);

struct MapResult {
  std::vector<double> c1, c2;
  RealMatrix infidelity;        // rows follow c1, columns c2
  RealMatrix fit_error;         // empty unless requested
  double max_infidelity = 0.0;
};

MapResult run_map(const RunConfig& cfg);

SweepResult run_timing(const RunConfig& cfg);

struct OptbinsDraw {
  OptimizerResult result;
  double measured = 0.0;
  std::int64_t bin_product = 0;
  std::int64_t exhaustive_cache = -1;  // -1 when not searched
  double kappa_ratio = 0.0;
};

struct OptbinsResult {
  std::vector<OptbinsDraw> draws;
  AsymmetricStd cache_total, bin_product, rel_accuracy, rel_optimum;
};

OptbinsResult run_optbins(const RunConfig& cfg);

/// Writers; each output line carries the version tag and config hash.
void write_sweep_csv(const RunConfig& cfg, const SweepResult& sweep, const std::string& path);
void write_map_csv(const RunConfig& cfg, const MapResult& map, const std::string& path);
Json optbins_report(const RunConfig& cfg, const OptbinsResult& res);

}  // namespace uniterp
