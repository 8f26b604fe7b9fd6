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

#include <utility>
#include <vector>

#include "uniterp/common.hpp"
#include "uniterp/random.hpp"

namespace uniterp {

/// d/(d+1) - |Tr(Ua^dagger Ub)|^2 / (d(d+1)).
double avg_gate_infidelity(const ComplexMatrix& ua, const ComplexMatrix& ub);
/// 1 - |<a|b>|^2.
double state_infidelity(const ComplexVector& a, const ComplexVector& b);

/// Mean with separate spreads below and above it. Samples equal to the mean
/// count on both sides; each side divides by (count - 1) and reports 0 when
/// it holds fewer than two samples.
struct AsymmetricStd {
  double mean = 0.0;
  double std_lo = 0.0;
  double std_hi = 0.0;
};

AsymmetricStd asymmetric_std(const std::vector<double>& samples);

enum class Volume {
  kHypercube,  // [0,1]^n
  kUiCell,     // the positive-orthant part of a Voronoi cell: a_p + a_q <= 1
};

/// Multi-indices j with 1 <= |j| <= m, ordered by total degree and then
/// lexicographically.
std::vector<std::vector<int>> fit_exponents(int n, int m);

/// I(alpha) ~ sum_j c_j prod_i alpha_i^{j_i}; no constant term.
struct PolyFit {
  int n = 0;
  int m = 0;
  std::vector<std::vector<int>> exponents;
  RealVector coefficients;
  Volume volume = Volume::kUiCell;

  double predict(const RealVector& alpha) const;
};

struct FitSample {
  RealVector alpha;
  double value = 0.0;
};

/// Least-squares fit. Needs at least twice as many samples as basis
/// functions; with `corner_zero` the n unit corners enter as exact zeros and
/// count toward that requirement.
PolyFit fit_infidelity(const std::vector<FitSample>& samples, int m, bool corner_zero,
                       Volume volume = Volume::kUiCell);

/// Exact average of prod_i alpha_i^{j_i} over the volume.
double basis_average(const std::vector<int>& j, Volume volume);
double volume_size(int n, Volume volume);

double cell_average_infidelity(const PolyFit& fit);

/// Uniform point in the volume (rejection sampling for the cell).
RealVector sample_volume(int n, Volume volume, Rng& rng);

AsymmetricStd cell_std_infidelity(const PolyFit& fit, Rng& rng, int sample_count = 100);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace uniterp
