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

#include "uniterp/common.hpp"
#include "uniterp/grid.hpp"
#include "uniterp/hamiltonian.hpp"

namespace uniterp {

/// Bin-infidelity model I(N) = kappa * sum_{i<=j} T_ij / (N_i^2 N_j^2).
///
/// T_ij = 2 Re Tr(A_ij^2) is measured on a test binning and rescaled to one
/// bin per direction. kappa is fitted to the probe infidelity (alpha = 1/2 in
/// every direction) on the test binning; the leading-order value is
/// -1 / (2 (d + 1)).
struct InfidelityModel {
  int n = 0;
  int dim = 0;
  RealMatrix traces;
  double kappa = 0.0;
  double kappa_theory = 0.0;
  Binning test_bins;
  double probe_at_test = 0.0;
  double target = 1e-12;
};

struct TraceOptions {
  double target = 1e-12;
  int threads = 1;
  int max_refinements = 8;  // test-bin doublings allowed on phase wrap
};

/// The probe cell sits in the first bin of every direction: seed e_0 with
/// s_0 = -1 and s_p = +1 otherwise.
CellDecomposition probe_cell(const Binning& bins, const std::vector<double>& alpha_abs);

/// Infidelity of the interpolation at alpha = 1/2 in every direction of the
/// probe cell, measured against the exact unitary.
double probe_infidelity(const ParametricHamiltonian& ham, const Binning& bins);

/// Raw A_ij estimates on a given test binning (diagonal first, then cross
/// terms with both diagonal parts removed).
std::vector<std::vector<ComplexMatrix>> estimate_generators(const ParametricHamiltonian& ham,
                                                            const Binning& test_bins,
                                                            int threads = 1);

InfidelityModel estimate_traces(const ParametricHamiltonian& ham, const TraceOptions& options = {});

double model_infidelity(const InfidelityModel& model, const Binning& bins);

struct OptimizerStep {
  int phase = 0;
  Binning bins;
  std::int64_t cache = 0;
  double model = 0.0;
};

struct OptimizerResult {
  Binning bins;
  std::int64_t cache_total = 0;
  double model = 0.0;
  std::vector<OptimizerStep> steps;
};

struct OptimizerOptions {
  Binning initial;  // empty means one bin per direction
  int max_bins = 1 << 16;
};

/// Greedy increase by best infidelity-per-cache ratio, greedy decrease, then
/// pairwise refinement where one direction loses a bin and another is resized
/// analytically. The result satisfies model_infidelity < model.target.
OptimizerResult optimize_bins(const InfidelityModel& model, const OptimizerOptions& options = {});

/// Smallest cache over [1, cap]^n meeting the target; ties go to the lower
/// model infidelity.
Binning exhaustive_bins(const InfidelityModel& model, int cap);

std::int64_t cache_size(const Binning& bins);

}  // namespace uniterp
