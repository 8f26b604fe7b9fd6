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

#include <memory>
#include <vector>

#include "uniterp/common.hpp"
#include "uniterp/hamiltonian.hpp"
#include "uniterp/linalg.hpp"

namespace uniterp {

/// Eigendecompositions of H_0 .. H_n with the adjacent basis changes
/// C_p = V_{p+1}^dagger V_p precomputed, so one product-formula factor costs
/// one matrix product. Steps are evaluated in the basis of V_n; `fold`
/// = V_0^dagger V_n joins consecutive steps, leaving V_n and V_n^dagger only
/// at the two ends of a run.
struct TrotterCache {
  std::shared_ptr<const ParametricHamiltonian> ham;
  std::vector<EigenSystem> eig;          // 0 is the drift
  std::vector<ComplexMatrix> couplings;  // C_0 .. C_{n-1}
  ComplexMatrix fold;

  int dim() const { return ham->dim(); }
  int num_params() const { return ham->num_params(); }
};

TrotterCache build_trotter_cache(const ParametricHamiltonian& ham);

/// (prod_p exp(-i H_p c_p / steps) exp(-i H_0 / steps))^steps, the product
/// taken with H_1 applied first after the drift. steps must be a power of two;
/// the single step is squared repeatedly.
ComplexMatrix trotter_unitary(const TrotterCache& cache, const RealVector& c, int steps);

/// Symmetric variant: half steps of the parameter terms around a full drift
/// step, H_n outermost.
ComplexMatrix strang_unitary(const TrotterCache& cache, const RealVector& c, int steps);

/// Sequential application of `steps` steps to a state; any positive count.
ComplexVector trotter_apply_state(const TrotterCache& cache, const RealVector& c, int steps,
                                  const ComplexVector& psi);
ComplexVector strang_apply_state(const TrotterCache& cache, const RealVector& c, int steps,
                                 const ComplexVector& psi);

/// exp(-i H) psi by a scaled truncated Taylor series: s = max(1, ceil(|H|_1))
/// substeps, each summed until two consecutive terms fall below tol / s.
ComplexVector expm_action(const ComplexMatrix& h, const ComplexVector& psi, double tol = 1e-12);

}  // namespace uniterp
