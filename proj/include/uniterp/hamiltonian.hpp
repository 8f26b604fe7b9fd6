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
#include <vector>

#include "uniterp/common.hpp"
#include "uniterp/random.hpp"

namespace uniterp {

struct Bounds {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

/// H(c) = H0 + sum_p c_p H_p with c_p restricted to bounds[p].
class ParametricHamiltonian {
 public:
  ParametricHamiltonian(ComplexMatrix drift, std::vector<ComplexMatrix> terms,
                        std::vector<Bounds> bounds);

  int dim() const { return static_cast<int>(drift_.rows()); }
  int num_params() const { return static_cast<int>(terms_.size()); }
  const ComplexMatrix& drift() const { return drift_; }
  const ComplexMatrix& term(int p) const { return terms_.at(p); }
  const std::vector<ComplexMatrix>& terms() const { return terms_; }
  const std::vector<Bounds>& bounds() const { return bounds_; }

  /// True when H_p is identically zero.
  bool term_is_zero(int p) const { return zero_term_.at(p); }

 private:
  ComplexMatrix drift_;
  std::vector<ComplexMatrix> terms_;
  std::vector<Bounds> bounds_;
  std::vector<bool> zero_term_;
};

/// H0 + sum_p c_p H_p. With `strict`, c must lie within the bounds (1e-12 slack).
ComplexMatrix assemble(const ParametricHamiltonian& ham, const RealVector& c, bool strict = false);

/// exp(-i H t) for hermitian H through its eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t = 1.0);

/// exp(-i H(c)); the reference every approximation is measured against.
ComplexMatrix exact_unitary(const ParametricHamiltonian& ham, const RealVector& c,
                            bool strict = false);

struct EnsembleSpec {
  int dim = 16;
  double sigma = kPi / 2;
  std::uint64_t seed = 0;
};

ComplexMatrix haar_unitary(int d, Rng& rng);

/// U diag(E) U^dagger with U Haar and E_k ~ N(0, sigma^2).
ComplexMatrix random_hermitian(int d, double sigma, Rng& rng);

/// Drift plus n terms drawn from the ensemble. With `orthogonalize` the terms
/// are made trace-orthogonal (Gram-Schmidt), keeping each matrix's norm.
ParametricHamiltonian random_hamiltonian(const EnsembleSpec& spec, int n, std::vector<Bounds> bounds,
                                         bool orthogonalize = false);

}  // namespace uniterp
