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
#include <memory>
#include <vector>

#include "uniterp/common.hpp"
#include "uniterp/grid.hpp"
#include "uniterp/hamiltonian.hpp"

namespace uniterp {

struct BuildOptions {
  bool symmetric = false;
  int threads = 1;
  std::int64_t memory_budget = std::int64_t{8} << 30;  // bytes
};

/// Interpolation cache over a lattice.
///
/// Every lattice edge joins an odd-summed and an even-summed vertex and is
/// stored with that orientation. For the plain variant with n > 1:
///   phases[p][e]   eigenphases of U_even U_odd^dagger on edge e along p
///   left[e]        eigenvectors V on last-direction edges
///   right[e]       V^dagger U_odd on first-direction edges
///   couplings[k]   V_{p+1}^dagger V_p, p = 0..n-2, for the odd vertex and
///                  orthant encoded in k (see coupling_slot)
/// so that U = L D_{n-1} C_{n-2} ... C_0 D_0 R with D_p = exp(-i E_p |alpha_p|).
/// For n = 1, left and right both live on the single direction's edges.
///
/// The symmetric variant interpolates the half step exp(-i H / 2) twice, once
/// displacing from the left and once from the right:
///   U = hU_i X_{n-1} ... X_0 Y_0 ... Y_{n-1} hU_i
/// with X_p = (hU_i^dagger hU_{i+s_p})^|alpha_p| and Y_p = (hU_{i+s_p} hU_i^dagger)^|alpha_p|.
/// Its coupling entries hold 2n-1 matrices in application order (right
/// wing, junction, left wing); left and right both sit on last-direction
/// edges, and n = 1 also gets one coupling entry per edge.
struct UICache {
  UICache(std::shared_ptr<const ParametricHamiltonian> h, Lattice lat, bool sym)
      : ham(std::move(h)), lattice(std::move(lat)), symmetric(sym) {}

  std::shared_ptr<const ParametricHamiltonian> ham;
  Lattice lattice;
  bool symmetric = false;
  std::vector<std::vector<RealVector>> phases;
  std::vector<ComplexMatrix> left;
  std::vector<ComplexMatrix> right;
  std::vector<std::vector<ComplexMatrix>> couplings;

  int dim() const { return ham->dim(); }
  int num_params() const { return lattice.num_params(); }
  /// Index into `couplings`; bit p of the orthant is set when s_p = -1.
  std::int64_t coupling_slot(const Index& seed, const std::vector<int>& signs) const;
  /// Entries actually held by this cache.
  CacheCounts counts() const;
};

UICache build_cache(const ParametricHamiltonian& ham, const Binning& bins,
                    const BuildOptions& options = {});

/// Interpolated unitary at c. Works for plain and symmetric caches.
ComplexMatrix evaluate(const UICache& cache, const RealVector& c);
/// Interpolated unitary for an explicit cell; the seed must be odd-summed and
/// every seed + s_p e_p must lie on the lattice. |alpha_p| may exceed the
/// Voronoi cell.
ComplexMatrix evaluate_cell(const UICache& cache, const CellDecomposition& cell);

/// Symmetric interpolation; throws unless the cache was built symmetric.
ComplexMatrix evaluate_sym(const UICache& cache, const RealVector& c);

struct GradientResult {
  ComplexMatrix u;
  std::vector<ComplexMatrix> du;
  /// Set where c sits on a vertex, an edge end or a Voronoi face; du is then
  /// the derivative from the side the cell decomposition selected.
  std::vector<bool> one_sided;
};

GradientResult evaluate_with_gradients(const UICache& cache, const RealVector& c);

/// evaluate(cache, c) * psi using matrix-vector products only.
ComplexVector apply_state(const UICache& cache, const RealVector& c, const ComplexVector& psi);

/// Product of fractional displacement powers recomputed from scratch, without
/// any cache. Used as the cache-correctness reference.
ComplexMatrix reference_evaluate(const ParametricHamiltonian& ham, const Binning& bins,
                                 const RealVector& c);
ComplexMatrix reference_evaluate_cell(const ParametricHamiltonian& ham, const Binning& bins,
                                      const CellDecomposition& cell);
ComplexMatrix reference_evaluate_sym(const ParametricHamiltonian& ham, const Binning& bins,
                                     const RealVector& c);

}  // namespace uniterp
