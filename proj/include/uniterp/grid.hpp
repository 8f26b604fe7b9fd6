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
#include "uniterp/hamiltonian.hpp"

namespace uniterp {

/// Bins per parameter direction, each at least 1.
using Binning = std::vector<int>;
using Index = std::vector<int>;

void validate_binning(const Binning& bins, int n);

/// Seed vertex of a Voronoi cell plus the signed interpolation parameters.
/// Signs are +1 or -1; a zero alpha carries +1 except on the upper boundary.
struct CellDecomposition {
  Index seed;
  RealVector alpha;
  std::vector<int> signs;
};

enum class BoundsMode { kError, kClamp };

/// Equidistant lattice over the parameter box. Direction 0 varies fastest in
/// flat vertex indices.
class Lattice {
 public:
  Lattice(std::vector<Bounds> bounds, Binning bins);

  int num_params() const { return static_cast<int>(bins_.size()); }
  const Binning& bins() const { return bins_; }
  const std::vector<Bounds>& bounds() const { return bounds_; }
  /// Parameter distance between neighbouring vertices along p.
  double spacing(int p) const { return bounds_[p].width() / bins_[p]; }

  std::int64_t num_vertices() const { return num_vertices_; }
  std::int64_t vertex_index(const Index& i) const;
  Index vertex(std::int64_t flat) const;
  static bool odd_summed(const Index& i);

  /// Edges along p, keyed by their lower vertex.
  std::int64_t num_edges(int p) const;
  std::int64_t edge_index(const Index& lower, int p) const;

  RealVector amplitude(const Index& i) const;
  CellDecomposition locate(const RealVector& c, BoundsMode mode = BoundsMode::kError) const;

 private:
  std::vector<Bounds> bounds_;
  Binning bins_;
  std::int64_t num_vertices_ = 1;
};

RealVector lattice_amplitude(const ParametricHamiltonian& ham, const Binning& bins, const Index& i);
CellDecomposition locate(const ParametricHamiltonian& ham, const Binning& bins, const RealVector& c,
                         BoundsMode mode = BoundsMode::kError);

/// Entry counts of an interpolation cache. A coupling entry holds the chain of
/// n-1 coupling matrices (2n-1 when symmetric) for one (odd vertex, adjacent
/// orthant) pair; a plain cache has none for n = 1. Left matrices sit on
/// last-direction edges and right matrices on first-direction edges.
struct CacheCounts {
  std::int64_t num_c = 0;
  std::int64_t num_l = 0;
  std::int64_t num_r = 0;
  std::int64_t num_e = 0;           // phase vectors, one per lattice edge
  std::int64_t num_c_matrices = 0;  // matrices held inside coupling entries

  std::int64_t total() const { return num_c + num_l + num_r; }
  std::int64_t total_matrices() const { return num_c_matrices + num_l + num_r; }
  bool operator==(const CacheCounts&) const = default;
};

CacheCounts cache_counts(const Binning& bins, bool symmetric = false);

}  // namespace uniterp
