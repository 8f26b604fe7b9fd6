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


#include "uniterp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace uniterp {

void validate_binning(const Binning& bins, int n) {
  if (static_cast<int>(bins.size()) != n)
    throw ConfigError("binning has " + std::to_string(bins.size()) + " entries, expected " +
                      std::to_string(n));
  for (int b : bins)
    if (b < 1) throw ConfigError("every direction needs at least one bin");
}

Lattice::Lattice(std::vector<Bounds> bounds, Binning bins)
    : bounds_(std::move(bounds)), bins_(std::move(bins)) {
  validate_binning(bins_, static_cast<int>(bounds_.size()));
  for (int b : bins_) num_vertices_ *= (b + 1);
}

std::int64_t Lattice::vertex_index(const Index& i) const {
  std::int64_t flat = 0;
  for (int p = num_params() - 1; p >= 0; --p) {
    if (i[p] < 0 || i[p] > bins_[p]) throw OutOfBoundsError("vertex index out of range");
    flat = flat * (bins_[p] + 1) + i[p];
  }
  return flat;
}

Index Lattice::vertex(std::int64_t flat) const {
  Index i(num_params());
  for (int p = 0; p < num_params(); ++p) {
    i[p] = static_cast<int>(flat % (bins_[p] + 1));
    flat /= (bins_[p] + 1);
  }
  return i;
}

bool Lattice::odd_summed(const Index& i) {
  int s = 0;
  for (int v : i) s += v;
  return (s & 1) == 1;
}

std::int64_t Lattice::num_edges(int p) const {
  std::int64_t count = 1;
  for (int q = 0; q < num_params(); ++q) count *= (q == p) ? bins_[q] : bins_[q] + 1;
  return count;
}

std::int64_t Lattice::edge_index(const Index& lower, int p) const {
  std::int64_t flat = 0;
  for (int q = num_params() - 1; q >= 0; --q) {
    const int extent = (q == p) ? bins_[q] : bins_[q] + 1;
    if (lower[q] < 0 || lower[q] >= extent) throw OutOfBoundsError("edge index out of range");
    flat = flat * extent + lower[q];
  }
  return flat;
}

RealVector Lattice::amplitude(const Index& i) const {
  RealVector c(num_params());
  for (int p = 0; p < num_params(); ++p) {
    if (i[p] < 0 || i[p] > bins_[p]) throw OutOfBoundsError("vertex index out of range");
    c(p) = bounds_[p].lo + i[p] * spacing(p);
  }
  return c;
}

CellDecomposition Lattice::locate(const RealVector& c, BoundsMode mode) const {
  const int n = num_params();
  if (c.size() != n) throw DimensionError("locate: amplitude vector has wrong length");
  RealVector x(n);
  for (int p = 0; p < n; ++p) {
    const Bounds& b = bounds_[p];
    const double tol = 1e-12 * std::max(1.0, std::abs(b.hi) + std::abs(b.lo));
    if (mode == BoundsMode::kError && (c(p) < b.lo - tol || c(p) > b.hi + tol)) {
      throw OutOfBoundsError("locate: c[" + std::to_string(p) + "] = " + std::to_string(c(p)) +
                             " outside [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) +
                             "]");
    }
    x(p) = std::clamp((c(p) - b.lo) * bins_[p] / b.width(), 0.0, static_cast<double>(bins_[p]));
  }

  Index nearest(n);
  RealVector offset(n);
  for (int p = 0; p < n; ++p) {
    nearest[p] = std::clamp(static_cast<int>(std::floor(x(p) + 0.5)), 0, bins_[p]);
    offset(p) = x(p) - nearest[p];
  }
  CellDecomposition cell;
  cell.seed = nearest;
  if (!odd_summed(nearest)) {
    int m = 0;
    for (int p = 1; p < n; ++p)
      if (std::abs(offset(p)) > std::abs(offset(m))) m = p;
    int step = offset(m) >= 0.0 ? 1 : -1;
    // Only a vertex hit on the upper face can push the step off the grid.
    if (nearest[m] + step > bins_[m]) step = -1;
    cell.seed[m] += step;
  }
  cell.alpha.resize(n);
  cell.signs.resize(n);
  for (int p = 0; p < n; ++p) {
    cell.alpha(p) = x(p) - cell.seed[p];
    if (cell.alpha(p) > 0.0)
      cell.signs[p] = 1;
    else if (cell.alpha(p) < 0.0)
      cell.signs[p] = -1;
    else
      cell.signs[p] = cell.seed[p] < bins_[p] ? 1 : -1;
  }
  return cell;
}

RealVector lattice_amplitude(const ParametricHamiltonian& ham, const Binning& bins, const Index& i) {
  return Lattice(ham.bounds(), bins).amplitude(i);
}

CellDecomposition locate(const ParametricHamiltonian& ham, const Binning& bins, const RealVector& c,
                         BoundsMode mode) {
  return Lattice(ham.bounds(), bins).locate(c, mode);
}

CacheCounts cache_counts(const Binning& bins, bool symmetric) {
  const int n = static_cast<int>(bins.size());
  validate_binning(bins, n);
  if (n == 0) throw ConfigError("cache_counts: empty binning");
  auto edges = [&](int p) {
    std::int64_t count = 1;
    for (int q = 0; q < n; ++q) count *= (q == p) ? bins[q] : bins[q] + 1;
    return count;
  };
  CacheCounts out;
  for (int p = 0; p < n; ++p) out.num_e += edges(p);
  out.num_l = edges(n - 1);
  // The symmetric chain ends on last-direction edges at both sides.
  out.num_r = symmetric ? edges(n - 1) : edges(0);
  if (n == 1 && !symmetric) return out;
  std::int64_t cells = 1;
  for (int b : bins) cells *= b;
  out.num_c = (std::int64_t{1} << (n - 1)) * cells;
  out.num_c_matrices = out.num_c * (symmetric ? 2 * n - 1 : n - 1);
  return out;
}

}  // namespace uniterp
