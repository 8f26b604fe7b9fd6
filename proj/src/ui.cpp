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


#include "uniterp/ui.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "uniterp/linalg.hpp"
#include "uniterp/parallel.hpp"

namespace uniterp {

namespace {

std::string format_index(const Index& i) {
  std::ostringstream os;
  os << '(';
  for (size_t p = 0; p < i.size(); ++p) os << (p ? "," : "") << i[p];
  os << ')';
  return os.str();
}

Index edge_lower(const Lattice& lat, std::int64_t flat, int p) {
  Index i(lat.num_params());
  for (int q = 0; q < lat.num_params(); ++q) {
    const int extent = (q == p) ? lat.bins()[q] : lat.bins()[q] + 1;
    i[q] = static_cast<int>(flat % extent);
    flat /= extent;
  }
  return i;
}

std::int64_t edge_from_seed(const Lattice& lat, const Index& seed, int p, int sign) {
  Index lower = seed;
  if (sign < 0) lower[p] -= 1;
  return lat.edge_index(lower, p);
}

void check_cell(const Lattice& lat, const CellDecomposition& cell) {
  const int n = lat.num_params();
  if (static_cast<int>(cell.seed.size()) != n || cell.alpha.size() != n ||
      static_cast<int>(cell.signs.size()) != n)
    throw DimensionError("cell decomposition has wrong length");
  if (!Lattice::odd_summed(cell.seed)) throw ConfigError("cell seed must be odd-summed");
  for (int p = 0; p < n; ++p) {
    const int s = cell.signs[p];
    if (s != 1 && s != -1) throw ConfigError("cell signs must be +1 or -1");
    const int j = cell.seed[p] + s;
    if (cell.seed[p] < 0 || cell.seed[p] > lat.bins()[p] || j < 0 || j > lat.bins()[p])
      throw OutOfBoundsError("cell " + format_index(cell.seed) + " leaves the lattice");
  }
}

std::vector<int> scale_order(int n, bool symmetric) {
  std::vector<int> dirs;
  if (!symmetric) {
    for (int p = 0; p < n; ++p) dirs.push_back(p);
  } else {
    for (int p = n - 1; p >= 0; --p) dirs.push_back(p);
    for (int p = 0; p < n; ++p) dirs.push_back(p);
  }
  return dirs;
}

// Cached factors of one cell, in application order:
// U = left * D[m] * C[m-1] * ... * C[0] * D[0] * right.
struct ChainView {
  const ComplexMatrix* right = nullptr;
  const ComplexMatrix* left = nullptr;
  const std::vector<ComplexMatrix>* couplings = nullptr;
  std::vector<const RealVector*> phases;
  std::vector<double> powers;
  std::vector<int> dirs;
};

ChainView view_cell(const UICache& cache, const CellDecomposition& cell) {
  const Lattice& lat = cache.lattice;
  const int n = lat.num_params();
  check_cell(lat, cell);
  std::vector<std::int64_t> edges(n);
  for (int p = 0; p < n; ++p) edges[p] = edge_from_seed(lat, cell.seed, p, cell.signs[p]);

  ChainView v;
  v.right = &cache.right[edges[cache.symmetric ? n - 1 : 0]];
  v.left = &cache.left[edges[n - 1]];
  if (n > 1 || cache.symmetric) {
    v.couplings = &cache.couplings[cache.coupling_slot(cell.seed, cell.signs)];
    if (v.couplings->empty()) throw Error("missing coupling entry at " + format_index(cell.seed));
  }
  v.dirs = scale_order(n, cache.symmetric);
  for (int p : v.dirs) {
    v.phases.push_back(&cache.phases[p][edges[p]]);
    v.powers.push_back(std::abs(cell.alpha(p)));
  }
  return v;
}

ComplexVector phase_factors(const RealVector& e, double a) {
  ComplexVector f(e.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) f(k) = std::polar(1.0, -e(k) * a);
  return f;
}

}  // namespace

std::int64_t UICache::coupling_slot(const Index& seed, const std::vector<int>& signs) const {
  std::int64_t mask = 0;
  for (size_t p = 0; p < signs.size(); ++p)
    if (signs[p] < 0) mask |= std::int64_t{1} << p;
  return (lattice.vertex_index(seed) << num_params()) | mask;
}

CacheCounts UICache::counts() const {
  CacheCounts out;
  for (const auto& dir : phases) out.num_e += static_cast<std::int64_t>(dir.size());
  out.num_l = static_cast<std::int64_t>(left.size());
  out.num_r = static_cast<std::int64_t>(right.size());
  for (const auto& entry : couplings) {
    if (entry.empty()) continue;
    out.num_c += 1;
    out.num_c_matrices += static_cast<std::int64_t>(entry.size());
  }
  return out;
}

UICache build_cache(const ParametricHamiltonian& ham, const Binning& bins,
                    const BuildOptions& options) {
  const int n = ham.num_params();
  validate_binning(bins, n);
  Lattice lat(ham.bounds(), bins);
  UICache cache(std::make_shared<const ParametricHamiltonian>(ham), lat, options.symmetric);
  const bool sym = options.symmetric;
  const int d = ham.dim();
  const int threads = options.threads;

  const CacheCounts expected = cache_counts(bins, sym);
  const double matrix_bytes = 16.0 * d * d;
  const double need = matrix_bytes * (lat.num_vertices() + expected.num_e + expected.total_matrices()) +
                      8.0 * d * expected.num_e;
  if (need > static_cast<double>(options.memory_budget)) {
    throw MemoryBudgetError("cache build needs about " + std::to_string(need / (1 << 20)) +
                            " MiB, budget is " +
                            std::to_string(options.memory_budget / (1 << 20)) + " MiB");
  }

  // Vertex unitaries (half steps for the symmetric variant).
  std::vector<ComplexMatrix> vertex_u(lat.num_vertices());
  parallel_for(lat.num_vertices(), threads, [&](std::int64_t k) {
    const ComplexMatrix h = assemble(ham, lat.amplitude(lat.vertex(k)));
    vertex_u[k] = expm_hermitian(h, sym ? 0.5 : 1.0);
  });

  // One unitary eigendecomposition per edge.
  cache.phases.assign(n, {});
  std::vector<std::vector<ComplexMatrix>> vectors(n);
  for (int p = 0; p < n; ++p) {
    const std::int64_t ne = lat.num_edges(p);
    cache.phases[p].resize(ne);
    vectors[p].resize(ne);
    parallel_for(ne, threads, [&](std::int64_t e) {
      if (ham.term_is_zero(p)) {
        // Identical vertex unitaries along p: the displacement is exactly I.
        cache.phases[p][e] = RealVector::Zero(d);
        vectors[p][e] = ComplexMatrix::Identity(d, d);
        return;
      }
      Index lower = edge_lower(lat, e, p);
      Index upper = lower;
      upper[p] += 1;
      const bool lower_odd = Lattice::odd_summed(lower);
      const ComplexMatrix& uo = vertex_u[lat.vertex_index(lower_odd ? lower : upper)];
      const ComplexMatrix& ue = vertex_u[lat.vertex_index(lower_odd ? upper : lower)];
      EigenSystem eig = linalg::unitary_log_eig(ue * uo.adjoint());
      const double max_phase = eig.values.cwiseAbs().maxCoeff();
      if (max_phase > kPhaseWrapLimit) {
        throw PhaseWrapError("phase wrap on the edge along direction " + std::to_string(p) +
                                 " at vertex " + format_index(lower) + ": max |E| = " +
                                 std::to_string(max_phase) + "; use more bins along " +
                                 std::to_string(p),
                             p);
      }
      cache.phases[p][e] = std::move(eig.values);
      vectors[p][e] = std::move(eig.vectors);
    });
  }

  auto odd_end = [&](std::int64_t e, int p) -> const ComplexMatrix& {
    Index lower = edge_lower(lat, e, p);
    if (!Lattice::odd_summed(lower)) lower[p] += 1;
    return vertex_u[lat.vertex_index(lower)];
  };

  const int last = n - 1;
  const int first = sym ? last : 0;
  cache.left.resize(lat.num_edges(last));
  cache.right.resize(lat.num_edges(first));
  parallel_for(lat.num_edges(last), threads,
               [&](std::int64_t e) { cache.left[e] = vectors[last][e]; });
  parallel_for(lat.num_edges(first), threads, [&](std::int64_t e) {
    cache.right[e].noalias() = vectors[first][e].adjoint() * odd_end(e, first);
  });

  if (n > 1 || sym) {
    cache.couplings.assign(static_cast<size_t>(lat.num_vertices()) << n, {});
    parallel_for(lat.num_vertices(), threads, [&](std::int64_t k) {
      const Index seed = lat.vertex(k);
      if (!Lattice::odd_summed(seed)) return;
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> signs(n);
        std::vector<std::int64_t> edges(n);
        bool inside = true;
        for (int p = 0; p < n && inside; ++p) {
          signs[p] = (mask >> p) & 1 ? -1 : 1;
          const int j = seed[p] + signs[p];
          inside = j >= 0 && j <= lat.bins()[p];
          if (inside) edges[p] = edge_from_seed(lat, seed, p, signs[p]);
        }
        if (!inside) continue;
        auto V = [&](int p) -> const ComplexMatrix& { return vectors[p][edges[p]]; };
        std::vector<ComplexMatrix> chain;
        if (!sym) {
          for (int p = 0; p + 1 < n; ++p) chain.push_back(V(p + 1).adjoint() * V(p));
        } else {
          // Right wing, the junction R_0 L_0, then the left wing whose
          // couplings R_q R_{q-1}^dagger reduce to L_q^dagger L_{q-1}.
          for (int q = n - 2; q >= 0; --q) chain.push_back(V(q).adjoint() * V(q + 1));
          chain.push_back(V(0).adjoint() * vertex_u[k] * V(0));
          for (int q = 1; q < n; ++q) chain.push_back(V(q).adjoint() * V(q - 1));
        }
        cache.couplings[(static_cast<size_t>(k) << n) | mask] = std::move(chain);
      }
    });
  }
  return cache;
}

ComplexMatrix evaluate_cell(const UICache& cache, const CellDecomposition& cell) {
  const ChainView v = view_cell(cache, cell);
  ComplexMatrix u = *v.right;
  linalg::scale_rows_in_place(*v.phases[0], v.powers[0], u);
  ComplexMatrix tmp(u.rows(), u.cols());
  for (size_t k = 1; k < v.phases.size(); ++k) {
    tmp.noalias() = (*v.couplings)[k - 1] * u;
    u.swap(tmp);
    linalg::scale_rows_in_place(*v.phases[k], v.powers[k], u);
  }
  tmp.noalias() = *v.left * u;
  return tmp;
}

ComplexMatrix evaluate(const UICache& cache, const RealVector& c) {
  return evaluate_cell(cache, cache.lattice.locate(c));
}

ComplexMatrix evaluate_sym(const UICache& cache, const RealVector& c) {
  if (!cache.symmetric) throw ConfigError("evaluate_sym needs a cache built with symmetric = true");
  return evaluate(cache, c);
}

ComplexVector apply_state(const UICache& cache, const RealVector& c, const ComplexVector& psi) {
  if (psi.size() != cache.dim()) throw DimensionError("apply_state: state has wrong dimension");
  const ChainView v = view_cell(cache, cache.lattice.locate(c));
  ComplexVector x = *v.right * psi;
  linalg::scale_in_place(*v.phases[0], v.powers[0], x);
  ComplexVector tmp(x.size());
  for (size_t k = 1; k < v.phases.size(); ++k) {
    tmp.noalias() = (*v.couplings)[k - 1] * x;
    x.swap(tmp);
    linalg::scale_in_place(*v.phases[k], v.powers[k], x);
  }
  tmp.noalias() = *v.left * x;
  return tmp;
}

GradientResult evaluate_with_gradients(const UICache& cache, const RealVector& c) {
  if (cache.symmetric) throw ConfigError("gradients are implemented for plain caches only");
  const Lattice& lat = cache.lattice;
  const int n = lat.num_params();
  const CellDecomposition cell = lat.locate(c);
  const ChainView v = view_cell(cache, cell);

  // U = M_n D_{n-1} M_{n-1} ... M_1 D_0 M_0 with M_0 = R, M_n = L.
  auto middle = [&](int k) -> const ComplexMatrix& {
    if (k == 0) return *v.right;
    if (k == n) return *v.left;
    return (*v.couplings)[k - 1];
  };
  std::vector<ComplexVector> diag(n);
  for (int k = 0; k < n; ++k) diag[k] = phase_factors(*v.phases[k], v.powers[k]);

  // Right partials P_k = D_k M_k P_{k-1}, left partials Q_k = Q_{k+1} D_{k+1} M_{k+1}.
  std::vector<ComplexMatrix> right(n), left(n);
  right[0] = diag[0].asDiagonal() * middle(0);
  for (int k = 1; k < n; ++k) right[k] = diag[k].asDiagonal() * (middle(k) * right[k - 1]);
  left[n - 1] = middle(n);
  for (int k = n - 2; k >= 0; --k) left[k] = (left[k + 1] * diag[k + 1].asDiagonal()) * middle(k + 1);

  GradientResult out;
  out.u = left[n - 1] * right[n - 1];
  out.du.resize(n);
  out.one_sided.assign(n, false);
  for (int k = 0; k < n; ++k) {
    const double rate = cell.signs[k] * lat.bins()[k] / lat.bounds()[k].width();
    ComplexVector f(cache.dim());
    for (int j = 0; j < cache.dim(); ++j) f(j) = Complex(0.0, -(*v.phases[k])(j) * rate);
    out.du[k] = left[k] * (f.asDiagonal() * right[k]);

    const double a = std::abs(cell.alpha(k));
    bool edge = a < 1e-12 || a > 1.0 - 1e-12;
    for (int q = 0; q < n && !edge; ++q)
      if (q != k && a + std::abs(cell.alpha(q)) > 1.0 - 1e-12) edge = true;
    out.one_sided[k] = edge;
  }
  return out;
}

ComplexMatrix reference_evaluate_cell(const ParametricHamiltonian& ham, const Binning& bins,
                                      const CellDecomposition& cell) {
  const Lattice lat(ham.bounds(), bins);
  check_cell(lat, cell);
  const ComplexMatrix ui = exact_unitary(ham, lat.amplitude(cell.seed));
  ComplexMatrix out = ui;
  for (int p = 0; p < lat.num_params(); ++p) {
    Index j = cell.seed;
    j[p] += cell.signs[p];
    const ComplexMatrix w = exact_unitary(ham, lat.amplitude(j)) * ui.adjoint();
    out = linalg::phase_power(linalg::unitary_log_eig(w), std::abs(cell.alpha(p))) * out;
  }
  return out;
}

ComplexMatrix reference_evaluate(const ParametricHamiltonian& ham, const Binning& bins,
                                 const RealVector& c) {
  return reference_evaluate_cell(ham, bins, Lattice(ham.bounds(), bins).locate(c));
}

ComplexMatrix reference_evaluate_sym(const ParametricHamiltonian& ham, const Binning& bins,
                                     const RealVector& c) {
  const Lattice lat(ham.bounds(), bins);
  const CellDecomposition cell = lat.locate(c);
  const int n = lat.num_params();
  auto half = [&](const Index& i) { return expm_hermitian(assemble(ham, lat.amplitude(i)), 0.5); };
  auto power = [](const ComplexMatrix& w, double a) {
    return linalg::phase_power(linalg::unitary_log_eig(w), a);
  };
  const ComplexMatrix hi = half(cell.seed);
  std::vector<ComplexMatrix> hj(n);
  for (int p = 0; p < n; ++p) {
    Index j = cell.seed;
    j[p] += cell.signs[p];
    hj[p] = half(j);
  }
  // hi X_n ... X_1 Y_1 ... Y_n hi with X_p = (hi^dagger hj_p)^|a_p| and
  // Y_p = (hj_p hi^dagger)^|a_p|.
  ComplexMatrix left = hi;
  ComplexMatrix right = hi;
  for (int p = n - 1; p >= 0; --p) {
    const double a = std::abs(cell.alpha(p));
    left = left * power(hi.adjoint() * hj[p], a);
    right = power(hj[p] * hi.adjoint(), a) * right;
  }
  return left * right;
}

}  // namespace uniterp
