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


#include "uniterp/baselines.hpp"

#include <cmath>
#include <string>

namespace uniterp {

namespace {

void check_steps(int steps, bool power_of_two) {
  if (steps < 1) throw ConfigError("step count must be positive");
  if (power_of_two && (steps & (steps - 1)) != 0)
    throw ConfigError("unitary product formulas need a power-of-two step count, got " +
                      std::to_string(steps));
}

void check_amplitudes(const TrotterCache& cache, const RealVector& c) {
  if (c.size() != cache.num_params()) throw DimensionError("amplitude vector has wrong length");
}

// Per-term phase multiplier of one step: E_p * weight.
double term_weight(const RealVector& c, int p, int steps) {
  return (p == 0 ? 1.0 : c(p - 1)) / steps;
}

// One plain step in the V_n frame applied to x (matrix or vector):
// x <- D_n C_{n-1} ... C_0 D_0 (V_0^dagger V_n) x.
template <class T>
void plain_step(const TrotterCache& cache, const RealVector& c, int steps, T& x, T& tmp) {
  const int n = cache.num_params();
  tmp.noalias() = cache.fold * x;
  x.swap(tmp);
  for (int p = 0; p <= n; ++p) {
    if (p > 0) {
      tmp.noalias() = cache.couplings[p - 1] * x;
      x.swap(tmp);
    }
    const double w = term_weight(c, p, steps);
    for (Eigen::Index k = 0; k < x.rows(); ++k)
      x.row(k) *= std::polar(1.0, -cache.eig[p].values(k) * w);
  }
}

// One symmetric step in the V_n frame:
// x <- D_n^(1/2) C_{n-1} ... D_1^(1/2) C_0 D_0 C_0^dagger D_1^(1/2) ... C_{n-1}^dagger D_n^(1/2) x.
template <class T>
void strang_step(const TrotterCache& cache, const RealVector& c, int steps, T& x, T& tmp) {
  const int n = cache.num_params();
  auto scale = [&](int p, double factor) {
    const double w = term_weight(c, p, steps) * factor;
    for (Eigen::Index k = 0; k < x.rows(); ++k)
      x.row(k) *= std::polar(1.0, -cache.eig[p].values(k) * w);
  };
  scale(n, 0.5);
  for (int p = n - 1; p >= 0; --p) {
    tmp.noalias() = cache.couplings[p].adjoint() * x;
    x.swap(tmp);
    scale(p, p == 0 ? 1.0 : 0.5);
  }
  for (int p = 0; p < n; ++p) {
    tmp.noalias() = cache.couplings[p] * x;
    x.swap(tmp);
    scale(p + 1, 0.5);
  }
}

template <bool kSymmetric>
ComplexMatrix squared_unitary(const TrotterCache& cache, const RealVector& c, int steps) {
  check_steps(steps, true);
  check_amplitudes(cache, c);
  const int d = cache.dim();
  ComplexMatrix x = ComplexMatrix::Identity(d, d);
  ComplexMatrix tmp(d, d);
  if constexpr (kSymmetric)
    strang_step(cache, c, steps, x, tmp);
  else
    plain_step(cache, c, steps, x, tmp);
  for (int s = steps; s > 1; s >>= 1) {
    tmp.noalias() = x * x;
    x.swap(tmp);
  }
  const ComplexMatrix& vn = cache.eig.back().vectors;
  return vn * x * vn.adjoint();
}

template <bool kSymmetric>
ComplexVector sequential_state(const TrotterCache& cache, const RealVector& c, int steps,
                               const ComplexVector& psi) {
  check_steps(steps, false);
  check_amplitudes(cache, c);
  if (psi.size() != cache.dim()) throw DimensionError("state has wrong dimension");
  const ComplexMatrix& vn = cache.eig.back().vectors;
  ComplexVector x = vn.adjoint() * psi;
  ComplexVector tmp(x.size());
  for (int s = 0; s < steps; ++s) {
    if constexpr (kSymmetric)
      strang_step(cache, c, steps, x, tmp);
    else
      plain_step(cache, c, steps, x, tmp);
  }
  return vn * x;
}

}  // namespace

TrotterCache build_trotter_cache(const ParametricHamiltonian& ham) {
  TrotterCache cache;
  cache.ham = std::make_shared<const ParametricHamiltonian>(ham);
  cache.eig.push_back(linalg::hermitian_eig(ham.drift()));
  for (const auto& t : ham.terms()) cache.eig.push_back(linalg::hermitian_eig(t));
  for (size_t p = 0; p + 1 < cache.eig.size(); ++p)
    cache.couplings.push_back(cache.eig[p + 1].vectors.adjoint() * cache.eig[p].vectors);
  cache.fold = cache.eig.front().vectors.adjoint() * cache.eig.back().vectors;
  return cache;
}

ComplexMatrix trotter_unitary(const TrotterCache& cache, const RealVector& c, int steps) {
  return squared_unitary<false>(cache, c, steps);
}

ComplexMatrix strang_unitary(const TrotterCache& cache, const RealVector& c, int steps) {
  return squared_unitary<true>(cache, c, steps);
}

ComplexVector trotter_apply_state(const TrotterCache& cache, const RealVector& c, int steps,
                                  const ComplexVector& psi) {
  return sequential_state<false>(cache, c, steps, psi);
}

ComplexVector strang_apply_state(const TrotterCache& cache, const RealVector& c, int steps,
                                 const ComplexVector& psi) {
  return sequential_state<true>(cache, c, steps, psi);
}

ComplexVector expm_action(const ComplexMatrix& h, const ComplexVector& psi, double tol) {
  if (h.rows() != h.cols() || h.cols() != psi.size()) throw DimensionError("expm_action: shape mismatch");
  if (!(tol >= 1e-14 && tol <= 1e-6)) throw ConfigError("expm_action: tol must lie in [1e-14, 1e-6]");
  const double norm1 = h.cwiseAbs().colwise().sum().maxCoeff();
  const int s = std::max(1, static_cast<int>(std::ceil(norm1)));
  const Complex factor(0.0, -1.0 / s);
  const double psi_norm = psi.norm();
  const double threshold = tol / s * psi_norm;
  constexpr int kMaxTerms = 60;

  ComplexVector y = psi;
  ComplexVector term(psi.size());
  for (int step = 0; step < s; ++step) {
    ComplexVector acc = y;
    term = y;
    double previous = term.norm();
    bool converged = false;
    for (int k = 1; k <= kMaxTerms; ++k) {
      term = (factor / static_cast<double>(k)) * (h * term);
      acc += term;
      const double current = term.norm();
      if (current + previous <= threshold) {
        converged = true;
        break;
      }
      previous = current;
    }
    if (!converged) throw ConvergenceError("expm_action: Taylor series hit the term cap");
    y.swap(acc);
  }
  return y;
}

}  // namespace uniterp
