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


#include "uniterp/hamiltonian.hpp"

#include <string>
#include <utility>

#include "uniterp/linalg.hpp"

namespace uniterp {

namespace {

void require_hermitian(const ComplexMatrix& h, const char* what) {
  const double err = linalg::hermiticity_error(h);
  if (err > 1e-12 * std::max(1.0, linalg::max_abs(h))) {
    throw NotHermitianError(std::string(what) + " is not hermitian (error " + std::to_string(err) +
                            ")");
  }
}

}  // namespace

ParametricHamiltonian::ParametricHamiltonian(ComplexMatrix drift, std::vector<ComplexMatrix> terms,
                                             std::vector<Bounds> bounds)
    : drift_(std::move(drift)), terms_(std::move(terms)), bounds_(std::move(bounds)) {
  if (terms_.empty()) throw ConfigError("ParametricHamiltonian needs at least one term");
  if (terms_.size() != bounds_.size()) throw DimensionError("one bound per term required");
  if (drift_.rows() != drift_.cols() || drift_.rows() == 0)
    throw DimensionError("drift must be square and non-empty");
  require_hermitian(drift_, "drift");
  for (const auto& t : terms_) {
    if (t.rows() != drift_.rows() || t.cols() != drift_.cols())
      throw DimensionError("all terms must share the drift dimension");
    require_hermitian(t, "term");
    zero_term_.push_back((t.array() == Complex(0.0, 0.0)).all());
  }
  for (const auto& b : bounds_) {
    if (!(b.lo < b.hi)) throw ConfigError("bounds need lo < hi");
  }
}

ComplexMatrix assemble(const ParametricHamiltonian& ham, const RealVector& c, bool strict) {
  if (c.size() != ham.num_params())
    throw DimensionError("assemble: expected " + std::to_string(ham.num_params()) + " amplitudes");
  ComplexMatrix h = ham.drift();
  for (int p = 0; p < ham.num_params(); ++p) {
    const Bounds& b = ham.bounds()[p];
    if (strict && (c(p) < b.lo - 1e-12 || c(p) > b.hi + 1e-12)) {
      throw OutOfBoundsError("assemble: c[" + std::to_string(p) + "] = " + std::to_string(c(p)) +
                             " outside bounds");
    }
    if (c(p) != 0.0) h += c(p) * ham.term(p);
  }
  return h;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  const EigenSystem eig = linalg::hermitian_eig(h);
  return linalg::phase_power(eig, t);
}

ComplexMatrix exact_unitary(const ParametricHamiltonian& ham, const RealVector& c, bool strict) {
  return expm_hermitian(assemble(ham, c, strict));
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw ConfigError("haar_unitary: d must be positive");
  return linalg::qr_unitary(ginibre(d, rng));
}

ComplexMatrix random_hermitian(int d, double sigma, Rng& rng) {
  const ComplexMatrix u = haar_unitary(d, rng);
  RealVector e(d);
  for (int k = 0; k < d; ++k) e(k) = sigma * standard_normal(rng);
  ComplexMatrix h = u * e.asDiagonal() * u.adjoint();
  return (h + h.adjoint()) / 2.0;
}

ParametricHamiltonian random_hamiltonian(const EnsembleSpec& spec, int n, std::vector<Bounds> bounds,
                                         bool orthogonalize) {
  if (spec.dim < 2) throw ConfigError("ensemble dimension must be at least 2");
  if (!(spec.sigma > 0)) throw ConfigError("ensemble sigma must be positive");
  if (n < 1) throw ConfigError("need at least one parameter");
  Rng rng = make_rng(spec.seed);
  std::vector<ComplexMatrix> mats;
  for (int k = 0; k <= n; ++k) mats.push_back(random_hermitian(spec.dim, spec.sigma, rng));
  if (orthogonalize) {
    // Tr(A B) is real for hermitian A, B, so real coefficients keep hermiticity.
    for (size_t k = 0; k < mats.size(); ++k) {
      const double norm = mats[k].norm();
      for (size_t j = 0; j < k; ++j) {
        const double proj = (mats[j] * mats[k]).trace().real() / mats[j].squaredNorm();
        mats[k] -= proj * mats[j];
      }
      mats[k] *= norm / mats[k].norm();
      mats[k] = ((mats[k] + mats[k].adjoint()) / 2.0).eval();
    }
  }
  ComplexMatrix drift = std::move(mats.front());
  mats.erase(mats.begin());
  return ParametricHamiltonian(std::move(drift), std::move(mats), std::move(bounds));
}

}  // namespace uniterp
