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


#include "uniterp/metrics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/QR>

namespace uniterp {

using boost::multiprecision::cpp_rational;

double avg_gate_infidelity(const ComplexMatrix& ua, const ComplexMatrix& ub) {
  if (ua.rows() != ub.rows() || ua.cols() != ub.cols() || ua.rows() != ua.cols())
    throw DimensionError("avg_gate_infidelity: shape mismatch");
  const double d = static_cast<double>(ua.rows());
  // Tr(A^dagger B) without forming the product.
  const Complex tr = (ua.conjugate().array() * ub.array()).sum();
  return d / (d + 1.0) - std::norm(tr) / (d * (d + 1.0));
}

double state_infidelity(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DimensionError("state_infidelity: length mismatch");
  return 1.0 - std::norm(a.dot(b));
}

AsymmetricStd asymmetric_std(const std::vector<double>& samples) {
  if (samples.empty()) throw ConfigError("asymmetric_std: no samples");
  AsymmetricStd out;
  out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
  double lo = 0.0, hi = 0.0;
  int n_lo = 0, n_hi = 0;
  for (double x : samples) {
    const double dev = (x - out.mean) * (x - out.mean);
    if (x <= out.mean) lo += dev, ++n_lo;
    if (x >= out.mean) hi += dev, ++n_hi;
  }
  out.std_lo = n_lo > 1 ? std::sqrt(lo / (n_lo - 1)) : 0.0;
  out.std_hi = n_hi > 1 ? std::sqrt(hi / (n_hi - 1)) : 0.0;
  return out;
}

std::vector<std::vector<int>> fit_exponents(int n, int m) {
  if (n < 1 || m < 1) throw ConfigError("fit_exponents: need n >= 1 and m >= 1");
  std::vector<std::vector<int>> out;
  for (int degree = 1; degree <= m; ++degree) {
    // Enumerate compositions of `degree` into n parts in lexicographic order.
    std::vector<int> j(n, 0);
    j[0] = degree;
    while (true) {
      out.push_back(j);
      // Next composition: move one unit rightwards in reverse-lex order.
      int k = n - 2;
      while (k >= 0 && j[k] == 0) --k;
      if (k < 0) break;
      j[k] -= 1;
      const int rest = std::accumulate(j.begin() + k + 1, j.end(), 0) + 1;
      std::fill(j.begin() + k + 1, j.end(), 0);
      j[k + 1] = rest;
    }
  }
  return out;
}

namespace {

double monomial(const RealVector& alpha, const std::vector<int>& j) {
  double v = 1.0;
  for (size_t i = 0; i < j.size(); ++i) v *= std::pow(alpha(i), j[i]);
  return v;
}

cpp_rational rational_pow_half(int k) {
  cpp_rational r(1);
  for (int i = 0; i < k; ++i) r /= 2;
  return r;
}

cpp_rational binom(int n, int k) {
  cpp_rational r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Integral of prod alpha_i^{j_i} over the positive-orthant cell, split into the
// cube [0, 1/2]^n and the n pieces where alpha_i > 1/2 (then every other
// coordinate is bounded by 1 - alpha_i).
cpp_rational cell_integral(const std::vector<int>& j) {
  const int n = static_cast<int>(j.size());
  cpp_rational total(1);
  for (int h = 0; h < n; ++h) total *= rational_pow_half(j[h] + 1) / (j[h] + 1);
  for (int i = 0; i < n; ++i) {
    cpp_rational outer(1);
    int k_exp = 0;
    for (int h = 0; h < n; ++h) {
      if (h == i) continue;
      outer /= (j[h] + 1);
      k_exp += j[h] + 1;
    }
    // int_{1/2}^{1} a^{j_i} (1-a)^K da = int_0^{1/2} b^K (1-b)^{j_i} db.
    cpp_rational piece(0);
    for (int k = 0; k <= j[i]; ++k) {
      cpp_rational term = binom(j[i], k) * rational_pow_half(k_exp + k + 1) / (k_exp + k + 1);
      piece += (k % 2 == 0) ? term : cpp_rational(-term);
    }
    total += outer * piece;
  }
  return total;
}

}  // namespace

double PolyFit::predict(const RealVector& alpha) const {
  double v = 0.0;
  for (size_t k = 0; k < exponents.size(); ++k) v += coefficients(k) * monomial(alpha, exponents[k]);
  return v;
}

PolyFit fit_infidelity(const std::vector<FitSample>& samples, int m, bool corner_zero, Volume volume) {
  if (samples.empty()) throw ConfigError("fit_infidelity: no samples");
  PolyFit fit;
  fit.n = static_cast<int>(samples.front().alpha.size());
  fit.m = m;
  fit.volume = volume;
  fit.exponents = fit_exponents(fit.n, m);
  const int basis = static_cast<int>(fit.exponents.size());
  const int rows = static_cast<int>(samples.size()) + (corner_zero ? fit.n : 0);
  if (rows < 2 * basis) {
    throw ConfigError("fit_infidelity: " + std::to_string(rows) + " rows for " +
                      std::to_string(basis) + " basis functions; need at least twice as many");
  }
  RealMatrix a(rows, basis);
  RealVector b(rows);
  int r = 0;
  for (const auto& s : samples) {
    if (s.alpha.size() != fit.n) throw DimensionError("fit_infidelity: mixed sample dimensions");
    for (int k = 0; k < basis; ++k) a(r, k) = monomial(s.alpha, fit.exponents[k]);
    b(r++) = s.value;
  }
  if (corner_zero) {
    for (int p = 0; p < fit.n; ++p) {
      const RealVector corner = RealVector::Unit(fit.n, p);
      for (int k = 0; k < basis; ++k) a(r, k) = monomial(corner, fit.exponents[k]);
      b(r++) = 0.0;
    }
  }
  // Column scaling keeps the high powers from hiding rank information.
  RealVector scale = a.colwise().norm().transpose();
  for (int k = 0; k < basis; ++k) {
    if (scale(k) == 0.0) throw RankDeficientError("fit_infidelity: basis function vanishes on all samples");
    a.col(k) /= scale(k);
  }
  Eigen::ColPivHouseholderQR<RealMatrix> qr(a);
  qr.setThreshold(1e-12);
  if (qr.rank() < basis) {
    throw RankDeficientError("fit_infidelity: design matrix has rank " + std::to_string(qr.rank()) +
                             " < " + std::to_string(basis));
  }
  fit.coefficients = qr.solve(b).cwiseQuotient(scale);
  return fit;
}

double volume_size(int n, Volume volume) {
  return volume == Volume::kHypercube ? 1.0 : std::ldexp(1.0, 1 - n);
}

double basis_average(const std::vector<int>& j, Volume volume) {
  for (int v : j)
    if (v < 0) throw ConfigError("basis_average: negative exponent");
  if (volume == Volume::kHypercube) {
    double v = 1.0;
    for (int e : j) v /= (e + 1);
    return v;
  }
  const int n = static_cast<int>(j.size());
  cpp_rational avg = cell_integral(j);
  for (int i = 0; i < n - 1; ++i) avg *= 2;  // divide by the volume 2^(1-n)
  return static_cast<double>(avg);
}

double cell_average_infidelity(const PolyFit& fit) {
  double v = 0.0;
  for (size_t k = 0; k < fit.exponents.size(); ++k)
    v += fit.coefficients(k) * basis_average(fit.exponents[k], fit.volume);
  return v;
}

RealVector sample_volume(int n, Volume volume, Rng& rng) {
  RealVector a(n);
  while (true) {
    for (int p = 0; p < n; ++p) a(p) = uniform01(rng);
    if (volume == Volume::kHypercube) return a;
    bool inside = true;
    for (int p = 0; p < n && inside; ++p)
      for (int q = p + 1; q < n && inside; ++q) inside = a(p) + a(q) <= 1.0;
    if (inside) return a;
  }
}

AsymmetricStd cell_std_infidelity(const PolyFit& fit, Rng& rng, int sample_count) {
  std::vector<double> values;
  values.reserve(sample_count);
  for (int k = 0; k < sample_count; ++k) values.push_back(fit.predict(sample_volume(fit.n, fit.volume, rng)));
  return asymmetric_std(values);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("loglog_slope: need matching series of length >= 2");
  const int k = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < k; ++i) mx += std::log(x[i]), my += std::log(y[i]);
  mx /= k;
  my /= k;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < k; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace uniterp
