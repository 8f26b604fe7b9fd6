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

#include "uniterp/random.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/seed_seq.hpp>
#include <boost/random/uniform_01.hpp>

namespace uniterp {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  boost::random::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(stream),
                              static_cast<std::uint32_t>(stream >> 32), 0x756e6974u};
  return Rng(seq);
}

double standard_normal(Rng& rng) {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

double uniform01(Rng& rng) {
  boost::random::uniform_01<double> dist;
  return dist(rng);
}

ComplexMatrix ginibre(int d, Rng& rng) {
  ComplexMatrix x(d, d);
  // Fill column-major in a fixed order so the stream is reproducible.
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      x(i, j) = Complex(re, im);
    }
  return x;
}

ComplexVector haar_state(int d, Rng& rng) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

}  // namespace uniterp
