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

#include <boost/random/mersenne_twister.hpp>

#include "uniterp/common.hpp"

namespace uniterp {

// Boost's engines and distributions are header implementations, so draws are
// identical across platforms and standard libraries.
using Rng = boost::random::mt19937_64;

/// Generator for draw `stream` of an experiment seeded with `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

double standard_normal(Rng& rng);
double uniform01(Rng& rng);

/// Entries N(0,1) + i N(0,1).
ComplexMatrix ginibre(int d, Rng& rng);
/// Uniformly random unit vector in C^d.
ComplexVector haar_state(int d, Rng& rng);

}  // namespace uniterp
