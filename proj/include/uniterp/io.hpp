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
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uniterp/binopt.hpp"
#include "uniterp/hamiltonian.hpp"
#include "uniterp/ui.hpp"

namespace uniterp {

using Json = nlohmann::json;

inline constexpr int kHamiltonianFormatVersion = 1;
inline constexpr int kCacheFormatVersion = 1;
inline constexpr int kCsvFormatVersion = 1;

/// Matrices are written as flat row-major arrays of [re, im] pairs. Doubles
/// use the shortest round-trip decimal form, so load(save(x)) is bit-exact.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, int d);

Json hamiltonian_to_json(const ParametricHamiltonian& ham);
ParametricHamiltonian hamiltonian_from_json(const Json& j);

Json cache_to_json(const UICache& cache);
UICache cache_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// FNV-1a 64 over the canonical dump (sorted keys, no whitespace).
std::uint64_t fnv1a64(const std::string& bytes);
std::string config_hash(const Json& config);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

/// CSV sink whose rows always begin with the format version and config hash.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> columns, std::string hash);

  void row(const std::vector<std::string>& cells);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t width_;
  std::string hash_;
};

Json optimizer_report(const OptimizerResult& result, double measured_probe);

}  // namespace uniterp
