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


#include "uniterp/io.hpp"

#include <charconv>
#include <cstdio>
#include <memory>
#include <system_error>

namespace uniterp {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

int checked_int(const Json& j, const char* key) {
  require(j.contains(key) && j[key].is_number_integer(), std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

Json bounds_to_json(const std::vector<Bounds>& bounds) {
  Json out = Json::array();
  for (const auto& b : bounds) out.push_back({b.lo, b.hi});
  return out;
}

std::vector<Bounds> bounds_from_json(const Json& j, int n) {
  require(j.is_array() && static_cast<int>(j.size()) == n, "bounds must list one [lo, hi] pair per parameter");
  std::vector<Bounds> out;
  for (const auto& b : j) {
    require(b.is_array() && b.size() == 2, "bounds entries must be [lo, hi]");
    out.push_back({b[0].get<double>(), b[1].get<double>()});
  }
  return out;
}

Json phases_to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

RealVector phases_from_json(const Json& j, int d) {
  require(j.is_array() && static_cast<int>(j.size()) == d, "phase vector has the wrong length");
  RealVector out(d);
  for (int k = 0; k < d; ++k) out(k) = j[k].get<double>();
  return out;
}

void check_format(const Json& j, const char* format, int version) {
  require(j.is_object() && j.value("format", "") == format,
          std::string("expected a document with format '") + format + "'");
  require(j.value("version", -1) == version,
          std::string("unsupported ") + format + " version " + j.value("version", Json(-1)).dump());
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, int d) {
  require(j.is_array() && j.size() == static_cast<std::size_t>(d) * d,
          "matrix must hold d*d [re, im] pairs");
  ComplexMatrix out(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const Json& z = j[static_cast<std::size_t>(r) * d + c];
      require(z.is_array() && z.size() == 2, "matrix entries must be [re, im]");
      out(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return out;
}

Json hamiltonian_to_json(const ParametricHamiltonian& ham) {
  Json out;
  out["format"] = "uniterp.hamiltonian";
  out["version"] = kHamiltonianFormatVersion;
  out["d"] = ham.dim();
  out["n"] = ham.num_params();
  out["bounds"] = bounds_to_json(ham.bounds());
  Json mats = Json::array();
  mats.push_back(matrix_to_json(ham.drift()));
  for (const auto& t : ham.terms()) mats.push_back(matrix_to_json(t));
  out["matrices"] = std::move(mats);
  return out;
}

ParametricHamiltonian hamiltonian_from_json(const Json& j) {
  check_format(j, "uniterp.hamiltonian", kHamiltonianFormatVersion);
  const int d = checked_int(j, "d");
  const int n = checked_int(j, "n");
  require(d >= 1 && n >= 1, "d and n must be positive");
  require(j.contains("matrices") && j["matrices"].is_array() &&
              static_cast<int>(j["matrices"].size()) == n + 1,
          "matrices must hold the drift followed by n parameter terms");
  std::vector<ComplexMatrix> terms;
  for (int p = 1; p <= n; ++p) terms.push_back(matrix_from_json(j["matrices"][p], d));
  return ParametricHamiltonian(matrix_from_json(j["matrices"][0], d), std::move(terms),
                               bounds_from_json(j.at("bounds"), n));
}

Json cache_to_json(const UICache& cache) {
  Json out;
  out["format"] = "uniterp.cache";
  out["version"] = kCacheFormatVersion;
  out["symmetric"] = cache.symmetric;
  out["bins"] = cache.lattice.bins();
  out["hamiltonian"] = hamiltonian_to_json(*cache.ham);
  Json phases = Json::array();
  for (const auto& dir : cache.phases) {
    Json edges = Json::array();
    for (const auto& e : dir) edges.push_back(phases_to_json(e));
    phases.push_back(std::move(edges));
  }
  out["phases"] = std::move(phases);
  Json left = Json::array(), right = Json::array();
  for (const auto& m : cache.left) left.push_back(matrix_to_json(m));
  for (const auto& m : cache.right) right.push_back(matrix_to_json(m));
  out["left"] = std::move(left);
  out["right"] = std::move(right);
  // Only occupied coupling slots are written.
  Json couplings = Json::array();
  for (std::size_t s = 0; s < cache.couplings.size(); ++s) {
    if (cache.couplings[s].empty()) continue;
    Json chain = Json::array();
    for (const auto& m : cache.couplings[s]) chain.push_back(matrix_to_json(m));
    couplings.push_back({{"slot", s}, {"chain", std::move(chain)}});
  }
  out["couplings"] = std::move(couplings);
  out["slots"] = cache.couplings.size();
  return out;
}

UICache cache_from_json(const Json& j) {
  check_format(j, "uniterp.cache", kCacheFormatVersion);
  auto ham = std::make_shared<const ParametricHamiltonian>(hamiltonian_from_json(j.at("hamiltonian")));
  const int d = ham->dim();
  const int n = ham->num_params();
  const Binning bins = j.at("bins").get<Binning>();
  validate_binning(bins, n);
  UICache cache(ham, Lattice(ham->bounds(), bins), j.at("symmetric").get<bool>());
  const Lattice& lat = cache.lattice;

  const Json& phases = j.at("phases");
  require(phases.is_array() && static_cast<int>(phases.size()) == n, "phases must list every direction");
  cache.phases.resize(n);
  for (int p = 0; p < n; ++p) {
    require(static_cast<std::int64_t>(phases[p].size()) == lat.num_edges(p), "phase count does not match the binning");
    for (const auto& e : phases[p]) cache.phases[p].push_back(phases_from_json(e, d));
  }
  const int last = n - 1;
  const int first = cache.symmetric ? last : 0;
  require(static_cast<std::int64_t>(j.at("left").size()) == lat.num_edges(last), "left count does not match the binning");
  require(static_cast<std::int64_t>(j.at("right").size()) == lat.num_edges(first), "right count does not match the binning");
  for (const auto& m : j["left"]) cache.left.push_back(matrix_from_json(m, d));
  for (const auto& m : j["right"]) cache.right.push_back(matrix_from_json(m, d));

  const std::size_t slots = j.at("slots").get<std::size_t>();
  const bool has_couplings = n > 1 || cache.symmetric;
  require(slots == (has_couplings ? static_cast<std::size_t>(lat.num_vertices()) << n : 0),
          "coupling slot count does not match the binning");
  cache.couplings.assign(slots, {});
  const std::size_t chain_len = cache.symmetric ? 2 * n - 1 : n - 1;
  for (const auto& entry : j.at("couplings")) {
    const std::size_t s = entry.at("slot").get<std::size_t>();
    require(s < slots, "coupling slot out of range");
    require(entry.at("chain").size() == chain_len, "coupling chain has the wrong length");
    for (const auto& m : entry["chain"]) cache.couplings[s].push_back(matrix_from_json(m, d));
  }
  require(cache.counts() == cache_counts(bins, cache.symmetric), "cache entry counts do not match the binning");
  return cache;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << j.dump() << '\n';
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const Json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> columns, std::string hash)
    : path_(path), out_(path), width_(columns.size()), hash_(std::move(hash)) {
  if (!out_) throw ConfigError("cannot write " + path);
  out_ << "version,config_hash";
  for (const auto& c : columns) out_ << ',' << c;
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw DimensionError("csv row has the wrong number of cells");
  out_ << kCsvFormatVersion << ',' << hash_;
  for (const auto& c : cells) out_ << ',' << c;
  out_ << '\n';
  out_.flush();
}

Json optimizer_report(const OptimizerResult& result, double measured_probe) {
  Json phases = Json::array();
  for (const auto& s : result.steps) {
    phases.push_back({{"phase", s.phase}, {"binning", s.bins}, {"cache", s.cache}, {"modelInfidelity", s.model}});
  }
  return {{"binning", result.bins},
          {"cacheTotal", result.cache_total},
          {"modelInfidelity", result.model},
          {"measuredProbeInfidelity", measured_probe},
          {"phases", std::move(phases)}};
}

}  // namespace uniterp
