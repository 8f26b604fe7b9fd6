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
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace uniterp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;  // wall-time limit in seconds, part of the pass condition
};

struct AcceptanceOptions {
  std::uint64_t seed = 20260415;
  int threads = 1;
  std::set<int> only;  // empty runs every criterion
};

inline constexpr int kNumCriteria = 13;

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options, const std::function<void(const CriterionResult&)>& on_result = {});

/// One line per criterion: "[PASS] 7 name: measured ... threshold ... (t s) detail".
std::string format_result(const CriterionResult& r);

}  // namespace uniterp
