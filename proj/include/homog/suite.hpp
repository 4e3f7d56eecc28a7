// Copyright 2026 The homog Authors
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
#include <string>
#include <vector>

#include <json.hpp>

namespace homog {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // target runtime
};

/// The nine acceptance criteria, in order. `only` selects one criterion (1..9);
/// 0 runs all. A criterion that throws is recorded as failed.
std::vector<CriterionResult> run_suite(std::uint64_t seed, int only = 0);

int criterion_count();

nlohmann::json to_json(const std::vector<CriterionResult>& results, std::uint64_t seed);

/// "criterion 3 [PASS] extension axioms (0.41 s): ..."
std::string summary_line(const CriterionResult& r);

}  // namespace homog
