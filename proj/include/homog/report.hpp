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

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "homog/relstruct.hpp"

namespace homog {

enum class Property { HP, JEP, AP, SAP, Chain, Extension };
enum class Verdict { HoldsUpToBound, Fails };

std::string_view property_name(Property p);
std::string_view verdict_name(Verdict v);

/// A over B and C: f embeds A into B, g embeds A into C.
struct AmalgamInstance {
  FinStructure a, b, c;
  std::vector<Vertex> f, g;
};

/// `part` is the substructure of `whole` on `inclusion`.
struct StructurePair {
  FinStructure whole;
  FinStructure part;
  std::vector<Vertex> inclusion;
};

struct VertexPair {
  Vertex x = 0, y = 0;
};

using Counterexample = std::variant<std::monostate, AmalgamInstance, StructurePair, VertexPair>;

struct PropertyReport {
  Property property = Property::AP;
  Verdict verdict = Verdict::HoldsUpToBound;
  Counterexample counterexample;
  std::size_t instances_checked = 0;
  std::vector<std::vector<Vertex>> chains;  // check_chain_condition only
  std::vector<std::string> failures;        // human-readable failure lines

  bool holds() const { return verdict == Verdict::HoldsUpToBound; }
};

nlohmann::json to_json(const PropertyReport& r);

}  // namespace homog
