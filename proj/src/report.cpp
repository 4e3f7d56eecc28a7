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

#include "homog/report.hpp"

#include "homog/structure_io.hpp"

namespace homog {

std::string_view property_name(Property p) {
  switch (p) {
    case Property::HP:
      return "HP";
    case Property::JEP:
      return "JEP";
    case Property::AP:
      return "AP";
    case Property::SAP:
      return "SAP";
    case Property::Chain:
      return "chain";
    case Property::Extension:
      return "extension";
  }
  return "?";
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::HoldsUpToBound ? "holds-up-to-bound" : "fails";
}

namespace {

struct CounterexampleJson {
  nlohmann::json operator()(std::monostate) const { return nullptr; }
  nlohmann::json operator()(const AmalgamInstance& c) const {
    return {{"kind", "amalgam"}, {"A", to_json(c.a)}, {"B", to_json(c.b)},
            {"C", to_json(c.c)}, {"f", c.f},          {"g", c.g}};
  }
  nlohmann::json operator()(const StructurePair& c) const {
    return {{"kind", "substructure"},
            {"whole", to_json(c.whole)},
            {"part", to_json(c.part)},
            {"inclusion", c.inclusion}};
  }
  nlohmann::json operator()(const VertexPair& c) const {
    return {{"kind", "vertex-pair"}, {"x", c.x}, {"y", c.y}};
  }
};

}  // namespace

nlohmann::json to_json(const PropertyReport& r) {
  nlohmann::json j = {{"property", std::string(property_name(r.property))},
                      {"verdict", std::string(verdict_name(r.verdict))},
                      {"instances_checked", r.instances_checked},
                      {"counterexample", std::visit(CounterexampleJson{}, r.counterexample)}};
  if (!r.chains.empty()) j["chains"] = r.chains;
  if (!r.failures.empty()) j["failures"] = r.failures;
  return j;
}

}  // namespace homog
