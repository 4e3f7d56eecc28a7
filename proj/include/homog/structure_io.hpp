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

#include <string>

#include <json.hpp>

#include "homog/relstruct.hpp"

namespace homog {

nlohmann::json to_json(const Signature& sig);
Signature signature_from_json(const nlohmann::json& j);

/// {"sig":[{"name","arity","kind"}...],"n":int,"rels":{"name":[[i,j]...]|[i...]}}
nlohmann::json to_json(const FinStructure& s);
FinStructure structure_from_json(const nlohmann::json& j);

/// Graphviz text. Graph-edge symbols render as undirected edges, arcs as directed.
/// Orders and unary symbols are not drawn except as vertex labels.
std::string to_dot(const FinStructure& s);

}  // namespace homog
