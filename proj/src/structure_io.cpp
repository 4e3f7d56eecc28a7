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

#include "homog/structure_io.hpp"

#include <sstream>

#include "homog/errors.hpp"

namespace homog {

using nlohmann::json;

json to_json(const Signature& sig) {
  json out = json::array();
  for (const auto& s : sig.symbols()) {
    json sym = {{"name", s.name}, {"arity", s.arity()}, {"kind", std::string(kind_name(s.kind))}};
    if (s.partition) sym["partition"] = true;
    out.push_back(std::move(sym));
  }
  return out;
}

Signature signature_from_json(const json& j) {
  std::vector<Symbol> syms;
  for (const auto& s : j) {
    Symbol sym{s.at("name").get<std::string>(), parse_kind(s.at("kind").get<std::string>()),
               s.value("partition", false)};
    if (s.contains("arity") && s.at("arity").get<int>() != sym.arity())
      throw PreconditionError("arity does not match kind for symbol " + sym.name);
    syms.push_back(std::move(sym));
  }
  return Signature(std::move(syms));
}

json to_json(const FinStructure& s) {
  json rels = json::object();
  const auto& sig = s.signature();
  for (std::size_t k = 0; k < sig.size(); ++k) {
    json list = json::array();
    if (sig[k].arity() == 1) {
      for (auto v : s.members(k)) list.push_back(v);
    } else {
      for (auto [i, j] : s.pairs(k)) list.push_back({i, j});
    }
    rels[sig[k].name] = std::move(list);
  }
  return {{"sig", to_json(sig)}, {"n", s.size()}, {"rels", std::move(rels)}};
}

FinStructure structure_from_json(const json& j) {
  auto sig = signature_from_json(j.at("sig"));
  const auto n = j.at("n").get<std::size_t>();
  FinStructure::Builder b(sig, n);
  if (j.contains("rels")) {
    for (const auto& [name, list] : j.at("rels").items()) {
      const auto k = sig.index_of(name);
      for (const auto& entry : list) {
        if (sig[k].arity() == 1)
          b.mark(k, entry.get<Vertex>());
        else
          b.relate(k, entry.at(0).get<Vertex>(), entry.at(1).get<Vertex>());
      }
    }
  }
  return b.build();
}

std::string to_dot(const FinStructure& s) {
  const auto& sig = s.signature();
  bool directed = false;
  for (const auto& sym : sig.symbols())
    if (sym.kind == RelationKind::Arc || sym.kind == RelationKind::TournamentArc) directed = true;

  std::ostringstream os;
  os << (directed ? "digraph" : "graph") << " G {\n";
  for (Vertex v = 0; v < s.size(); ++v) {
    os << "  " << v;
    std::string label;
    for (std::size_t k = 0; k < sig.size(); ++k)
      if (sig[k].arity() == 1 && s.holds(k, v)) label += (label.empty() ? "" : ",") + sig[k].name;
    if (!label.empty()) os << " [label=\"" << v << ":" << label << "\"]";
    os << ";\n";
  }
  for (std::size_t k = 0; k < sig.size(); ++k) {
    const auto kind = sig[k].kind;
    if (kind == RelationKind::GraphEdge) {
      for (auto [i, j] : s.pairs(k)) {
        if (i > j) continue;
        os << "  " << i << (directed ? " -> " : " -- ") << j;
        if (directed) os << " [dir=none]";
        os << ";\n";
      }
    } else if (kind == RelationKind::Arc || kind == RelationKind::TournamentArc) {
      for (auto [i, j] : s.pairs(k)) os << "  " << i << " -> " << j << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace homog
