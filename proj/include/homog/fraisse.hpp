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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homog/limits.hpp"
#include "homog/relstruct.hpp"
#include "homog/report.hpp"

namespace homog {

/// A class of finite structures given by a membership predicate.
struct ClassSpec {
  std::string name;
  Signature sig;
  std::function<bool(const FinStructure&)> member;
  std::size_t size_bound = 4;
};

/// Built-in classes: all-graphs, K<k>-free-graphs, all-tournaments,
/// all-linear-orders, all-pure-sets, all-partitioned-by-2, exactly-two-vertices,
/// at-most-one-P, and ordered(X) for any of these X.
ClassSpec class_by_name(std::string_view name, std::size_t size_bound = 4);
std::vector<std::string> builtin_class_names();

/// X expanded by an arbitrary linear order "<".
ClassSpec ordered(const ClassSpec& base);

/// Members with exactly n vertices, one per isomorphism type, in a fixed order.
/// Signatures with a linear order are enumerated with the standard order
/// 0 < 1 < ... < n-1 only (each isomorphism type appears once).
/// Throws BudgetExceeded when more than `cap` raw structures would be generated.
std::vector<FinStructure> enumerate_class(const ClassSpec& k, std::size_t n,
                                          std::size_t cap = 4'000'000);

PropertyReport check_hp(const ClassSpec& k);
PropertyReport check_jep(const ClassSpec& k);
PropertyReport check_ap(const ClassSpec& k, bool strong);

enum class AmalgamMode { Free, Search };

struct Amalgam {
  FinStructure d;
  std::vector<Vertex> r;  // B -> D
  std::vector<Vertex> s;  // C -> D
};

/// Free mode: B and C glued along A with no relations across (graph-edge and arc
/// signatures only). Search mode: the first D in `k` completing the diagram with
/// |D| <= |B| + |C| - |A| + 2, disjoint over A when `strong`.
/// Throws SearchExhausted when search mode finds nothing.
Amalgam amalgamate(const AmalgamInstance& inst, AmalgamMode mode, const ClassSpec* k = nullptr,
                   bool strong = false);

/// Re-verification: r and s are embeddings, agree on A, and (strong) meet only there.
bool is_amalgam(const AmalgamInstance& inst, const Amalgam& m, bool strong);

/// For each pair (x, y), a chain x = x_0, ..., x_{n+1} = y with every consecutive
/// pair of the same quantifier-free type as (u, v) at the handle's exported level,
/// and at most max_len vertices. Missing chains are reported, not thrown.
PropertyReport check_chain_condition(LimitHandle& h, Vertex u, Vertex v,
                                     std::span<const VertexPair> pairs, std::size_t max_len);

}  // namespace homog
