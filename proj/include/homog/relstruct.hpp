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
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace homog {

using Vertex = std::uint32_t;

enum class RelationKind {
  GraphEdge,      // symmetric, irreflexive
  Arc,            // irreflexive, antisymmetric
  TournamentArc,  // irreflexive, exactly one direction per unordered pair
  LinearOrder,    // irreflexive, transitive, total
  UnaryPart,      // unary predicate
};

std::string_view kind_name(RelationKind kind);
RelationKind parse_kind(std::string_view name);

struct Symbol {
  std::string name;
  RelationKind kind = RelationKind::GraphEdge;
  // Unary symbols with this flag set form the signature's partition family:
  // every vertex carries exactly one of them.
  bool partition = false;

  int arity() const { return kind == RelationKind::UnaryPart ? 1 : 2; }
  bool operator==(const Symbol&) const = default;
};

/// Ordered list of relation symbols. Names are unique and at most one symbol
/// is a linear order.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  std::span<const Symbol> symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws if absent
  std::optional<std::size_t> order_symbol() const;

  /// Copy of this signature with `extra` appended.
  Signature with(Symbol extra) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Finite relational structure on vertices 0..n-1. Immutable once built;
/// copies share storage.
class FinStructure {
 public:
  class Builder;

  FinStructure();

  const Signature& signature() const { return data_->sig; }
  std::size_t size() const { return data_->n; }

  bool holds(std::size_t symbol, Vertex i, Vertex j) const;
  bool holds(std::size_t symbol, Vertex i) const;

  /// Ordered pairs of a binary symbol, lexicographically sorted.
  std::vector<std::pair<Vertex, Vertex>> pairs(std::size_t symbol) const;
  /// Vertices carrying a unary symbol, ascending.
  std::vector<Vertex> members(std::size_t symbol) const;

  bool operator==(const FinStructure& other) const;

 private:
  struct Data {
    Signature sig;
    std::size_t n = 0;
    std::size_t words = 0;                      // 64-bit words per row
    std::vector<std::vector<std::uint64_t>> tables;  // one per symbol
  };
  explicit FinStructure(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

class FinStructure::Builder {
 public:
  Builder(Signature sig, std::size_t n);

  /// Records exactly the ordered pair (i, j).
  Builder& relate(std::size_t symbol, Vertex i, Vertex j);
  Builder& relate(std::string_view symbol, Vertex i, Vertex j);
  /// Like relate, but graph-edge symbols also get (j, i).
  Builder& connect(std::size_t symbol, Vertex i, Vertex j);
  Builder& connect(std::string_view symbol, Vertex i, Vertex j);
  Builder& mark(std::size_t symbol, Vertex i);
  Builder& mark(std::string_view symbol, Vertex i);

  FinStructure build() const;

 private:
  std::shared_ptr<Data> data_;
};

/// Outcome of validate(): ok, or the first violated constraint with a witness tuple.
struct ValidationReport {
  bool ok = true;
  std::string symbol;
  std::string constraint;
  std::vector<Vertex> witness;

  explicit operator bool() const { return ok; }
};

ValidationReport validate(const FinStructure& s);

/// Induced (preserving and reflecting) embedding of `dom` into `cod`.
struct Embedding {
  FinStructure dom;
  FinStructure cod;
  std::vector<Vertex> map;
};

/// True iff f is injective and preserves and reflects every relation.
/// Throws PreconditionError on size, range or signature mismatch.
bool is_embedding(std::span<const Vertex> f, const FinStructure& a, const FinStructure& b);
inline bool is_embedding(const Embedding& e) { return is_embedding(e.map, e.dom, e.cod); }

/// Calls `visit` with each embedding map a -> b in lexicographic order of the
/// map sequence until it returns false.
void for_each_embedding(const FinStructure& a, const FinStructure& b,
                        const std::function<bool(std::span<const Vertex>)>& visit);

/// All embeddings (or the first `limit`) in lexicographic order. Empty when |a| > |b|.
std::vector<Embedding> enumerate_embeddings(const FinStructure& a, const FinStructure& b,
                                            std::size_t limit = SIZE_MAX);

/// Substructure on the vertex set S (sorted, deduplicated), plus its inclusion.
std::pair<FinStructure, Embedding> induced_substructure(const FinStructure& b,
                                                        std::vector<Vertex> S);

/// Substructure whose vertex i is seq[i]; seq must be duplicate-free.
FinStructure induced_on(const FinStructure& b, std::span<const Vertex> seq);

/// First bijective embedding in the search order, if any.
std::optional<Embedding> are_isomorphic(const FinStructure& a, const FinStructure& b);

}  // namespace homog
