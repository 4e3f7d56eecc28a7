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

#include "homog/relstruct.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "homog/errors.hpp"

namespace homog {

std::string_view kind_name(RelationKind kind) {
  switch (kind) {
    case RelationKind::GraphEdge:
      return "graph-edge";
    case RelationKind::Arc:
      return "arc";
    case RelationKind::TournamentArc:
      return "tournament-arc";
    case RelationKind::LinearOrder:
      return "linear-order";
    case RelationKind::UnaryPart:
      return "unary-part";
  }
  return "?";
}

RelationKind parse_kind(std::string_view name) {
  for (auto k : {RelationKind::GraphEdge, RelationKind::Arc, RelationKind::TournamentArc,
                 RelationKind::LinearOrder, RelationKind::UnaryPart}) {
    if (kind_name(k) == name) return k;
  }
  throw PreconditionError("unknown relation kind: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> names;
  int orders = 0;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw PreconditionError("empty symbol name");
    if (!names.insert(s.name).second) throw PreconditionError("duplicate symbol " + s.name);
    if (s.kind == RelationKind::LinearOrder) ++orders;
    if (s.partition && s.kind != RelationKind::UnaryPart)
      throw PreconditionError("only unary symbols can belong to the partition family");
  }
  if (orders > 1) throw PreconditionError("at most one linear-order symbol per signature");
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw PreconditionError("no symbol named " + std::string(name));
}

std::optional<std::size_t> Signature::order_symbol() const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].kind == RelationKind::LinearOrder) return i;
  return std::nullopt;
}

Signature Signature::with(Symbol extra) const {
  auto syms = symbols_;
  syms.push_back(std::move(extra));
  return Signature(std::move(syms));
}

// ---------------------------------------------------------------------------
// FinStructure

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

bool test_bit(const std::vector<std::uint64_t>& t, std::size_t pos) {
  return (t[pos >> 6] >> (pos & 63)) & 1U;
}

void set_bit(std::vector<std::uint64_t>& t, std::size_t pos) {
  t[pos >> 6] |= std::uint64_t{1} << (pos & 63);
}

}  // namespace

FinStructure::FinStructure() : data_(std::make_shared<Data>()) {}

bool FinStructure::holds(std::size_t symbol, Vertex i, Vertex j) const {
  const auto& d = *data_;
  return test_bit(d.tables[symbol], std::size_t{i} * d.words * 64 + j);
}

bool FinStructure::holds(std::size_t symbol, Vertex i) const {
  return test_bit(data_->tables[symbol], i);
}

std::vector<std::pair<Vertex, Vertex>> FinStructure::pairs(std::size_t symbol) const {
  std::vector<std::pair<Vertex, Vertex>> out;
  const auto n = static_cast<Vertex>(size());
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (holds(symbol, i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<Vertex> FinStructure::members(std::size_t symbol) const {
  std::vector<Vertex> out;
  for (Vertex i = 0; i < size(); ++i)
    if (holds(symbol, i)) out.push_back(i);
  return out;
}

bool FinStructure::operator==(const FinStructure& other) const {
  if (data_ == other.data_) return true;
  return data_->sig == other.data_->sig && data_->n == other.data_->n &&
         data_->tables == other.data_->tables;
}

FinStructure::Builder::Builder(Signature sig, std::size_t n) : data_(std::make_shared<Data>()) {
  data_->sig = std::move(sig);
  data_->n = n;
  data_->words = words_for(n);
  for (const auto& s : data_->sig.symbols()) {
    const std::size_t bits = s.arity() == 2 ? n * data_->words * 64 : n;
    data_->tables.emplace_back(words_for(bits), 0);
  }
}

FinStructure::Builder& FinStructure::Builder::relate(std::size_t symbol, Vertex i, Vertex j) {
  if (symbol >= data_->sig.size() || data_->sig[symbol].arity() != 2)
    throw PreconditionError("relate: not a binary symbol");
  if (i >= data_->n || j >= data_->n) throw PreconditionError("relate: vertex out of range");
  set_bit(data_->tables[symbol], std::size_t{i} * data_->words * 64 + j);
  return *this;
}

FinStructure::Builder& FinStructure::Builder::relate(std::string_view symbol, Vertex i,
                                                     Vertex j) {
  return relate(data_->sig.index_of(symbol), i, j);
}

FinStructure::Builder& FinStructure::Builder::connect(std::size_t symbol, Vertex i, Vertex j) {
  relate(symbol, i, j);
  if (data_->sig[symbol].kind == RelationKind::GraphEdge) relate(symbol, j, i);
  return *this;
}

FinStructure::Builder& FinStructure::Builder::connect(std::string_view symbol, Vertex i,
                                                      Vertex j) {
  return connect(data_->sig.index_of(symbol), i, j);
}

FinStructure::Builder& FinStructure::Builder::mark(std::size_t symbol, Vertex i) {
  if (symbol >= data_->sig.size() || data_->sig[symbol].arity() != 1)
    throw PreconditionError("mark: not a unary symbol");
  if (i >= data_->n) throw PreconditionError("mark: vertex out of range");
  set_bit(data_->tables[symbol], i);
  return *this;
}

FinStructure::Builder& FinStructure::Builder::mark(std::string_view symbol, Vertex i) {
  return mark(data_->sig.index_of(symbol), i);
}

FinStructure FinStructure::Builder::build() const {
  return FinStructure(std::make_shared<const Data>(*data_));
}

// ---------------------------------------------------------------------------
// validate

ValidationReport validate(const FinStructure& s) {
  const auto& sig = s.signature();
  const auto n = static_cast<Vertex>(s.size());
  auto fail = [](const Symbol& sym, std::string what, std::vector<Vertex> w) {
    return ValidationReport{false, sym.name, std::move(what), std::move(w)};
  };

  for (std::size_t k = 0; k < sig.size(); ++k) {
    const auto& sym = sig[k];
    if (sym.arity() == 1) continue;
    for (Vertex i = 0; i < n; ++i)
      if (s.holds(k, i, i)) return fail(sym, "irreflexive", {i, i});

    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = i + 1; j < n; ++j) {
        const bool ij = s.holds(k, i, j), ji = s.holds(k, j, i);
        switch (sym.kind) {
          case RelationKind::GraphEdge:
            if (ij != ji) return fail(sym, "symmetric", ij ? std::vector{i, j} : std::vector{j, i});
            break;
          case RelationKind::Arc:
            if (ij && ji) return fail(sym, "antisymmetric", {i, j});
            break;
          case RelationKind::TournamentArc:
            if (ij && ji) return fail(sym, "antisymmetric", {i, j});
            if (!ij && !ji) return fail(sym, "tournament completeness", {i, j});
            break;
          case RelationKind::LinearOrder:
            if (ij && ji) return fail(sym, "antisymmetric", {i, j});
            if (!ij && !ji) return fail(sym, "total", {i, j});
            break;
          case RelationKind::UnaryPart:
            break;
        }
      }
    }

    if (sym.kind == RelationKind::LinearOrder) {
      // A total antisymmetric relation is transitive iff its "number of
      // predecessors" values are pairwise distinct; otherwise it has a 3-cycle.
      std::vector<Vertex> below(n, 0);
      for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j)
          if (s.holds(k, j, i)) ++below[i];
      std::vector<Vertex> seen(n, n);
      for (Vertex i = 0; i < n; ++i) {
        if (seen[below[i]] == n) {
          seen[below[i]] = i;
          continue;
        }
        Vertex a = seen[below[i]], b = i;
        if (s.holds(k, b, a)) std::swap(a, b);  // now a < b
        for (Vertex c = 0; c < n; ++c)
          if (c != a && c != b && s.holds(k, b, c) && s.holds(k, c, a))
            return fail(sym, "transitive", {a, b, c});
        return fail(sym, "transitive", {a, b});  // unreachable for total relations
      }
    }
  }

  // Partition family: exactly one flagged symbol per vertex.
  std::vector<std::size_t> family;
  for (std::size_t k = 0; k < sig.size(); ++k)
    if (sig[k].partition) family.push_back(k);
  if (!family.empty()) {
    for (Vertex i = 0; i < n; ++i) {
      int count = 0;
      for (auto k : family) count += s.holds(k, i) ? 1 : 0;
      if (count != 1) return fail(sig[family.front()], "partition", {i});
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// embeddings

namespace {

void require_same_signature(const FinStructure& a, const FinStructure& b) {
  if (!(a.signature() == b.signature())) throw PreconditionError("signature mismatch");
}

// Relations between the newly placed a-vertex `ai` (image `bi`) and the earlier
// vertex `aj` (image `bj`) agree, as do the unary facts of `ai`.
bool compatible(const FinStructure& a, const FinStructure& b, Vertex ai, Vertex bi, Vertex aj,
                Vertex bj) {
  const auto& sig = a.signature();
  for (std::size_t k = 0; k < sig.size(); ++k) {
    if (sig[k].arity() == 1) continue;
    if (a.holds(k, ai, aj) != b.holds(k, bi, bj)) return false;
    if (a.holds(k, aj, ai) != b.holds(k, bj, bi)) return false;
  }
  return true;
}

bool point_compatible(const FinStructure& a, const FinStructure& b, Vertex ai, Vertex bi) {
  const auto& sig = a.signature();
  for (std::size_t k = 0; k < sig.size(); ++k) {
    if (sig[k].arity() == 1) {
      if (a.holds(k, ai) != b.holds(k, bi)) return false;
    } else if (a.holds(k, ai, ai) != b.holds(k, bi, bi)) {
      return false;
    }
  }
  return true;
}

// Backtracking in lexicographic order. `allowed(ai, bi)` prunes candidates.
template <typename Allowed>
void search(const FinStructure& a, const FinStructure& b, Allowed allowed,
            const std::function<bool(std::span<const Vertex>)>& visit) {
  const auto na = static_cast<Vertex>(a.size());
  const auto nb = static_cast<Vertex>(b.size());
  if (na > nb) return;
  std::vector<Vertex> map;
  std::vector<char> used(nb, 0);
  map.reserve(na);

  bool keep_going = true;
  std::function<void()> rec = [&] {
    if (!keep_going) return;
    const auto ai = static_cast<Vertex>(map.size());
    if (ai == na) {
      keep_going = visit(map);
      return;
    }
    for (Vertex bi = 0; bi < nb && keep_going; ++bi) {
      if (used[bi] || !allowed(ai, bi) || !point_compatible(a, b, ai, bi)) continue;
      bool ok = true;
      for (Vertex aj = 0; aj < ai && ok; ++aj) ok = compatible(a, b, ai, bi, aj, map[aj]);
      if (!ok) continue;
      used[bi] = 1;
      map.push_back(bi);
      rec();
      map.pop_back();
      used[bi] = 0;
    }
  };
  rec();
}

}  // namespace

bool is_embedding(std::span<const Vertex> f, const FinStructure& a, const FinStructure& b) {
  require_same_signature(a, b);
  if (f.size() != a.size()) throw PreconditionError("map length differs from domain size");
  for (auto v : f)
    if (v >= b.size()) throw PreconditionError("map value out of codomain range");

  std::vector<char> used(b.size(), 0);
  for (auto v : f) {
    if (used[v]) return false;
    used[v] = 1;
  }
  const auto n = static_cast<Vertex>(a.size());
  for (Vertex i = 0; i < n; ++i) {
    if (!point_compatible(a, b, i, f[i])) return false;
    for (Vertex j = 0; j < i; ++j)
      if (!compatible(a, b, i, f[i], j, f[j])) return false;
  }
  return true;
}

void for_each_embedding(const FinStructure& a, const FinStructure& b,
                        const std::function<bool(std::span<const Vertex>)>& visit) {
  require_same_signature(a, b);
  search(a, b, [](Vertex, Vertex) { return true; }, visit);
}

std::vector<Embedding> enumerate_embeddings(const FinStructure& a, const FinStructure& b,
                                            std::size_t limit) {
  std::vector<Embedding> out;
  if (limit == 0) return out;
  for_each_embedding(a, b, [&](std::span<const Vertex> m) {
    out.push_back(Embedding{a, b, std::vector<Vertex>(m.begin(), m.end())});
    return out.size() < limit;
  });
  return out;
}

FinStructure induced_on(const FinStructure& b, std::span<const Vertex> seq) {
  std::vector<char> seen(b.size(), 0);
  for (auto v : seq) {
    if (v >= b.size()) throw PreconditionError("induced_on: vertex out of range");
    if (seen[v]) throw PreconditionError("induced_on: repeated vertex");
    seen[v] = 1;
  }
  const auto& sig = b.signature();
  FinStructure::Builder out(sig, seq.size());
  for (std::size_t k = 0; k < sig.size(); ++k) {
    for (Vertex i = 0; i < seq.size(); ++i) {
      if (sig[k].arity() == 1) {
        if (b.holds(k, seq[i])) out.mark(k, i);
        continue;
      }
      for (Vertex j = 0; j < seq.size(); ++j)
        if (b.holds(k, seq[i], seq[j])) out.relate(k, i, j);
    }
  }
  return out.build();
}

std::pair<FinStructure, Embedding> induced_substructure(const FinStructure& b,
                                                        std::vector<Vertex> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  auto sub = induced_on(b, S);
  return {sub, Embedding{sub, b, std::move(S)}};
}

namespace {

// Per-vertex invariant: for each symbol, out/in degree or unary membership.
std::vector<std::vector<std::size_t>> profiles(const FinStructure& s) {
  const auto& sig = s.signature();
  const auto n = static_cast<Vertex>(s.size());
  std::vector<std::vector<std::size_t>> out(n);
  for (Vertex i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < sig.size(); ++k) {
      if (sig[k].arity() == 1) {
        out[i].push_back(s.holds(k, i) ? 1 : 0);
        continue;
      }
      std::size_t o = 0, in = 0;
      for (Vertex j = 0; j < n; ++j) {
        o += s.holds(k, i, j) ? 1 : 0;
        in += s.holds(k, j, i) ? 1 : 0;
      }
      out[i].push_back(o);
      out[i].push_back(in);
    }
  }
  return out;
}

}  // namespace

std::optional<Embedding> are_isomorphic(const FinStructure& a, const FinStructure& b) {
  require_same_signature(a, b);
  if (a.size() != b.size()) return std::nullopt;
  const auto pa = profiles(a), pb = profiles(b);
  auto sorted_a = pa, sorted_b = pb;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) return std::nullopt;

  std::optional<Embedding> found;
  search(
      a, b, [&](Vertex ai, Vertex bi) { return pa[ai] == pb[bi]; },
      [&](std::span<const Vertex> m) {
        found = Embedding{a, b, std::vector<Vertex>(m.begin(), m.end())};
        return false;
      });
  return found;
}

}  // namespace homog
