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

#include "homog/fraisse.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>

#include "homog/errors.hpp"

namespace homog {

namespace {

bool clique_free(const FinStructure& s, std::size_t edge, std::size_t k) {
  const auto n = static_cast<Vertex>(s.size());
  std::vector<Vertex> pick;
  std::function<bool(Vertex)> grow = [&](Vertex from) {
    if (pick.size() == k) return true;
    for (Vertex v = from; v < n; ++v) {
      bool ok = true;
      for (auto p : pick) ok = ok && s.holds(edge, p, v);
      if (!ok) continue;
      pick.push_back(v);
      if (grow(v + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return !grow(0);
}

ClassSpec plain(std::string name, Signature sig,
                std::function<bool(const FinStructure&)> extra = nullptr) {
  ClassSpec k;
  k.name = std::move(name);
  k.sig = std::move(sig);
  k.member = [extra = std::move(extra)](const FinStructure& s) {
    return validate(s).ok && (!extra || extra(s));
  };
  return k;
}

FinStructure reduct(const FinStructure& s, const Signature& sig) {
  FinStructure::Builder b(sig, s.size());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const auto from = s.signature().index_of(sig[i].name);
    if (sig[i].arity() == 1) {
      for (auto v : s.members(from)) b.mark(i, v);
    } else {
      for (auto [x, y] : s.pairs(from)) b.relate(i, x, y);
    }
  }
  return b.build();
}

}  // namespace

ClassSpec ordered(const ClassSpec& base) {
  if (base.sig.order_symbol()) throw PreconditionError(base.name + " already carries an order");
  ClassSpec k;
  k.name = "ordered(" + base.name + ")";
  k.sig = base.sig.with({"<", RelationKind::LinearOrder});
  k.size_bound = base.size_bound;
  k.member = [inner = base.member, sig = base.sig](const FinStructure& s) {
    return validate(s).ok && inner(reduct(s, sig));
  };
  return k;
}

ClassSpec class_by_name(std::string_view name, std::size_t size_bound) {
  ClassSpec k;
  if (name.starts_with("ordered(") && name.ends_with(")")) {
    k = ordered(class_by_name(name.substr(8, name.size() - 9), size_bound));
  } else if (name == "all-graphs") {
    k = plain("all-graphs", Signature({{"E", RelationKind::GraphEdge}}));
  } else if (name.starts_with("K") && name.ends_with("-free-graphs")) {
    const auto digits = name.substr(1, name.size() - 1 - std::string_view("-free-graphs").size());
    std::size_t clique = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw PreconditionError("unknown class: " + std::string(name));
      clique = clique * 10 + static_cast<std::size_t>(c - '0');
    }
    if (digits.empty() || clique < 2) throw PreconditionError("unknown class: " + std::string(name));
    k = plain(std::string(name), Signature({{"E", RelationKind::GraphEdge}}),
              [clique](const FinStructure& s) { return clique_free(s, 0, clique); });
  } else if (name == "all-tournaments") {
    k = plain("all-tournaments", Signature({{"T", RelationKind::TournamentArc}}));
  } else if (name == "all-linear-orders") {
    k = plain("all-linear-orders", Signature({{"<", RelationKind::LinearOrder}}));
  } else if (name == "all-pure-sets") {
    k = plain("all-pure-sets", Signature());
  } else if (name == "all-partitioned-by-2") {
    k = plain("all-partitioned-by-2", Signature({{"P0", RelationKind::UnaryPart, true},
                                                 {"P1", RelationKind::UnaryPart, true}}));
  } else if (name == "exactly-two-vertices") {
    k = plain("exactly-two-vertices", Signature(),
              [](const FinStructure& s) { return s.size() == 2; });
  } else if (name == "at-most-one-P") {
    k = plain("at-most-one-P", Signature({{"P", RelationKind::UnaryPart}}),
              [](const FinStructure& s) { return s.members(0).size() <= 1; });
  } else {
    throw PreconditionError("unknown class: " + std::string(name));
  }
  k.size_bound = size_bound;
  return k;
}

std::vector<std::string> builtin_class_names() {
  return {"all-graphs",        "K3-free-graphs",       "all-tournaments",
          "all-linear-orders", "all-pure-sets",        "all-partitioned-by-2",
          "exactly-two-vertices", "at-most-one-P",     "ordered(all-graphs)"};
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

// One mixed-radix digit of a structure under construction.
struct Slot {
  enum Kind { Pair, Unary, Partition } kind;
  std::size_t symbol;
  Vertex x, y;
  std::size_t radix;
};

std::string invariant_key(const FinStructure& s) {
  std::string key;
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    if (s.signature()[i].arity() == 1) {
      key += std::to_string(s.members(i).size()) + ";";
      continue;
    }
    std::vector<std::pair<std::size_t, std::size_t>> deg(s.size());
    for (auto [x, y] : s.pairs(i)) {
      ++deg[x].first;
      ++deg[y].second;
    }
    std::sort(deg.begin(), deg.end());
    for (auto [a, b] : deg) key += std::to_string(a) + "," + std::to_string(b) + " ";
    key += ";";
  }
  return key;
}

}  // namespace

std::vector<FinStructure> enumerate_class(const ClassSpec& k, std::size_t n, std::size_t cap) {
  const auto& sig = k.sig;
  std::vector<Slot> slots;
  std::vector<std::size_t> partition;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (sig[i].kind == RelationKind::UnaryPart && sig[i].partition) partition.push_back(i);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    switch (sig[i].kind) {
      case RelationKind::GraphEdge:
      case RelationKind::Arc:
      case RelationKind::TournamentArc:
        for (Vertex x = 0; x < n; ++x)
          for (Vertex y = x + 1; y < n; ++y)
            slots.push_back({Slot::Pair, i, x, y, sig[i].kind == RelationKind::Arc ? 3u : 2u});
        break;
      case RelationKind::UnaryPart:
        if (!sig[i].partition)
          for (Vertex x = 0; x < n; ++x) slots.push_back({Slot::Unary, i, x, 0, 2});
        break;
      case RelationKind::LinearOrder:
        break;
    }
  }
  if (!partition.empty())
    for (Vertex x = 0; x < n; ++x) slots.push_back({Slot::Partition, 0, x, 0, partition.size()});

  std::size_t total = 1;
  for (const auto& s : slots) {
    if (total > cap / s.radix) throw BudgetExceeded("enumeration of " + k.name + " beyond cap");
    total *= s.radix;
  }

  const auto order = sig.order_symbol();
  std::vector<FinStructure> out;
  std::map<std::string, std::vector<std::size_t>> buckets;
  std::vector<std::size_t> digit(slots.size(), 0);
  for (std::size_t code = 0; code < total; ++code) {
    FinStructure::Builder b(sig, n);
    if (order)
      for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y) b.relate(*order, x, y);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& s = slots[i];
      const auto d = digit[i];
      switch (s.kind) {
        case Slot::Pair:
          if (sig[s.symbol].kind == RelationKind::GraphEdge) {
            if (d) b.connect(s.symbol, s.x, s.y);
          } else if (sig[s.symbol].kind == RelationKind::TournamentArc) {
            d ? b.relate(s.symbol, s.y, s.x) : b.relate(s.symbol, s.x, s.y);
          } else if (d == 1) {
            b.relate(s.symbol, s.x, s.y);
          } else if (d == 2) {
            b.relate(s.symbol, s.y, s.x);
          }
          break;
        case Slot::Unary:
          if (d) b.mark(s.symbol, s.x);
          break;
        case Slot::Partition:
          b.mark(partition[d], s.x);
          break;
      }
    }
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (++digit[i] < slots[i].radix) break;
      digit[i] = 0;
    }
    auto s = b.build();
    if (!k.member(s)) continue;
    if (!order) {
      auto& bucket = buckets[invariant_key(s)];
      bool seen = false;
      for (auto idx : bucket) {
        if (are_isomorphic(out[idx], s)) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      bucket.push_back(out.size());
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// amalgamation search

namespace {

constexpr std::size_t kLeafBudget = 4'000'000;

struct Cell {
  std::size_t symbol;  // for partition cells: unused
  Vertex x, y;         // unary cells: y unused
  enum Kind { Edge, Arc, Tour, Order, Unary, Partition } kind;
};

class AmalgamSearch {
 public:
  AmalgamSearch(const AmalgamInstance& inst, const ClassSpec& k, bool strong)
      : inst_(inst), k_(k), strong_(strong), sig_(inst.b.signature()) {
    for (std::size_t i = 0; i < sig_.size(); ++i)
      if (sig_[i].kind == RelationKind::UnaryPart && sig_[i].partition) partition_.push_back(i);
  }

  std::optional<Amalgam> run() {
    const auto nb = inst_.b.size(), nc = inst_.c.size();
    std::vector<char> in_ga(nc, 0);
    for (auto c : inst_.g) in_ga[c] = 1;
    std::vector<char> in_fa(nb, 0);
    for (auto b : inst_.f) in_fa[b] = 1;
    for (Vertex c = 0; c < nc; ++c)
      if (!in_ga[c]) c_rest_.push_back(c);
    for (Vertex b = 0; b < nb; ++b)
      if (!in_fa[b]) b_rest_.push_back(b);

    // Gluings: partial injections C-rest -> B-rest, fewest identifications first.
    std::vector<std::vector<int>> gluings;
    std::vector<int> cur(c_rest_.size(), -1);
    std::vector<char> used(b_rest_.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == c_rest_.size()) {
        gluings.push_back(cur);
        return;
      }
      cur[i] = -1;
      rec(i + 1);
      if (strong_) return;
      for (std::size_t j = 0; j < b_rest_.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        cur[i] = static_cast<int>(j);
        rec(i + 1);
        used[j] = 0;
      }
      cur[i] = -1;
    };
    rec(0);
    std::stable_sort(gluings.begin(), gluings.end(), [](const auto& a, const auto& b) {
      auto count = [](const std::vector<int>& g) {
        return std::count_if(g.begin(), g.end(), [](int x) { return x >= 0; });
      };
      return count(a) < count(b);
    });

    for (std::size_t extras = 0; extras <= 2; ++extras)
      for (const auto& glue : gluings)
        if (auto m = attempt(glue, extras)) return m;
    return std::nullopt;
  }

 private:
  std::optional<Amalgam> attempt(const std::vector<int>& glue, std::size_t extras) {
    const auto nb = inst_.b.size(), nc = inst_.c.size();
    Amalgam m;
    m.r.resize(nb);
    for (Vertex b = 0; b < nb; ++b) m.r[b] = b;
    m.s.assign(nc, 0);
    for (std::size_t a = 0; a < inst_.f.size(); ++a) m.s[inst_.g[a]] = inst_.f[a];
    auto next = static_cast<Vertex>(nb);
    for (std::size_t i = 0; i < c_rest_.size(); ++i)
      m.s[c_rest_[i]] = glue[i] >= 0 ? b_rest_[glue[i]] : next++;
    n_ = next + extras;

    // val_[sym][x*n+y]: -1 unknown, 0/1 relation absent/present.
    val_.assign(sig_.size(), std::vector<std::int8_t>(n_ * n_, -1));
    auto put = [&](std::size_t sym, Vertex x, Vertex y, bool v) {
      auto& cell = val_[sym][x * n_ + y];
      if (cell >= 0 && cell != static_cast<std::int8_t>(v)) return false;
      cell = v;
      return true;
    };
    auto copy_in = [&](const FinStructure& s, const std::vector<Vertex>& map) {
      for (std::size_t sym = 0; sym < sig_.size(); ++sym)
        for (Vertex x = 0; x < s.size(); ++x) {
          if (sig_[sym].arity() == 1) {
            if (!put(sym, map[x], map[x], s.holds(sym, x))) return false;
            continue;
          }
          for (Vertex y = 0; y < s.size(); ++y)
            if (x != y && !put(sym, map[x], map[y], s.holds(sym, x, y))) return false;
        }
      return true;
    };
    if (!copy_in(inst_.b, m.r) || !copy_in(inst_.c, m.s)) return std::nullopt;

    cells_.clear();
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t sym = 0; sym < sig_.size(); ++sym) {
        const auto kind = sig_[sym].kind;
        if ((kind == RelationKind::LinearOrder) != (pass == 0)) continue;
        if (kind == RelationKind::UnaryPart) {
          if (sig_[sym].partition) continue;
          for (Vertex x = 0; x < n_; ++x)
            if (val_[sym][x * n_ + x] < 0) cells_.push_back({sym, x, x, Cell::Unary});
          continue;
        }
        const auto ck = kind == RelationKind::GraphEdge       ? Cell::Edge
                        : kind == RelationKind::Arc           ? Cell::Arc
                        : kind == RelationKind::TournamentArc ? Cell::Tour
                                                              : Cell::Order;
        for (Vertex x = 0; x < n_; ++x)
          for (Vertex y = x + 1; y < n_; ++y)
            if (val_[sym][x * n_ + y] < 0) cells_.push_back({sym, x, y, ck});
      }
    if (!partition_.empty())
      for (Vertex x = 0; x < n_; ++x)
        if (val_[partition_[0]][x * n_ + x] < 0) cells_.push_back({0, x, x, Cell::Partition});

    if (!dfs(0)) return std::nullopt;
    m.d = found_;
    return m;
  }

  bool order_ok(std::size_t sym, Vertex a, Vertex b) const {
    // a < b was just set; reject a 3-cycle a < b < z < a.
    const auto& v = val_[sym];
    for (Vertex z = 0; z < n_; ++z)
      if (z != a && z != b && v[b * n_ + z] == 1 && v[z * n_ + a] == 1) return false;
    return true;
  }

  bool dfs(std::size_t i) {
    if (i == cells_.size()) {
      if (++leaves_ > kLeafBudget) throw BudgetExceeded("amalgam search leaf budget exhausted");
      FinStructure::Builder b(sig_, n_);
      for (std::size_t sym = 0; sym < sig_.size(); ++sym)
        for (Vertex x = 0; x < n_; ++x) {
          if (sig_[sym].arity() == 1) {
            if (val_[sym][x * n_ + x] == 1) b.mark(sym, x);
            continue;
          }
          for (Vertex y = 0; y < n_; ++y)
            if (x != y && val_[sym][x * n_ + y] == 1) b.relate(sym, x, y);
        }
      auto d = b.build();
      if (!k_.member(d)) return false;
      found_ = std::move(d);
      return true;
    }
    const auto& c = cells_[i];
    auto& v = c.kind == Cell::Partition ? val_[partition_[0]] : val_[c.symbol];
    auto set_pair = [&](std::int8_t xy, std::int8_t yx) {
      val_[c.symbol][c.x * n_ + c.y] = xy;
      val_[c.symbol][c.y * n_ + c.x] = yx;
    };
    switch (c.kind) {
      case Cell::Edge:
        for (std::int8_t e : {0, 1}) {
          set_pair(e, e);
          if (dfs(i + 1)) return true;
        }
        break;
      case Cell::Arc:
        for (auto [xy, yx] : {std::pair<std::int8_t, std::int8_t>{0, 0}, {1, 0}, {0, 1}}) {
          set_pair(xy, yx);
          if (dfs(i + 1)) return true;
        }
        break;
      case Cell::Tour:
        for (auto [xy, yx] : {std::pair<std::int8_t, std::int8_t>{1, 0}, {0, 1}}) {
          set_pair(xy, yx);
          if (dfs(i + 1)) return true;
        }
        break;
      case Cell::Order:
        for (int flip = 0; flip < 2; ++flip) {
          set_pair(flip ? 0 : 1, flip ? 1 : 0);
          const bool ok = flip ? order_ok(c.symbol, c.y, c.x) : order_ok(c.symbol, c.x, c.y);
          if (ok && dfs(i + 1)) return true;
        }
        break;
      case Cell::Unary:
        for (std::int8_t e : {0, 1}) {
          v[c.x * n_ + c.x] = e;
          if (dfs(i + 1)) return true;
        }
        break;
      case Cell::Partition:
        for (std::size_t p = 0; p < partition_.size(); ++p) {
          for (std::size_t q = 0; q < partition_.size(); ++q)
            val_[partition_[q]][c.x * n_ + c.x] = p == q;
          if (dfs(i + 1)) return true;
        }
        for (auto q : partition_) val_[q][c.x * n_ + c.x] = -1;
        return false;
    }
    if (c.kind == Cell::Unary)
      v[c.x * n_ + c.x] = -1;
    else
      set_pair(-1, -1);
    return false;
  }

  const AmalgamInstance& inst_;
  const ClassSpec& k_;
  bool strong_;
  Signature sig_;
  std::vector<std::size_t> partition_;
  std::vector<Vertex> b_rest_, c_rest_;
  std::size_t n_ = 0;
  std::vector<std::vector<std::int8_t>> val_;
  std::vector<Cell> cells_;
  FinStructure found_;
  std::size_t leaves_ = 0;
};

void require_instance(const AmalgamInstance& inst) {
  if (!(inst.a.signature() == inst.b.signature()) || !(inst.a.signature() == inst.c.signature()))
    throw PreconditionError("amalgamation instance mixes signatures");
  if (!is_embedding(inst.f, inst.a, inst.b) || !is_embedding(inst.g, inst.a, inst.c))
    throw PreconditionError("amalgamation instance maps are not embeddings");
}

}  // namespace

bool is_amalgam(const AmalgamInstance& inst, const Amalgam& m, bool strong) {
  if (m.r.size() != inst.b.size() || m.s.size() != inst.c.size()) return false;
  for (auto x : m.r)
    if (x >= m.d.size()) return false;
  for (auto x : m.s)
    if (x >= m.d.size()) return false;
  if (!is_embedding(m.r, inst.b, m.d) || !is_embedding(m.s, inst.c, m.d)) return false;
  for (std::size_t a = 0; a < inst.a.size(); ++a)
    if (m.r[inst.f[a]] != m.s[inst.g[a]]) return false;
  if (strong) {
    std::vector<Vertex> rb(m.r), sc(m.s), both, ra;
    std::sort(rb.begin(), rb.end());
    std::sort(sc.begin(), sc.end());
    std::set_intersection(rb.begin(), rb.end(), sc.begin(), sc.end(), std::back_inserter(both));
    for (auto a : inst.f) ra.push_back(m.r[a]);
    std::sort(ra.begin(), ra.end());
    if (both != ra) return false;
  }
  return true;
}

Amalgam amalgamate(const AmalgamInstance& inst, AmalgamMode mode, const ClassSpec* k,
                   bool strong) {
  require_instance(inst);
  if (mode == AmalgamMode::Search) {
    if (!k) throw PreconditionError("search mode needs a class");
    AmalgamSearch search(inst, *k, strong);
    if (auto m = search.run()) return *m;
    throw SearchExhausted("no amalgam within |B| + |C| - |A| + 2 vertices");
  }
  const auto& sig = inst.b.signature();
  for (const auto& s : sig.symbols())
    if (s.kind == RelationKind::LinearOrder || s.kind == RelationKind::TournamentArc)
      throw PreconditionError("free amalgamation needs a graph-edge or arc signature");

  const auto nb = inst.b.size(), nc = inst.c.size();
  Amalgam m;
  m.r.resize(nb);
  for (Vertex b = 0; b < nb; ++b) m.r[b] = b;
  m.s.assign(nc, 0);
  std::vector<char> in_ga(nc, 0);
  for (std::size_t a = 0; a < inst.g.size(); ++a) {
    m.s[inst.g[a]] = inst.f[a];
    in_ga[inst.g[a]] = 1;
  }
  auto next = static_cast<Vertex>(nb);
  for (Vertex c = 0; c < nc; ++c)
    if (!in_ga[c]) m.s[c] = next++;
  FinStructure::Builder b(sig, next);
  auto copy_in = [&](const FinStructure& s, const std::vector<Vertex>& map) {
    for (std::size_t sym = 0; sym < sig.size(); ++sym) {
      if (sig[sym].arity() == 1) {
        for (auto v : s.members(sym)) b.mark(sym, map[v]);
      } else {
        for (auto [x, y] : s.pairs(sym)) b.relate(sym, map[x], map[y]);
      }
    }
  };
  copy_in(inst.b, m.r);
  copy_in(inst.c, m.s);
  m.d = b.build();
  return m;
}

// ---------------------------------------------------------------------------
// property checks

namespace {

std::vector<std::vector<FinStructure>> members_by_size(const ClassSpec& k) {
  std::vector<std::vector<FinStructure>> out;
  for (std::size_t n = 0; n <= k.size_bound; ++n) out.push_back(enumerate_class(k, n));
  return out;
}

template <typename F>
void for_each_subset(std::size_t n, std::size_t size, F&& f) {
  std::vector<Vertex> pick;
  std::function<bool(Vertex)> rec = [&](Vertex from) {
    if (pick.size() == size) return f(pick);
    for (Vertex v = from; v < n; ++v) {
      pick.push_back(v);
      if (!rec(v + 1)) return false;
      pick.pop_back();
    }
    return true;
  };
  rec(0);
}

}  // namespace

PropertyReport check_hp(const ClassSpec& k) {
  PropertyReport report;
  report.property = Property::HP;
  const auto members = members_by_size(k);
  for (const auto& level : members) {
    for (const auto& whole : level) {
      for (std::size_t size = whole.size(); size-- > 0;) {
        bool failed = false;
        for_each_subset(whole.size(), size, [&](const std::vector<Vertex>& pick) {
          ++report.instances_checked;
          auto [part, inc] = induced_substructure(whole, pick);
          if (k.member(part)) return true;
          report.verdict = Verdict::Fails;
          report.counterexample = StructurePair{whole, part, inc.map};
          failed = true;
          return false;
        });
        if (failed) return report;
      }
    }
  }
  return report;
}

PropertyReport check_jep(const ClassSpec& k) {
  PropertyReport report;
  report.property = Property::JEP;
  const auto members = members_by_size(k);
  const auto empty = FinStructure::Builder(k.sig, 0).build();
  for (std::size_t nb = 1; nb <= k.size_bound; ++nb)
    for (std::size_t nc = nb; nc <= k.size_bound; ++nc)
      for (const auto& b : members[nb])
        for (const auto& c : members[nc]) {
          ++report.instances_checked;
          AmalgamInstance inst{empty, b, c, {}, {}};
          if (AmalgamSearch(inst, k, false).run()) continue;
          report.verdict = Verdict::Fails;
          report.counterexample = std::move(inst);
          return report;
        }
  return report;
}

PropertyReport check_ap(const ClassSpec& k, bool strong) {
  PropertyReport report;
  report.property = strong ? Property::SAP : Property::AP;
  const auto members = members_by_size(k);
  for (std::size_t nb = 0; nb <= k.size_bound; ++nb) {
    for (const auto& b : members[nb]) {
      for (std::size_t na = 0; na <= nb; ++na) {
        bool failed = false;
        for_each_subset(nb, na, [&](const std::vector<Vertex>& f) {
          auto a = induced_on(b, f);
          if (!k.member(a)) return true;
          for (std::size_t nc = na; nc <= k.size_bound && !failed; ++nc) {
            for (const auto& c : members[nc]) {
              for_each_embedding(a, c, [&](std::span<const Vertex> g) {
                ++report.instances_checked;
                AmalgamInstance inst{a, b, c, f, {g.begin(), g.end()}};
                if (AmalgamSearch(inst, k, strong).run()) return true;
                report.verdict = Verdict::Fails;
                report.counterexample = std::move(inst);
                failed = true;
                return false;
              });
              if (failed) break;
            }
          }
          return !failed;
        });
        if (failed) return report;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// chain condition

namespace {

struct PairType {
  PairRelation rel;
  int first = -1, second = -1;
  bool operator==(const PairType&) const = default;
};

PairType type_of(LimitHandle& h, Level level, Vertex x, Vertex y) {
  return {h.type_at(level, x, y), h.point_type(level, x), h.point_type(level, y)};
}

std::optional<Vertex> bridge(LimitHandle& h, Level level, Vertex x, Vertex y, const PairType& t,
                             std::uint64_t tiebreak) {
  if (t.first != t.second) return std::nullopt;  // a middle point would need two point types
  try {
    ExtensionRequest req;
    req.tiebreak = tiebreak;
    req.exclude = {x, y};
    demand_relation(h, level, req, x, t.rel);
    demand_relation(h, level, req, y, t.rel.flipped());
    const auto z = h.find_extension(req);
    if (type_of(h, level, x, z) == t && type_of(h, level, z, y) == t) return z;
  } catch (const Unsatisfiable&) {
  } catch (const PreconditionError&) {
  }
  return std::nullopt;
}

}  // namespace

PropertyReport check_chain_condition(LimitHandle& h, Vertex u, Vertex v,
                                     std::span<const VertexPair> pairs, std::size_t max_len) {
  PropertyReport report;
  report.property = Property::Chain;
  const auto level = h.exported_level();
  if (u == v) throw PreconditionError("u and v must differ");
  const auto target = type_of(h, level, u, v);
  if (target.rel.order > 0) throw PreconditionError("u must precede v");

  for (const auto& p : pairs) {
    ++report.instances_checked;
    std::vector<Vertex> chain;
    if (p.x != p.y && max_len >= 2) {
      // Breadth-first search over a window of the stage.
      const auto window = std::min<std::size_t>(h.size(), 256);
      std::vector<Vertex> nodes;
      for (Vertex i = 0; i < window; ++i) nodes.push_back(i);
      for (auto e : {p.x, p.y})
        if (e >= window) nodes.push_back(e);
      std::map<Vertex, Vertex> parent{{p.x, p.x}};
      std::deque<std::pair<Vertex, std::size_t>> queue{{p.x, 1}};
      while (!queue.empty() && !parent.count(p.y)) {
        auto [z, len] = queue.front();
        queue.pop_front();
        if (len >= max_len) continue;
        for (auto w : nodes) {
          if (parent.count(w) || w == z) continue;
          if (!(type_of(h, level, z, w) == target)) continue;
          parent[w] = z;
          queue.emplace_back(w, len + 1);
        }
      }
      if (parent.count(p.y)) {
        for (Vertex z = p.y; z != p.x; z = parent[z]) chain.push_back(z);
        chain.push_back(p.x);
        std::reverse(chain.begin(), chain.end());
      } else if (max_len >= 3) {
        // Extension fallback: one or two new middle points.
        if (auto z = bridge(h, level, p.x, p.y, target, 0)) {
          chain = {p.x, *z, p.y};
        } else if (max_len >= 4) {
          for (std::uint64_t t = 1; t <= 8 && chain.empty(); ++t) {
            ExtensionRequest req;
            req.tiebreak = t;
            req.exclude = {p.x, p.y};
            try {
              demand_relation(h, level, req, p.x, target.rel);
              const auto z1 = h.find_extension(req);
              if (!(type_of(h, level, p.x, z1) == target)) continue;
              if (auto z2 = bridge(h, level, z1, p.y, target, t)) chain = {p.x, z1, *z2, p.y};
            } catch (const Unsatisfiable&) {
            }
          }
        }
      }
    }
    if (chain.empty()) {
      if (report.verdict == Verdict::HoldsUpToBound) report.counterexample = VertexPair{p.x, p.y};
      report.verdict = Verdict::Fails;
      report.failures.push_back("no chain from " + std::to_string(p.x) + " to " +
                                std::to_string(p.y) + " within " + std::to_string(max_len));
      continue;
    }
    report.chains.push_back(std::move(chain));
  }
  return report;
}

}  // namespace homog
