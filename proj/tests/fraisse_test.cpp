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

#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "homog/errors.hpp"
#include "homog/fraisse.hpp"

namespace homog {
namespace {

// ---- brute-force oracle ---------------------------------------------------

// All injective maps from n labels into m vertices.
void each_injection(std::size_t n, std::size_t m,
                    const std::function<bool(const std::vector<Vertex>&)>& f) {
  std::vector<Vertex> cur;
  std::vector<char> used(m, 0);
  std::function<bool()> rec = [&]() {
    if (cur.size() == n) return f(cur);
    for (Vertex v = 0; v < m; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      cur.push_back(v);
      const bool go = rec();
      cur.pop_back();
      used[v] = 0;
      if (!go) return false;
    }
    return true;
  };
  rec();
}

bool preserves(const FinStructure& a, const FinStructure& b, const std::vector<Vertex>& f) {
  for (std::size_t s = 0; s < a.signature().size(); ++s)
    for (Vertex i = 0; i < a.size(); ++i) {
      if (a.signature()[s].arity() == 1) {
        if (a.holds(s, i) != b.holds(s, f[i])) return false;
        continue;
      }
      for (Vertex j = 0; j < a.size(); ++j)
        if (i != j && a.holds(s, i, j) != b.holds(s, f[i], f[j])) return false;
    }
  return true;
}

// Every graph (optionally with the standard order) on m vertices.
std::vector<FinStructure> raw_graphs(const Signature& sig, std::size_t m) {
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex i = 0; i < m; ++i)
    for (Vertex j = i + 1; j < m; ++j) slots.emplace_back(i, j);
  std::vector<FinStructure> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    FinStructure::Builder b(sig, m);
    for (std::size_t k = 0; k < slots.size(); ++k)
      if ((mask >> k) & 1U) b.connect("E", slots[k].first, slots[k].second);
    if (sig.find("<"))
      for (Vertex i = 0; i < m; ++i)
        for (Vertex j = i + 1; j < m; ++j) b.relate("<", i, j);
    out.push_back(b.build());
  }
  return out;
}

bool oracle_amalgam_exists(const AmalgamInstance& in, const ClassSpec& k, bool strong,
                           const std::function<std::vector<FinStructure>(std::size_t)>& all) {
  const auto top = in.b.size() + in.c.size() - in.a.size();
  for (std::size_t m = std::max(in.b.size(), in.c.size()); m <= top; ++m) {
    for (const auto& d : all(m)) {
      if (!k.member(d)) continue;
      bool found = false;
      each_injection(in.b.size(), m, [&](const std::vector<Vertex>& r) {
        if (!preserves(in.b, d, r)) return true;
        each_injection(in.c.size(), m, [&](const std::vector<Vertex>& s) {
          if (!preserves(in.c, d, s)) return true;
          for (std::size_t a = 0; a < in.a.size(); ++a)
            if (r[in.f[a]] != s[in.g[a]]) return true;
          if (strong) {
            std::size_t shared = 0;
            for (auto x : r)
              if (std::find(s.begin(), s.end(), x) != s.end()) ++shared;
            if (shared != in.a.size()) return true;
          }
          found = true;
          return false;
        });
        return !found;
      });
      if (found) return true;
    }
  }
  return false;
}

FinStructure graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) {
  FinStructure::Builder b(Signature({{"E", RelationKind::GraphEdge}}), n);
  for (auto [i, j] : edges) b.connect("E", i, j);
  return b.build();
}

// ---- enumeration ----------------------------------------------------------

TEST(Enumerate, GraphIsomorphismTypes) {
  auto k = class_by_name("all-graphs");
  const std::size_t expected[] = {1, 1, 2, 4, 11, 34};
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(enumerate_class(k, n).size(), expected[n]);
}

TEST(Enumerate, OtherClasses) {
  EXPECT_EQ(enumerate_class(class_by_name("all-tournaments"), 4).size(), 4u);
  EXPECT_EQ(enumerate_class(class_by_name("all-linear-orders"), 4).size(), 1u);
  EXPECT_EQ(enumerate_class(class_by_name("K3-free-graphs"), 4).size(), 7u);
  EXPECT_EQ(enumerate_class(class_by_name("all-partitioned-by-2"), 3).size(), 4u);
  EXPECT_EQ(enumerate_class(class_by_name("ordered(all-graphs)"), 3).size(), 8u);
  EXPECT_EQ(enumerate_class(class_by_name("at-most-one-P"), 3).size(), 2u);
}

TEST(Enumerate, Overflow) {
  EXPECT_THROW(enumerate_class(class_by_name("all-graphs"), 9, 1000), BudgetExceeded);
}

TEST(Enumerate, MembershipIsIsomorphismInvariant) {
  std::mt19937_64 rng(3);
  for (const auto& name : {"K3-free-graphs", "all-graphs", "at-most-one-P"}) {
    auto k = class_by_name(name);
    auto sig = k.sig;
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 5;
      FinStructure::Builder b(sig, n), c(sig, n);
      std::vector<Vertex> perm{0, 1, 2, 3, 4};
      std::shuffle(perm.begin(), perm.end(), rng);
      for (Vertex i = 0; i < n; ++i) {
        if (sig.find("P") && rng() % 3 == 0) {
          b.mark("P", i);
          c.mark("P", perm[i]);
        }
        for (Vertex j = i + 1; j < n; ++j)
          if (sig.find("E") && rng() % 2) {
            b.connect("E", i, j);
            c.connect("E", perm[i], perm[j]);
          }
      }
      EXPECT_EQ(k.member(b.build()), k.member(c.build()));
    }
  }
}

TEST(ClassNames, UnknownThrows) {
  EXPECT_THROW(class_by_name("all-hypergraphs"), PreconditionError);
  EXPECT_THROW(class_by_name("K-free-graphs"), PreconditionError);
  for (const auto& n : builtin_class_names()) EXPECT_EQ(class_by_name(n).name, n);
}

// ---- HP / JEP -------------------------------------------------------------

TEST(Hereditary, Graphs) {
  EXPECT_TRUE(check_hp(class_by_name("all-graphs", 4)).holds());
  EXPECT_TRUE(check_hp(class_by_name("K3-free-graphs", 4)).holds());
}

TEST(Hereditary, ExactlyTwoVerticesFails) {
  auto r = check_hp(class_by_name("exactly-two-vertices", 4));
  ASSERT_FALSE(r.holds());
  const auto& pair = std::get<StructurePair>(r.counterexample);
  EXPECT_EQ(pair.whole.size(), 2u);
  EXPECT_EQ(pair.part.size(), 1u);
  EXPECT_FALSE(class_by_name("exactly-two-vertices").member(pair.part));
}

TEST(JointEmbedding, BuiltIns) {
  for (const auto& name : {"all-graphs", "K3-free-graphs", "all-tournaments", "all-linear-orders",
                           "ordered(all-graphs)"})
    EXPECT_TRUE(check_jep(class_by_name(name, 3)).holds()) << name;
  // Complete or edgeless graphs: K2 and its complement have no joint extension.
  ClassSpec mono{"complete-or-edgeless", Signature({{"E", RelationKind::GraphEdge}}),
                 [](const FinStructure& s) {
                   const auto e = s.pairs(0).size();
                   return e == 0 || e == s.size() * (s.size() - 1);
                 },
                 3};
  auto r = check_jep(mono);
  ASSERT_FALSE(r.holds());
  const auto& inst = std::get<AmalgamInstance>(r.counterexample);
  EXPECT_EQ(inst.b.size(), 2u);
  EXPECT_EQ(inst.c.size(), 2u);
}

// ---- AP / SAP -------------------------------------------------------------

TEST(Amalgamation, StrongBuiltInsUpToFour) {
  for (const auto& name :
       {"all-graphs", "K3-free-graphs", "all-tournaments", "all-linear-orders", "all-pure-sets"}) {
    auto r = check_ap(class_by_name(name, 4), true);
    EXPECT_TRUE(r.holds()) << name;
    EXPECT_GT(r.instances_checked, 10u) << name;
  }
}

TEST(Amalgamation, OrderedGraphsPlain) {
  auto r = check_ap(class_by_name("ordered(all-graphs)", 4), false);
  EXPECT_TRUE(r.holds());
}

TEST(Amalgamation, AtMostOnePFailsStrongOnly) {
  auto k = class_by_name("at-most-one-P", 4);
  auto sap = check_ap(k, true);
  ASSERT_FALSE(sap.holds());
  const auto& inst = std::get<AmalgamInstance>(sap.counterexample);
  EXPECT_EQ(inst.a.size(), 0u);
  EXPECT_EQ(inst.b.size(), 1u);
  EXPECT_EQ(inst.c.size(), 1u);
  auto all_p = [&](std::size_t m) {
    std::vector<FinStructure> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      FinStructure::Builder b(k.sig, m);
      for (Vertex i = 0; i < m; ++i)
        if ((mask >> i) & 1U) b.mark("P", i);
      out.push_back(b.build());
    }
    return out;
  };
  EXPECT_FALSE(oracle_amalgam_exists(inst, k, true, all_p));
  EXPECT_TRUE(oracle_amalgam_exists(inst, k, false, all_p));
  auto glued = amalgamate(inst, AmalgamMode::Search, &k, false);
  EXPECT_EQ(glued.d.size(), 1u);
  EXPECT_TRUE(is_amalgam(inst, glued, false));
  EXPECT_THROW(amalgamate(inst, AmalgamMode::Search, &k, true), SearchExhausted);
  EXPECT_TRUE(check_ap(k, false).holds());
}

TEST(Amalgamation, SearchAgreesWithOracleOnSmallInstances) {
  for (const auto& name : {"all-graphs", "K3-free-graphs", "ordered(all-graphs)"}) {
    auto k = class_by_name(name, 3);
    auto all = [&](std::size_t m) { return raw_graphs(k.sig, m); };
    std::size_t checked = 0;
    for (std::size_t nb = 1; nb <= 3; ++nb)
      for (const auto& b : enumerate_class(k, nb))
        for (std::size_t nc = 1; nc <= 3; ++nc)
          for (const auto& c : enumerate_class(k, nc)) {
            // A = the first vertex of each side when both agree, else empty.
            std::vector<AmalgamInstance> insts;
            auto empty = FinStructure::Builder(k.sig, 0).build();
            insts.push_back({empty, b, c, {}, {}});
            auto one = FinStructure::Builder(k.sig, 1).build();
            insts.push_back({one, b, c, {0}, {0}});
            for (const auto& in : insts) {
              for (bool strong : {true, false}) {
                std::optional<Amalgam> got;
                try {
                  got = amalgamate(in, AmalgamMode::Search, &k, strong);
                } catch (const SearchExhausted&) {
                }
                EXPECT_EQ(got.has_value(), oracle_amalgam_exists(in, k, strong, all)) << name;
                if (got) EXPECT_TRUE(is_amalgam(in, *got, strong));
                ++checked;
              }
            }
          }
    EXPECT_GT(checked, 20u);
  }
}

TEST(Amalgamate, FreeExamples) {
  auto k2 = graph(2, {{0, 1}});
  auto point = graph(1, {});
  AmalgamInstance over_vertex{point, k2, k2, {1}, {0}};
  auto m = amalgamate(over_vertex, AmalgamMode::Free);
  EXPECT_TRUE(is_amalgam(over_vertex, m, true));
  EXPECT_TRUE(are_isomorphic(m.d, graph(3, {{0, 1}, {1, 2}})).has_value());

  AmalgamInstance over_empty{graph(0, {}), k2, k2, {}, {}};
  auto two = amalgamate(over_empty, AmalgamMode::Free);
  EXPECT_EQ(two.d.size(), 4u);
  EXPECT_EQ(two.d.pairs(0).size(), 4u);  // two edges, both orientations
  EXPECT_TRUE(is_amalgam(over_empty, two, true));
}

TEST(Amalgamate, OrderedSearch) {
  auto k = class_by_name("all-linear-orders", 4);
  auto pair = FinStructure::Builder(k.sig, 2).relate("<", 0, 1).build();
  auto point = FinStructure::Builder(k.sig, 1).build();
  AmalgamInstance inst{point, pair, pair, {0}, {0}};
  auto m = amalgamate(inst, AmalgamMode::Search, &k, true);
  EXPECT_EQ(m.d.size(), 3u);
  EXPECT_TRUE(is_amalgam(inst, m, true));
  EXPECT_TRUE(oracle_amalgam_exists(inst, k, true, [&](std::size_t m) {
    std::vector<FinStructure> out;
    FinStructure::Builder b(k.sig, m);
    for (Vertex i = 0; i < m; ++i)
      for (Vertex j = i + 1; j < m; ++j) b.relate("<", i, j);
    out.push_back(b.build());
    return out;
  }));
  EXPECT_THROW(amalgamate(inst, AmalgamMode::Free), PreconditionError);
}

TEST(Amalgamate, RejectsBadInstances) {
  auto k2 = graph(2, {{0, 1}});
  auto e2 = graph(2, {});
  AmalgamInstance bad{e2, k2, k2, {0, 1}, {0, 1}};
  EXPECT_THROW(amalgamate(bad, AmalgamMode::Free), PreconditionError);
}

TEST(Reports, Deterministic) {
  auto k = class_by_name("K3-free-graphs", 3);
  EXPECT_EQ(to_json(check_ap(k, true)).dump(), to_json(check_ap(k, true)).dump());
}

// ---- chain condition ------------------------------------------------------

TEST(Chain, RationalsGiveDirectChains) {
  LimitHandle h(LimitSpec::parse("rationals", 7));
  const auto u = h.vertex_at(Rational(0)), v = h.vertex_at(Rational(1));
  h.materialize(50);
  std::vector<VertexPair> pairs;
  for (Vertex x = 0; x < 20; ++x)
    for (Vertex y = 0; y < 20; ++y)
      if (x != y && h.meta(x).coord < h.meta(y).coord) pairs.push_back({x, y});
  auto r = check_chain_condition(h, u, v, pairs, 2);
  ASSERT_TRUE(r.holds());
  for (const auto& c : r.chains) EXPECT_EQ(c.size(), 2u);
}

// Oracle: plain BFS over the first n vertices.
std::size_t bfs_distance(LimitHandle& h, Vertex x, Vertex y, std::size_t n,
                         const PairRelation& t) {
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::deque<Vertex> q{x};
  dist[x] = 1;
  while (!q.empty()) {
    auto z = q.front();
    q.pop_front();
    for (Vertex w = 0; w < n; ++w)
      if (w != z && dist[w] == SIZE_MAX && h.type_at(Level::Ordered, z, w) == t) {
        dist[w] = dist[z] + 1;
        q.push_back(w);
      }
  }
  return dist[y];
}

TEST(Chain, OrderedRandomGraphAdjacentType) {
  LimitHandle h(LimitSpec::parse("random-graph", 7, Expansion::Order));
  h.materialize(200);
  Vertex u = 0, v = 0;
  std::vector<VertexPair> pairs;
  for (Vertex i = 0; i < 200 && u == v; ++i)
    for (Vertex j = 0; j < 200; ++j)
      if (i != j && h.relation(i, j).adjacent && h.relation(i, j).order < 0) {
        u = i;
        v = j;
        break;
      }
  for (Vertex i = 0; i < 200 && pairs.size() < 50; ++i)
    for (Vertex j = i + 1; j < 200 && pairs.size() < 50; ++j) {
      auto r = h.relation(i, j);
      if (!r.adjacent) pairs.push_back(r.order < 0 ? VertexPair{i, j} : VertexPair{j, i});
    }
  const auto t = h.type_at(Level::Ordered, u, v);
  for (const auto& p : pairs) EXPECT_LE(bfs_distance(h, p.x, p.y, 200, t), 3u);
  auto r = check_chain_condition(h, u, v, pairs, 4);
  ASSERT_TRUE(r.holds());
  ASSERT_EQ(r.chains.size(), pairs.size());
  for (const auto& c : r.chains) {
    EXPECT_LE(c.size(), 4u);
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      EXPECT_EQ(h.type_at(Level::Ordered, c[i], c[i + 1]), t);
  }
}

TEST(Chain, TooShortIsReported) {
  LimitHandle h(LimitSpec::parse("random-graph", 7, Expansion::Order));
  h.materialize(20);
  Vertex u = 0, v = 1;
  if (h.relation(0, 1).order > 0) std::swap(u, v);
  VertexPair p{u, v};
  auto r = check_chain_condition(h, u, v, std::span(&p, 1), 1);
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.failures.size(), 1u);
  EXPECT_THROW(check_chain_condition(h, v, u, std::span(&p, 1), 3), PreconditionError);
}

}  // namespace
}  // namespace homog
