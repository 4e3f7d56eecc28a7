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

#include <algorithm>
#include <numeric>

#include "homog/errors.hpp"
#include "homog/limits.hpp"
#include "homog/relstruct.hpp"
#include "homog/structure_io.hpp"

namespace homog {
namespace {

Signature graph_sig() { return Signature({{"E", RelationKind::GraphEdge}}); }

FinStructure graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) {
  FinStructure::Builder b(graph_sig(), n);
  for (auto [i, j] : edges) b.connect("E", i, j);
  return b.build();
}

FinStructure cycle4() { return graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

// Oracle: every sequence of |a| labels from b, filtered to injective maps
// that preserve and reflect each binary symbol.
struct BruteCount {
  std::size_t injections = 0;
  std::size_t embeddings = 0;
};

BruteCount count_embeddings_brute(const FinStructure& a, const FinStructure& b) {
  BruteCount out;
  const std::size_t k = a.size(), n = b.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= n;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Vertex> f(k);
    for (std::size_t i = 0, c = code; i < k; ++i, c /= n) f[i] = static_cast<Vertex>(c % n);
    auto sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    ++out.injections;
    bool ok = true;
    for (Vertex i = 0; i < k && ok; ++i)
      for (Vertex j = 0; j < k && ok; ++j)
        for (std::size_t s = 0; s < a.signature().size() && ok; ++s)
          if (a.signature()[s].arity() == 2 && i != j) ok = a.holds(s, i, j) == b.holds(s, f[i], f[j]);
    if (ok) ++out.embeddings;
  }
  return out;
}

TEST(Validate, CycleIsAGraph) { EXPECT_TRUE(validate(cycle4()).ok); }

TEST(Validate, TournamentWithBothDirections) {
  Signature sig({{"T", RelationKind::TournamentArc}});
  auto s = FinStructure::Builder(sig, 2).relate("T", 0, 1).relate("T", 1, 0).build();
  auto r = validate(s);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.symbol, "T");
  EXPECT_EQ(r.witness.size(), 2u);
}

TEST(Validate, OrderMustBeTotal) {
  Signature sig({{"<", RelationKind::LinearOrder}});
  auto s = FinStructure::Builder(sig, 3).relate("<", 0, 1).relate("<", 1, 2).build();
  auto r = validate(s);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.symbol, "<");
}

TEST(Validate, OrderWithCycleIsNotTransitive) {
  Signature sig({{"<", RelationKind::LinearOrder}});
  auto s = FinStructure::Builder(sig, 3).relate("<", 0, 1).relate("<", 1, 2).relate("<", 2, 0).build();
  auto r = validate(s);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.witness.size(), 3u);
}

TEST(Validate, PartitionCoversEveryVertexOnce) {
  Signature sig({{"P0", RelationKind::UnaryPart, true}, {"P1", RelationKind::UnaryPart, true}});
  EXPECT_TRUE(validate(FinStructure::Builder(sig, 2).mark("P0", 0).mark("P1", 1).build()).ok);
  EXPECT_FALSE(validate(FinStructure::Builder(sig, 2).mark("P0", 0).build()).ok);
  EXPECT_FALSE(validate(FinStructure::Builder(sig, 1).mark("P0", 0).mark("P1", 0).build()).ok);
}

TEST(Signature, RejectsDuplicatesAndTwoOrders) {
  EXPECT_THROW(Signature({{"E", RelationKind::GraphEdge}, {"E", RelationKind::Arc}}), PreconditionError);
  EXPECT_THROW(Signature({{"<", RelationKind::LinearOrder}, {"<<", RelationKind::LinearOrder}}),
               PreconditionError);
}

TEST(Embedding, IdentityOnCycle) {
  auto c = cycle4();
  std::vector<Vertex> id{0, 1, 2, 3};
  EXPECT_TRUE(is_embedding(id, c, c));
}

TEST(Embedding, EdgeOntoNonAdjacentPair) {
  auto k2 = graph(2, {{0, 1}});
  auto p3 = graph(3, {{0, 1}, {1, 2}});
  std::vector<Vertex> f{0, 2};
  EXPECT_FALSE(is_embedding(f, k2, p3));
}

TEST(Embedding, RangeMismatchThrows) {
  auto k2 = graph(2, {{0, 1}});
  std::vector<Vertex> f{0, 7};
  EXPECT_THROW(is_embedding(f, k2, cycle4()), PreconditionError);
  std::vector<Vertex> g{0};
  EXPECT_THROW(is_embedding(g, k2, cycle4()), PreconditionError);
}

TEST(Embedding, EdgeIntoCycleCountMatchesBruteForce) {
  auto k2 = graph(2, {{0, 1}});
  const auto brute = count_embeddings_brute(k2, cycle4());
  EXPECT_EQ(brute.injections, 12u);
  const auto expected = brute.embeddings;
  EXPECT_EQ(expected, 8u);
  auto all = enumerate_embeddings(k2, cycle4());
  EXPECT_EQ(all.size(), expected);
  for (const auto& e : all) EXPECT_TRUE(is_embedding(e));
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(),
                             [](const Embedding& x, const Embedding& y) { return x.map < y.map; }));
}

TEST(Embedding, TriangleIntoCycleIsEmpty) {
  EXPECT_TRUE(enumerate_embeddings(graph(3, {{0, 1}, {1, 2}, {0, 2}}), cycle4()).empty());
}

TEST(Embedding, EmptyStructureHasOneEmbedding) {
  auto all = enumerate_embeddings(graph(0, {}), cycle4());
  ASSERT_EQ(all.size(), 1u);
  EXPECT_TRUE(all[0].map.empty());
}

TEST(Embedding, LimitAndDeterminism) {
  auto k2 = graph(2, {{0, 1}});
  auto a = enumerate_embeddings(k2, cycle4(), 3);
  auto b = enumerate_embeddings(k2, cycle4(), 3);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a[i].map, b[i].map);
}

TEST(Induced, WholeSetAndPairs) {
  auto c = cycle4();
  auto [whole, inc] = induced_substructure(c, {3, 2, 1, 0});
  EXPECT_EQ(whole, c);
  EXPECT_TRUE(is_embedding(inc));

  auto [adj, inc1] = induced_substructure(c, {0, 1});
  EXPECT_EQ(adj, graph(2, {{0, 1}}));
  EXPECT_TRUE(is_embedding(inc1));

  auto [opp, inc2] = induced_substructure(c, {0, 2});
  EXPECT_EQ(opp, graph(2, {}));
  EXPECT_TRUE(is_embedding(inc2));

  EXPECT_THROW(induced_substructure(c, {0, 9}), PreconditionError);
}

TEST(Isomorphism, SmallCases) {
  auto iso = are_isomorphic(cycle4(), cycle4());
  ASSERT_TRUE(iso);
  EXPECT_EQ(iso->map, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_FALSE(are_isomorphic(graph(3, {{0, 1}, {1, 2}}), graph(3, {{0, 1}, {1, 2}, {0, 2}})));
  Signature other({{"T", RelationKind::TournamentArc}});
  EXPECT_THROW(are_isomorphic(cycle4(), FinStructure::Builder(other, 4).build()), PreconditionError);
}

bool isomorphic_brute(const FinStructure& a, const FinStructure& b) {
  if (a.size() != b.size()) return false;
  std::vector<Vertex> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (Vertex i = 0; i < a.size() && ok; ++i)
      for (Vertex j = 0; j < a.size() && ok; ++j)
        if (i != j) ok = a.holds(0, i, j) == b.holds(0, p[i], p[j]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

TEST(Isomorphism, SeededStagesAgreeWithExhaustiveSearch) {
  for (std::uint64_t s1 = 1; s1 <= 6; ++s1) {
    for (std::uint64_t s2 = s1 + 1; s2 <= 6; ++s2) {
      LimitHandle h1(LimitSpec::parse("random-graph", s1)), h2(LimitSpec::parse("random-graph", s2));
      auto a = h1.stage(6), b = h2.stage(6);
      auto got = are_isomorphic(a, b);
      EXPECT_EQ(got.has_value(), isomorphic_brute(a, b)) << s1 << " " << s2;
      if (got) EXPECT_TRUE(is_embedding(*got));
    }
  }
}

TEST(Json, RoundTripIsByteStable) {
  Signature sig({{"T", RelationKind::TournamentArc},
                 {"<", RelationKind::LinearOrder},
                 {"P0", RelationKind::UnaryPart, true},
                 {"P1", RelationKind::UnaryPart, true}});
  auto s = FinStructure::Builder(sig, 2)
               .relate("T", 1, 0)
               .relate("<", 0, 1)
               .mark("P0", 0)
               .mark("P1", 1)
               .build();
  const auto text = to_json(s).dump();
  auto back = structure_from_json(nlohmann::json::parse(text));
  EXPECT_EQ(back, s);
  EXPECT_EQ(to_json(back).dump(), text);
}

TEST(Dot, GraphEdgesAreUndirected) {
  const auto dot = to_dot(graph(2, {{0, 1}}));
  EXPECT_NE(dot.find("graph"), std::string::npos);
  EXPECT_NE(dot.find("0 -- 1"), std::string::npos);
}

}  // namespace
}  // namespace homog
