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

#include <array>
#include <optional>
#include <set>
#include <random>

#include "homog/autos.hpp"
#include "homog/errors.hpp"

namespace homog {
namespace {

bool all_pass(const std::vector<AutoCheck>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

TEST(PartialAuto, Basics) {
  PartialAuto p(Level::Base, {{0, 5}, {1, 6}});
  EXPECT_EQ(p.image(0), 5u);
  EXPECT_EQ(p.preimage(6), 1u);
  EXPECT_FALSE(p.image(5));
  EXPECT_THROW(p.set(2, 5), PreconditionError);
  EXPECT_THROW(p.set(0, 7), PreconditionError);
  auto q = p.inverse();
  EXPECT_EQ(q.image(5), 0u);
  auto id = p.then(q);
  EXPECT_EQ(id.map(), (std::map<Vertex, Vertex>{{0, 0}, {1, 1}}));
}

TEST(BackForth, EmptyMapOnRationals) {
  LimitHandle h(LimitSpec::parse("rationals", 7));
  h.materialize(10);
  std::vector<Vertex> want{0, 1};
  auto p = backforth_extend(h, PartialAuto(Level::Base), want, {});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(h.meta(0).coord < h.meta(1).coord, h.meta(*p.image(0)).coord < h.meta(*p.image(1)).coord);
  EXPECT_TRUE(is_partial_iso(h, p));
}

TEST(BackForth, RandomGraphPair) {
  LimitHandle h(LimitSpec::parse("random-graph", 7));
  h.materialize(10);
  std::vector<Vertex> want{0, 1};
  auto p = backforth_extend(h, PartialAuto(Level::Base, {{0, 5}}), want, {});
  EXPECT_EQ(p.image(0), 5u);
  EXPECT_EQ(h.relation(0, 1).adjacent, h.relation(5, *p.image(1)).adjacent);
}

TEST(BackForth, InvalidInputThrows) {
  LimitHandle h(LimitSpec::parse("random-graph", 7));
  h.materialize(12);
  std::optional<std::array<Vertex, 4>> found;
  for (Vertex a = 0; a < 12 && !found; ++a)
    for (Vertex b = 0; b < 12 && !found; ++b)
      for (Vertex c = 0; c < 12 && !found; ++c)
        for (Vertex d = 0; d < 12 && !found; ++d)
          if (std::set<Vertex>{a, b, c, d}.size() == 4 && h.relation(a, b).adjacent &&
              !h.relation(c, d).adjacent)
            found = std::array<Vertex, 4>{a, b, c, d};
  ASSERT_TRUE(found);
  const auto [a, b, c, d] = *found;
  PartialAuto bad(Level::Base, {{a, c}, {b, d}});
  EXPECT_THROW(backforth_extend(h, bad, std::vector<Vertex>{4}, {}), PreconditionError);
}

TEST(BackForth, EveryFamilyAndLevel) {
  for (const auto& name : {"pure-set", "rationals", "random-graph", "henson(3)", "random-tournament",
                           "s2", "In-Kinf(3)", "Iinf-Kn(2)", "Iinf-Kinf"}) {
    LimitHandle h(LimitSpec::parse(name, 3));
    h.materialize(30);
    std::vector<Level> levels = {Level::Base, Level::Ordered, Level::Expanded};
    if (std::string(name) == "Iinf-Kn(2)") levels = {Level::Base};
    if (std::string(name) == "Iinf-Kinf") levels = {Level::Base, Level::Ordered};
    for (auto level : levels) {
      std::vector<Vertex> dom, ran;
      for (Vertex i = 0; i < 15; ++i) dom.push_back(i);
      for (Vertex i = 5; i < 25; ++i) ran.push_back(i);
      auto p = backforth_extend(h, PartialAuto(level), dom, ran, {Twist::None, 9, true});
      EXPECT_TRUE(is_partial_iso(h, p)) << name;
      for (auto [x, y] : p.map()) EXPECT_NE(x, y) << name;
      for (auto v : ran) EXPECT_TRUE(p.preimage(v)) << name;
    }
  }
}

TEST(BackForth, OrderedFiniteCliquesGetStuck) {
  LimitHandle h(LimitSpec::parse("Iinf-Kn(2)", 3));
  h.materialize(40);
  std::optional<std::pair<Vertex, Vertex>> pair;
  for (Vertex a = 0; a < 40 && !pair; ++a)
    for (Vertex b = 0; b < 40 && !pair; ++b)
      if (a != b && h.relation(a, b).adjacent && h.meta(a).coord < h.meta(b).coord) pair = {a, b};
  ASSERT_TRUE(pair);
  PartialAuto p(Level::Ordered, {{pair->first, pair->second}});
  ASSERT_TRUE(is_partial_iso(h, p));
  const std::vector<Vertex> dom = {pair->second};
  EXPECT_THROW(backforth_extend(h, p, dom, {}, {}), Unsatisfiable);
}

TEST(BackForth, ConvexBlockLevelIsRejected) {
  LimitHandle h(LimitSpec::parse("Iinf-Kinf", 3));
  const std::vector<Vertex> dom = {0, 1, 2};
  EXPECT_THROW(backforth_extend(h, PartialAuto(Level::Expanded), dom, {}, {}), PreconditionError);
  LimitHandle k(LimitSpec::parse("Iinf-Kn(3)", 3));
  EXPECT_THROW(AutoHandle::canonical(k, AutoKind::OrderReversal), PreconditionError);
}

TEST(Canonical, OrderReversalOnPureSet) {
  LimitHandle h(LimitSpec::parse("pure-set", 7));
  auto s = AutoHandle::canonical(h, AutoKind::OrderReversal);
  h.materialize(40);
  for (Vertex x = 0; x < 40; ++x) {
    EXPECT_EQ(h.meta(s.image(x)).coord, -h.meta(x).coord);
    for (Vertex y = 0; y < x; ++y)
      if (h.meta(x).coord < h.meta(y).coord) EXPECT_LT(h.meta(s.image(y)).coord, h.meta(s.image(x)).coord);
  }
  EXPECT_TRUE(all_pass(certify(s)));
  EXPECT_EQ(s.fixed_point_bound(), 1u);
}

TEST(Canonical, ShiftHasNoFixedPoints) {
  LimitHandle h(LimitSpec::parse("rationals", 7));
  auto s = AutoHandle::canonical(h, AutoKind::Shift);
  for (Vertex x = 0; x < 100; ++x) {
    EXPECT_NE(s.image(x), x);
    EXPECT_EQ(h.meta(s.image(x)).coord, h.meta(x).coord + 1);
    EXPECT_EQ(s.preimage(s.image(x)), x);
  }
  EXPECT_TRUE(all_pass(certify(s)));
}

TEST(Canonical, PartSwap) {
  LimitHandle h(LimitSpec::parse("s2", 7));
  auto s = AutoHandle::canonical(h, AutoKind::PartSwap, 3);
  std::mt19937_64 rng(1);
  std::vector<Vertex> sample;
  for (int i = 0; i < 50; ++i) sample.push_back(static_cast<Vertex>(rng() % 60));
  for (auto v : sample) EXPECT_NE(h.meta(s.image(v)).part, h.meta(v).part);
  for (int i = 0; i < 50; ++i) {
    const auto x = sample[i], y = sample[(i + 1) % 50];
    if (x == y) continue;
    EXPECT_EQ(h.meta(x).coord < h.meta(y).coord, h.meta(s.image(x)).coord < h.meta(s.image(y)).coord);
    EXPECT_EQ(h.relation(x, y).arc, h.relation(s.image(x), s.image(y)).arc);
  }
  EXPECT_EQ(preserves_parts(s, sample), PartAction::Swaps);
  EXPECT_TRUE(all_pass(certify(s)));
}

TEST(Canonical, OrderReversalByBackAndForth) {
  for (const auto& name : {"random-graph", "henson(3)", "random-tournament", "In-Kinf(3)"}) {
    LimitHandle h(LimitSpec::parse(name, 5, Expansion::Order));
    auto s = AutoHandle::canonical(h, AutoKind::OrderReversal);
    for (Vertex x = 0; x < 40; ++x) s.image(x);
    std::size_t fixed = 0;
    for (auto [x, y] : s.realized()) fixed += x == y;
    EXPECT_LE(fixed, 1u);
    EXPECT_TRUE(all_pass(certify(s))) << name;
  }
}

TEST(Canonical, IncompatibleKinds) {
  LimitHandle s2(LimitSpec::parse("s2", 1)), rg(LimitSpec::parse("random-graph", 1)),
      q(LimitSpec::parse("rationals", 1));
  EXPECT_THROW(AutoHandle::canonical(rg, AutoKind::PartSwap), PreconditionError);
  EXPECT_THROW(AutoHandle::canonical(rg, AutoKind::Shift), PreconditionError);
  EXPECT_THROW(AutoHandle::canonical(q, AutoKind::OrderReversal), PreconditionError);
  EXPECT_THROW(AutoHandle::canonical(s2, AutoKind::OrderReversal), PreconditionError);
}

TEST(AutoHandle, QueryOrderIndependence) {
  auto run = [](bool forward) {
    LimitHandle h(LimitSpec::parse("random-graph", 7));
    h.materialize(30);
    auto g = AutoHandle::seeded(h, 11, Level::Base, true);
    std::map<Vertex, Vertex> got;
    for (int i = 0; i < 30; ++i) {
      const auto v = static_cast<Vertex>(forward ? i : 29 - i);
      got[v] = g.image(v);
    }
    return got;
  };
  EXPECT_EQ(run(true), run(false));
}

TEST(AutoHandle, SeededFixedPointFreeIsCertified) {
  LimitHandle h(LimitSpec::parse("random-graph", 2));
  auto g = AutoHandle::seeded(h, 5, Level::Base, true);
  for (Vertex v = 0; v < 60; ++v) {
    EXPECT_NE(g.image(v), v);
    EXPECT_EQ(g.preimage(g.image(v)), v);
  }
  EXPECT_TRUE(all_pass(certify(g)));
}

TEST(Betweenness, Examples) {
  EXPECT_TRUE(betweenness(Rational(1), Rational(0), Rational(2)));
  EXPECT_FALSE(betweenness(Rational(0), Rational(1), Rational(2)));
  EXPECT_THROW(betweenness(Rational(0), Rational(0), Rational(2)), PreconditionError);
}

TEST(Betweenness, InvariantUnderOrderReversal) {
  LimitHandle h(LimitSpec::parse("pure-set", 7));
  auto s = AutoHandle::canonical(h, AutoKind::OrderReversal);
  h.materialize(50);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    Vertex x = rng() % 50, y = rng() % 50, z = rng() % 50;
    if (x == y || y == z || x == z) continue;
    EXPECT_EQ(betweenness(h.meta(x).coord, h.meta(y).coord, h.meta(z).coord),
              betweenness(h.meta(s.image(x)).coord, h.meta(s.image(y)).coord,
                          h.meta(s.image(z)).coord));
  }
}

TEST(PartAction, IdentityAndTournamentOnlyMaps) {
  LimitHandle h(LimitSpec::parse("s2", 7));
  auto id = AutoHandle::canonical(h, AutoKind::Identity);
  std::vector<Vertex> sample;
  for (Vertex v = 0; v < 40; ++v) sample.push_back(v);
  EXPECT_EQ(preserves_parts(id, sample), PartAction::PreservesEach);
  auto g = AutoHandle::seeded(h, 4, Level::Base);
  EXPECT_EQ(preserves_parts(g, sample), PartAction::Mixed);
  EXPECT_TRUE(all_pass(certify(g)));
  LimitHandle rg(LimitSpec::parse("random-graph", 1));
  auto other = AutoHandle::canonical(rg, AutoKind::Identity);
  EXPECT_THROW(preserves_parts(other, sample), PreconditionError);
}

TEST(PartAction, StarLevelMapsPreserveParts) {
  LimitHandle h(LimitSpec::parse("s2", 9));
  auto g = AutoHandle::seeded(h, 2, Level::Expanded);
  std::vector<Vertex> sample;
  for (Vertex v = 0; v < 40; ++v) sample.push_back(v);
  EXPECT_EQ(preserves_parts(g, sample), PartAction::PreservesEach);
}

}  // namespace
}  // namespace homog
