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


#include "homog/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "homog/autos.hpp"
#include "homog/catalog.hpp"
#include "homog/errors.hpp"
#include "homog/fraisse.hpp"
#include "homog/limits.hpp"
#include "homog/structure_io.hpp"
#include "homog/witnesses.hpp"

namespace homog {

namespace {

// Collects failed checks of one criterion.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool pass() const { return failed_ == 0; }
  std::string detail() const {
    std::ostringstream out;
    out << (checks_ - failed_) << "/" << checks_ << " checks";
    for (const auto& f : failures_) out << "; " << f;
    return out.str();
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::vector<Vertex> random_subset(std::mt19937_64& rng, std::size_t k, Vertex range) {
  std::vector<Vertex> all(range);
  for (Vertex i = 0; i < range; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min<std::size_t>(k, range));
  return all;
}

// No strong amalgam of inst exists in k: by heredity it is enough to look at
// structures of size |B| + |C| - |A|.
bool no_strong_amalgam(const AmalgamInstance& inst, const ClassSpec& k) {
  const auto n = inst.b.size() + inst.c.size() - inst.a.size();
  for (const auto& d : enumerate_class(k, n)) {
    bool found = false;
    for_each_embedding(inst.b, d, [&](std::span<const Vertex> r) {
      for_each_embedding(inst.c, d, [&](std::span<const Vertex> s) {
        std::set<Vertex> rb(r.begin(), r.end()), common;
        for (auto x : s)
          if (rb.count(x)) common.insert(x);
        bool agree = common.size() == inst.a.size();
        for (Vertex i = 0; i < inst.a.size() && agree; ++i) agree = r[inst.f[i]] == s[inst.g[i]];
        found = agree;
        return !found;
      });
      return !found;
    });
    if (found) return false;
  }
  return true;
}

void criterion_ap(Tally& t) {
  for (const auto* name :
       {"all-graphs", "K3-free-graphs", "all-tournaments", "all-linear-orders", "all-pure-sets"}) {
    const auto r = check_ap(class_by_name(name, 4), true);
    t.check(r.holds(), std::string(name) + " strong amalgamation");
  }
  t.check(check_ap(class_by_name("ordered(all-graphs)", 4), false).holds(),
          "ordered(all-graphs) amalgamation");
  const auto k = class_by_name("at-most-one-P", 4);
  const auto r = check_ap(k, true);
  t.check(!r.holds(), "at-most-one-P strong amalgamation must fail");
  const auto* inst = std::get_if<AmalgamInstance>(&r.counterexample);
  t.check(inst != nullptr, "at-most-one-P counterexample present");
  if (inst) {
    t.check(k.member(inst->b) && k.member(inst->c) && k.member(inst->a),
            "counterexample structures are class members");
    t.check(is_embedding(inst->f, inst->a, inst->b) && is_embedding(inst->g, inst->a, inst->c),
            "counterexample maps are embeddings");
    t.check(no_strong_amalgam(*inst, k), "counterexample has no strong amalgam");
  }
}

void criterion_limits(Tally& t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (const auto* name : {"pure-set", "rationals", "random-graph", "henson(3)",
                           "random-tournament", "s2", "In-Kinf(3)", "Iinf-Kn(2)", "Iinf-Kinf"}) {
    LimitHandle h(LimitSpec::parse(name, seed));
    const auto big = h.stage(200);
    for (int i = 0; i < 10; ++i) {
      const auto m = std::uniform_int_distribution<std::size_t>(2, 200)(rng);
      const auto n = std::uniform_int_distribution<std::size_t>(1, m - 1)(rng);
      LimitHandle fresh(LimitSpec::parse(name, seed));
      const auto sm = fresh.stage(m);
      std::vector<Vertex> prefix(n);
      for (Vertex v = 0; v < n; ++v) prefix[v] = v;
      t.check(induced_on(sm, prefix) == fresh.stage(n) && induced_on(big, prefix) == fresh.stage(n),
              std::string(name) + " nestedness " + std::to_string(n) + " < " + std::to_string(m));
    }
    LimitHandle a(LimitSpec::parse(name, seed)), b(LimitSpec::parse(name, seed));
    t.check(a.stage_json(100).dump() == b.stage_json(100).dump(),
            std::string(name) + " stage(100) determinism");
  }
  {
    LimitHandle h(LimitSpec::parse("henson(3)", seed));
    const auto s = h.stage(50);
    const auto e = *s.signature().find("E");
    bool free = true;
    for (Vertex x = 0; x < 50; ++x)
      for (Vertex y = x + 1; y < 50; ++y)
        for (Vertex z = y + 1; z < 50; ++z)
          if (s.holds(e, x, y) && s.holds(e, y, z) && s.holds(e, x, z)) free = false;
    t.check(free, "henson(3) stage 50 triangle-free");
  }
  {
    LimitHandle h(LimitSpec::parse("s2", seed));
    const auto s = h.stage(60);
    const auto a = *s.signature().find("T");
    bool tournament = true, local = true;
    for (Vertex x = 0; x < 60; ++x)
      for (Vertex y = x + 1; y < 60; ++y)
        if (s.holds(a, x, y) == s.holds(a, y, x)) tournament = false;
    for (Vertex v = 0; v < 60; ++v)
      for (bool out : {true, false}) {
        std::vector<Vertex> nb;
        for (Vertex x = 0; x < 60; ++x)
          if (x != v && (out ? s.holds(a, v, x) : s.holds(a, x, v))) nb.push_back(x);
        for (auto x : nb)
          for (auto y : nb)
            for (auto z : nb)
              if (s.holds(a, x, y) && s.holds(a, y, z) && s.holds(a, z, x)) local = false;
      }
    t.check(tournament, "s2 stage 60 is a tournament");
    t.check(local, "s2 stage 60 neighbourhoods are transitive");
  }
}

void criterion_extension(Tally& t, std::uint64_t seed) {
  for (const auto* name : {"random-graph", "random-tournament", "rationals", "henson(3)"}) {
    LimitHandle h(LimitSpec::parse(name, seed));
    const auto r = verify_extension_axioms(h, 2, 400);
    t.check(r.holds() && r.instances_checked > 0,
            std::string(name) + " extension axioms" + (r.failures.empty() ? "" : ": " + r.failures[0]));
  }
  LimitHandle h(LimitSpec::parse("henson(3)", seed));
  h.materialize(30);
  bool found = false, refused = false;
  for (Vertex i = 0; i < 30 && !found; ++i)
    for (Vertex j = i + 1; j < 30 && !found; ++j)
      if (h.relation(i, j).adjacent) {
        found = true;
        ExtensionRequest req;
        req.adjacent_to = {i, j};
        try {
          h.find_extension(req);
        } catch (const Unsatisfiable&) {
          refused = true;
        }
      }
  t.check(found && refused, "henson(3) adjacent-pair demand is Unsatisfiable");
}

// Raw-relation re-check that iota copies A and its image misses its h-image.
bool copy_ok(LimitHandle& h, AutoHandle& g, const PartialAuto& iota, std::size_t n) {
  std::set<Vertex> img;
  for (auto [a, x] : iota.map()) img.insert(x);
  if (img.size() != n || iota.size() != n) return false;
  for (auto x : img)
    if (img.count(g.image(x))) return false;
  for (auto [a, x] : iota.map())
    for (auto [b, y] : iota.map()) {
      if (a == b) continue;
      const auto r0 = h.relation(a, b), r1 = h.relation(x, y);
      if (r0.adjacent != r1.adjacent || r0.arc != r1.arc) return false;
      if (h.spec().family == Family::Rationals && r0.order != r1.order) return false;
    }
  return true;
}

void criterion_disjoint(Tally& t, std::uint64_t seed) {
  struct Combo {
    const char* family;
    bool shift;
  };
  const Combo combos[] = {{"pure-set", true},     {"pure-set", false}, {"rationals", true},
                          {"random-graph", false}, {"henson(3)", false}, {"random-tournament", false}};
  std::mt19937_64 rng(seed * 3 + 1);
  for (std::size_t i = 0; i < 200; ++i) {
    const auto& c = combos[i % 6];
    LimitHandle h(LimitSpec::parse(c.family, seed + i));
    h.materialize(30);
    auto g = c.shift ? AutoHandle::canonical(h, AutoKind::Shift)
                     : AutoHandle::seeded(h, seed * 31 + i, Level::Base, true);
    const auto A = random_subset(rng, (i / 6) % 7, 30);
    std::string label = std::string(c.family) + (c.shift ? " shift" : " seeded") + " |A|=" +
                        std::to_string(A.size());
    try {
      const auto w = disjoint_copy(h, g, A, {seed + i});
      t.check(copy_ok(h, g, w.map, A.size()), label);
    } catch (const std::exception& e) {
      t.check(false, label + ": " + e.what());
    }
  }
}

void criterion_conjugate(Tally& t, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 5 + 2);
  for (std::size_t i = 0; i < 100; ++i) {
    const char* family = i % 2 ? "random-graph" : "pure-set";
    LimitHandle h(LimitSpec::parse(family, seed + i));
    h.materialize(30);
    auto sigma = AutoHandle::canonical(h, AutoKind::OrderReversal, seed + i);
    auto A = random_subset(rng, 1 + i % 8, 30);
    const std::string label = std::string(family) + " |A|=" + std::to_string(A.size());
    try {
      const auto w = conjugate_order_preserving(h, sigma, A, {seed + i});
      std::sort(A.begin(), A.end(),
                [&](Vertex a, Vertex b) { return h.meta(a).coord < h.meta(b).coord; });
      bool ok = true;
      std::optional<Rational> last;
      for (auto a : A) {
        const auto pre = w.map.preimage(a);
        const auto z = pre ? w.map.image(sigma.image(*pre)) : std::nullopt;
        if (!z) {
          ok = false;
          break;
        }
        if (last && !(*last < h.meta(*z).coord)) ok = false;
        last = h.meta(*z).coord;
      }
      t.check(ok, label);
    } catch (const std::exception& e) {
      t.check(false, label + ": " + e.what());
    }
  }
}

void criterion_s2(Tally& t, std::uint64_t seed) {
  const Rational zero(0), half(1, 2), one(1);
  t.check(!s2_arc(zero, 0, one, 0), "(0,P0),(1,P0) gives 1 -> 0");
  t.check(s2_arc(zero, 0, half, 1), "(0,P0),(1/2,P1) gives 0 -> 1/2");
  t.check(s2_arc(zero, 0, half, 1) && s2_arc(half, 1, one, 0) && s2_arc(one, 0, zero, 0),
          "(0,P0),(1/2,P1),(1,P0) is the 3-cycle 0 -> 1/2 -> 1 -> 0");
  for (const auto* proc : {"s2-monotone-copy", "s2-conjugate-parts"}) {
    const auto r = run_procedure(proc, "s2", seed, 100);
    t.check(r.pass(), std::string(proc) + " " + std::to_string(r.failures) + " failures");
  }
  const auto r = run_procedure("s2-part-action", "s2", seed, 10);
  t.check(r.pass(), "part action classification " + r.details.dump());
}

void criterion_catalog(Tally& t, std::uint64_t seed) {
  const auto q = run_procedure("part-action-quotient", "In-Kinf(3)", seed, 50);
  t.check(q.pass(), "quotient homomorphism on 50 pairs");
  const auto k = run_procedure("kernel-factorization", "In-Kinf(3)", seed, 20);
  t.check(k.pass(), "kernel factorization within 16 conjugates");
  std::vector<std::string> bad;
  const bool consistent = catalog_consistent(&bad);
  t.check(consistent, bad.empty() ? "catalogue consistency" : bad.front());
}

void criterion_betweenness(Tally& t, std::uint64_t seed) {
  for (const auto* family : {"pure-set", "random-graph"}) {
    const auto r = run_procedure("betweenness-invariance", family, seed, 100);
    t.check(r.pass(), std::string(family) + " " + std::to_string(r.failures) + " failures");
  }
}

void criterion_chain(Tally& t, std::uint64_t seed) {
  for (const auto* family : {"rationals", "random-graph"}) {
    const auto r = run_procedure("chain-condition", family, seed, 50);
    t.check(r.pass(), std::string(family) + " " + r.details.dump());
  }
}

struct Criterion {
  const char* name;
  double limit;
  std::function<void(Tally&, std::uint64_t)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"amalgamation by brute force", 60, [](Tally& t, std::uint64_t) { criterion_ap(t); }},
      {"limit integrity", 60, criterion_limits},
      {"extension axioms", 30, criterion_extension},
      {"disjoint copies", 60, criterion_disjoint},
      {"order-preserving conjugates", 60, criterion_conjugate},
      {"dense local order", 60, criterion_s2},
      {"catalogue evidence", 60, criterion_catalog},
      {"betweenness invariance", 5, criterion_betweenness},
      {"chain condition", 30, criterion_chain},
  };
  return all;
}

}  // namespace

int criterion_count() { return static_cast<int>(criteria().size()); }

std::vector<CriterionResult> run_suite(std::uint64_t seed, int only) {
  if (only < 0 || only > criterion_count())
    throw PreconditionError("criterion index out of range: " + std::to_string(only));
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count(); ++id) {
    if (only && id != only) continue;
    const auto& c = criteria()[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = c.name;
    r.limit_seconds = c.limit;
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(t, seed);
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = t.pass();
    r.detail = t.detail();
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  auto list = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"verdict", r.pass ? "pass" : "fail"},
                    {"runtime_seconds", r.seconds},
                    {"target_seconds", r.limit_seconds},
                    {"detail", r.detail}});
  }
  return {{"suite", "all"}, {"seed", seed}, {"criteria", list}, {"verdict", all ? "pass" : "fail"}};
}

std::string summary_line(const CriterionResult& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.2f s", r.seconds);
  return "criterion " + std::to_string(r.id) + " [" + (r.pass ? "PASS" : "FAIL") + "] " + r.name +
         " (" + time + "): " + r.detail;
}

}  // namespace homog
