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


#include "homog/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "homog/errors.hpp"
#include "homog/fraisse.hpp"
#include "homog/witnesses.hpp"

namespace homog {

namespace {

const std::vector<std::string> kOrderEvidence = {"disjoint-copy", "conjugate-order-preserving",
                                                 "betweenness-invariance"};

CatalogEntry order_row(std::string structure, std::string group, std::string structure_symbol) {
  CatalogEntry e;
  e.structure = std::move(structure);
  e.G = std::move(group);
  e.G_star = "Aut(" + structure_symbol + ", <) for a generic linear order <";
  e.N_G_star = "Aut(" + structure_symbol + ", B) with B the betweenness relation of <";
  e.normal_closure = "G";
  e.M_flow = "LO(" + structure_symbol + "): linear orders on the domain, logic action";
  e.Pi_flow = "betweenness relations on the domain, logic action";
  e.B_flow = "trivial";
  e.evidence = kOrderEvidence;
  return e;
}

}  // namespace

nlohmann::json to_json(const CatalogEntry& e) {
  nlohmann::json j = {{"structure", e.structure},
                      {"data_only", e.data_only},
                      {"G", e.G},
                      {"G_star", e.G_star},
                      {"N_G_star", e.N_G_star},
                      {"normal_closure", e.normal_closure},
                      {"M_flow", e.M_flow},
                      {"Pi_flow", e.Pi_flow},
                      {"B_flow", e.B_flow},
                      {"evidence", e.evidence}};
  j["B_finite"] = e.B_finite ? nlohmann::json(*e.B_finite) : nlohmann::json(nullptr);
  return j;
}

CatalogEntry get_entry(std::string_view name) {
  if (name == "rational-urysohn") {
    auto e = order_row("rational-urysohn", "Aut(U_Q), isometries of the rational Urysohn space",
                       "U_Q");
    e.data_only = true;
    e.evidence.clear();
    return e;
  }
  const auto spec = LimitSpec::parse(name);
  const auto n = std::to_string(spec.param);
  switch (spec.family) {
    case Family::PureSet:
      return order_row(spec.name(), "S_inf", "N");
    case Family::Rationals: {
      CatalogEntry e;
      e.structure = spec.name();
      e.G = "Aut(Q, <)";
      e.G_star = "G";
      e.N_G_star = "G";
      e.normal_closure = "G";
      e.M_flow = "trivial";
      e.Pi_flow = "trivial";
      e.B_flow = "trivial";
      e.evidence = {"chain-condition", "disjoint-copy"};
      return e;
    }
    case Family::RandomGraph: {
      auto e = order_row(spec.name(), "Aut(R)", "R");
      e.evidence.push_back("chain-condition");
      return e;
    }
    case Family::Henson:
      return order_row(spec.name(), "Aut(H_" + n + ")", "H_" + n);
    case Family::RandomTournament:
      return order_row(spec.name(), "Aut(T)", "T");
    case Family::S2: {
      CatalogEntry e;
      e.structure = spec.name();
      e.G = "Aut(S(2))";
      e.G_star = "Aut(S(2), P0, P1), P0 and P1 the two dense parts";
      e.N_G_star = "Aut(S(2), E) with E the equivalence relation of the partition {P0, P1}";
      e.normal_closure = "G";
      e.M_flow = "orbit closure of the partition (P0, P1)";
      e.Pi_flow = "orbit closure of the equivalence relation E";
      e.B_flow = "trivial";
      e.evidence = {"s2-monotone-copy", "s2-conjugate-parts", "s2-part-action"};
      return e;
    }
    case Family::InKinf: {
      CatalogEntry e;
      e.structure = spec.name();
      e.G = "S_" + n + " ⋉ S_inf^" + n;
      e.G_star = "{e} × Aut(Q, <)^" + n;
      e.N_G_star = "S_" + n + " ⋉ Aut(Q, B)^" + n + " with B the betweenness relation of <";
      e.normal_closure = "{e} × S_inf^" + n;
      e.M_flow = "labellings of the " + n + " cliques by 1.." + n +
                 " together with a linear order on each clique";
      e.Pi_flow = "a betweenness relation on each clique";
      e.B_flow = "S_" + n;
      e.B_finite = "symmetric group on " + n + " letters";
      e.evidence = {"part-action-quotient", "kernel-factorization", "clique-structure"};
      return e;
    }
    case Family::IinfKn: {
      CatalogEntry e;
      e.structure = spec.name();
      e.G = "S_inf ⋉ S_" + n + "^N";
      e.G_star = "Aut(Q, <) × {e}";
      e.N_G_star = "not recorded";
      e.normal_closure = "G";
      e.M_flow = "convex linear orders of the cliques with positions labelled inside each clique";
      e.Pi_flow = "not recorded";
      e.B_flow = "trivial";
      e.evidence = {"clique-structure"};
      return e;
    }
    case Family::IinfKinf: {
      CatalogEntry e;
      e.structure = spec.name();
      e.G = "S_inf ⋉ S_inf^Q";
      e.G_star = "Aut(Q, <) ⋉ Aut(Q, <)^Q";
      e.N_G_star = "not recorded";
      e.normal_closure = "G";
      e.M_flow = "convex linear orders: the cliques ordered, and each clique ordered";
      e.Pi_flow = "not recorded";
      e.B_flow = "trivial";
      e.evidence = {"clique-structure"};
      return e;
    }
  }
  throw PreconditionError("unknown catalogue entry: " + std::string(name));
}

std::vector<std::string> catalog_names() {
  return {"pure-set",  "rationals",  "random-graph", "henson(3)", "random-tournament", "s2",
          "In-Kinf(3)", "Iinf-Kn(2)", "Iinf-Kinf",    "rational-urysohn"};
}

std::optional<std::string> quotient_descriptor(const CatalogEntry& e) {
  if (e.normal_closure == "G" || e.normal_closure == e.G) return "trivial";
  const std::string semi = " ⋉ ";
  const auto at = e.G.find(semi);
  if (at == std::string::npos) return std::nullopt;
  const auto top = e.G.substr(0, at), bottom = e.G.substr(at + semi.size());
  if (e.normal_closure == "{e} × " + bottom) return top;
  return std::nullopt;
}

bool catalog_consistent(std::vector<std::string>* mismatches) {
  bool ok = true;
  for (const auto& name : catalog_names()) {
    const auto e = get_entry(name);
    const auto q = quotient_descriptor(e);
    if (!q || *q != e.B_flow) {
      ok = false;
      if (mismatches)
        mismatches->push_back(name + ": B_flow '" + e.B_flow + "' vs G/closure '" +
                              q.value_or("?") + "'");
    }
  }
  return ok;
}

// ---------------------------------------------------------------------------
// part action

Permutation compose(const Permutation& after, const Permutation& first) {
  if (after.size() != first.size()) throw PreconditionError("compose: sizes differ");
  Permutation out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = after[first[i]];
  return out;
}

Permutation part_action_quotient(LimitHandle& h, const PartialAuto& g) {
  if (h.spec().family != Family::InKinf)
    throw PreconditionError("part_action_quotient: needs an In-Kinf(n) limit");
  const int n = h.spec().param;
  Permutation p(n, -1);
  for (auto [x, y] : g.map()) {
    const int a = h.meta(x).part, b = h.meta(y).part;
    if (p[a] >= 0 && p[a] != b)
      throw CertificationError("part_action_quotient: clique " + std::to_string(a) +
                               " is sent to two cliques");
    p[a] = b;
  }
  std::vector<int> hit(n, 0);
  int missing = -1, unknown = 0;
  for (int i = 0; i < n; ++i) {
    if (p[i] < 0) {
      ++unknown;
      missing = i;
    } else if (hit[p[i]]++) {
      throw CertificationError("part_action_quotient: two cliques are merged");
    }
  }
  if (unknown > 1)
    throw PreconditionError("part_action_quotient: the sample misses " + std::to_string(unknown) +
                            " cliques");
  if (unknown == 1)
    p[missing] = static_cast<int>(std::find(hit.begin(), hit.end(), 0) - hit.begin());
  return p;
}

Permutation part_action_quotient(AutoHandle& g, std::size_t sample) {
  auto& h = g.limit();
  if (h.spec().family != Family::InKinf)
    throw PreconditionError("part_action_quotient: needs an In-Kinf(n) limit");
  std::set<int> seen;
  std::vector<Vertex> on;
  for (Vertex v = 0; v < sample || static_cast<int>(seen.size()) < h.spec().param; ++v) {
    on.push_back(v);
    seen.insert(h.meta(v).part);
  }
  return part_action_quotient(h, g.restrict_to(on));
}

// ---------------------------------------------------------------------------
// evidence

bool EvidenceRecord::pass() const {
  return std::all_of(procedures.begin(), procedures.end(), [](const auto& p) { return p.pass(); });
}

nlohmann::json to_json(const EvidenceRecord& r) {
  auto procs = nlohmann::json::array();
  for (const auto& p : r.procedures)
    procs.push_back({{"procedure", p.procedure},
                     {"samples", p.samples},
                     {"failures", p.failures},
                     {"verdict", p.pass() ? "pass" : "fail"},
                     {"details", p.details}});
  return {{"entry", r.entry},
          {"seed", r.seed},
          {"procedures", procs},
          {"verdict", r.pass() ? "pass" : "fail"}};
}

namespace {

constexpr std::size_t kKeptReports = 2;

std::vector<Vertex> random_subset(std::mt19937_64& rng, std::size_t k, Vertex range) {
  std::vector<Vertex> all(range);
  for (Vertex i = 0; i < range; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min<std::size_t>(k, range));
  return all;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Runs body once per sample; an exception or a false return is a failure.
ProcedureResult sampled(std::string name, std::size_t samples,
                        const std::function<bool(std::size_t, nlohmann::json&)>& body) {
  ProcedureResult r;
  r.procedure = std::move(name);
  r.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    nlohmann::json note;
    bool ok = false;
    try {
      ok = body(i, note);
    } catch (const std::exception& e) {
      note = {{"sample", i}, {"error", e.what()}};
    }
    if (!ok) {
      ++r.failures;
      if (note.is_null()) note = {{"sample", i}, {"error", "check failed"}};
      r.details.push_back(note);
    } else if (i < kKeptReports && !note.is_null()) {
      r.details.push_back(note);
    }
  }
  return r;
}

bool is_order_family(Family f) { return has_free_order_expansion(f); }

ProcedureResult disjoint_copy_evidence(const LimitSpec& spec, std::size_t samples) {
  return sampled("disjoint-copy", samples, [&](std::size_t i, nlohmann::json& note) {
    LimitHandle h(LimitSpec::parse(spec.name(), spec.seed + i));
    h.materialize(30);
    std::mt19937_64 rng(spec.seed * 1000003 + i);
    const bool shift = (spec.family == Family::PureSet && i % 2 == 0) ||
                       spec.family == Family::Rationals;
    auto g = shift ? AutoHandle::canonical(h, AutoKind::Shift)
                   : AutoHandle::seeded(h, spec.seed + 17 * i, Level::Base, true);
    const auto A = random_subset(rng, uniform(rng, 0, 6), 30);
    const auto w = disjoint_copy(h, g, A, {spec.seed + i});
    // Independent re-check with raw relation queries.
    std::set<Vertex> img;
    for (auto [a, x] : w.map.map()) img.insert(x);
    bool ok = img.size() == A.size();
    for (auto x : img) ok = ok && !img.count(g.image(x));
    for (auto [a, x] : w.map.map())
      for (auto [b, y] : w.map.map())
        if (a != b) {
          const auto r0 = h.relation(a, b), r1 = h.relation(x, y);
          ok = ok && r0.adjacent == r1.adjacent && r0.arc == r1.arc &&
               (spec.family != Family::Rationals || r0.order == r1.order);
        }
    note = to_json(w.report);
    return ok && w.report.all_pass();
  });
}

ProcedureResult conjugate_order_evidence(const LimitSpec& spec, std::size_t samples) {
  return sampled("conjugate-order-preserving", samples, [&](std::size_t i, nlohmann::json& note) {
    LimitHandle h(LimitSpec::parse(spec.name(), spec.seed + i));
    h.materialize(30);
    std::mt19937_64 rng(spec.seed * 1000033 + i);
    auto sigma = AutoHandle::canonical(h, AutoKind::OrderReversal, spec.seed + i);
    auto A = random_subset(rng, uniform(rng, 1, 8), 30);
    const auto w = conjugate_order_preserving(h, sigma, A, {spec.seed + i});
    std::sort(A.begin(), A.end(),
              [&](Vertex a, Vertex b) { return h.meta(a).coord < h.meta(b).coord; });
    bool ok = true;
    std::optional<Rational> last;
    for (auto a : A) {
      const auto pre = w.map.preimage(a);
      const auto z = pre ? w.map.image(sigma.image(*pre)) : std::nullopt;
      if (!z) return false;
      if (last && !(*last < h.meta(*z).coord)) ok = false;
      last = h.meta(*z).coord;
    }
    note = to_json(w.report);
    return ok;
  });
}

ProcedureResult betweenness_evidence(const LimitSpec& spec, std::size_t samples) {
  LimitHandle h(spec);
  h.materialize(40);
  auto sigma = AutoHandle::canonical(h, AutoKind::OrderReversal, spec.seed);
  std::mt19937_64 rng(spec.seed * 7919 + 1);
  return sampled("betweenness-invariance", samples, [&](std::size_t, nlohmann::json&) {
    const auto t = random_subset(rng, 3, 40);
    const auto c = [&](Vertex v) { return h.meta(v).coord; };
    const bool before = betweenness(c(t[0]), c(t[1]), c(t[2]));
    const bool after = betweenness(c(sigma.image(t[0])), c(sigma.image(t[1])), c(sigma.image(t[2])));
    return before == after;
  });
}

ProcedureResult chain_evidence(const LimitSpec& spec, std::size_t samples) {
  ProcedureResult r;
  r.procedure = "chain-condition";
  r.samples = samples;
  try {
    std::mt19937_64 rng(spec.seed * 31 + 5);
    const bool rationals = spec.family == Family::Rationals;
    LimitHandle h(LimitSpec::parse(spec.name(), spec.seed, rationals ? Expansion::None
                                                                     : Expansion::Order));
    h.materialize(40);
    Vertex u = 0, v = 0;
    std::size_t max_len = 4;
    if (rationals) {
      u = h.vertex_at(Rational(0));
      v = h.vertex_at(Rational(1));
      max_len = 2;
    } else {
      bool found = false;
      for (Vertex a = 0; a < 40 && !found; ++a)
        for (Vertex b = 0; b < 40 && !found; ++b)
          if (a != b && h.meta(a).coord < h.meta(b).coord && h.relation(a, b).adjacent) {
            u = a;
            v = b;
            found = true;
          }
      if (!found) throw SearchExhausted("no increasing edge among the first 40 vertices");
    }
    std::vector<VertexPair> pairs;
    while (pairs.size() < samples) {
      auto xy = random_subset(rng, 2, 40);
      if (h.meta(xy[1]).coord < h.meta(xy[0]).coord) std::swap(xy[0], xy[1]);
      pairs.push_back({xy[0], xy[1]});
    }
    const auto rep = check_chain_condition(h, u, v, pairs, max_len);
    r.failures = rep.failures.size();
    for (const auto& f : rep.failures) r.details.push_back(f);
    if (!rep.holds() && r.failures == 0) r.failures = 1;
    std::size_t longest = 0;
    for (const auto& c : rep.chains) longest = std::max(longest, c.size());
    r.details.push_back({{"u", u}, {"v", v}, {"max_len", max_len}, {"longest", longest}});
  } catch (const std::exception& e) {
    r.failures = std::max<std::size_t>(1, r.failures);
    r.details.push_back(e.what());
  }
  return r;
}

ProcedureResult s2_monotone_evidence(const LimitSpec& spec, std::size_t samples) {
  return sampled("s2-monotone-copy", samples, [&](std::size_t i, nlohmann::json& note) {
    LimitHandle h(LimitSpec::parse("s2", spec.seed + i));
    h.materialize(30);
    std::mt19937_64 rng(spec.seed * 104729 + i);
    auto sigma = AutoHandle::canonical(h, AutoKind::PartSwap, spec.seed + i);
    const auto A = random_subset(rng, uniform(rng, 0, 5), 30);
    const auto w = s2_monotone_copy(sigma, A, {spec.seed + i});
    std::vector<Rational> a, b;
    for (auto [x, y] : w.map.map()) {
      if (h.meta(x).part != h.meta(y).part) return false;
      a.push_back(h.meta(y).coord);
      b.push_back(h.meta(sigma.image(y)).coord);
    }
    note = to_json(w.report);
    if (a.empty()) return A.empty();
    return *std::max_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end()) ||
           *std::max_element(b.begin(), b.end()) < *std::min_element(a.begin(), a.end());
  });
}

ProcedureResult s2_conjugate_evidence(const LimitSpec& spec, std::size_t samples) {
  return sampled("s2-conjugate-parts", samples, [&](std::size_t i, nlohmann::json& note) {
    LimitHandle h(LimitSpec::parse("s2", spec.seed + i));
    h.materialize(30);
    std::mt19937_64 rng(spec.seed * 1299709 + i);
    auto sigma = AutoHandle::canonical(h, AutoKind::PartSwap, spec.seed + i);
    const auto A = random_subset(rng, uniform(rng, 0, 5), 30);
    const auto w = s2_conjugate_parts(sigma, A, {spec.seed + i});
    for (auto a : A) {
      const auto pre = w.map.preimage(a);
      const auto z = pre ? w.map.image(sigma.image(*pre)) : std::nullopt;
      if (!z || h.meta(*z).part != h.meta(a).part) return false;
    }
    note = to_json(w.report);
    return true;
  });
}

ProcedureResult s2_part_action_evidence(const LimitSpec& spec, std::size_t samples) {
  return sampled("s2-part-action", samples, [&](std::size_t i, nlohmann::json& note) {
    LimitHandle h(LimitSpec::parse("s2", spec.seed + i));
    std::vector<Vertex> sample(30);
    for (Vertex v = 0; v < 30; ++v) sample[v] = v;
    auto id = AutoHandle::canonical(h, AutoKind::Identity);
    auto swap = AutoHandle::canonical(h, AutoKind::PartSwap, spec.seed + i);
    auto base = AutoHandle::seeded(h, spec.seed + i, Level::Base);
    const auto a = preserves_parts(id, sample), b = preserves_parts(swap, sample),
               c = preserves_parts(base, sample);
    note = {{"identity", part_action_name(a)},
            {"part-swap", part_action_name(b)},
            {"base-seeded", part_action_name(c)}};
    return a == PartAction::PreservesEach && b == PartAction::Swaps && c == PartAction::Mixed;
  });
}

PartialAuto sample_map(AutoHandle& g, std::span<const Vertex> on) { return g.restrict_to(on); }

ProcedureResult quotient_evidence(const LimitSpec& spec, std::size_t samples) {
  return sampled("part-action-quotient", samples, [&](std::size_t i, nlohmann::json& note) {
    LimitHandle h(LimitSpec::parse(spec.name(), spec.seed));
    h.materialize(30);
    std::vector<Vertex> on(30);
    for (Vertex v = 0; v < 30; ++v) on[v] = v;
    auto g = AutoHandle::seeded(h, spec.seed * 2 + 2 * i + 1, Level::Base);
    auto f = AutoHandle::seeded(h, spec.seed * 2 + 2 * i + 2, Level::Base);
    const auto pf = sample_map(f, on);
    const auto fon = pf.range();
    const auto pg = sample_map(g, fon);
    const auto gf = pf.then(pg);
    const auto qg = part_action_quotient(h, pg), qf = part_action_quotient(h, pf);
    const auto qgf = part_action_quotient(h, gf);
    const auto qid = part_action_quotient(h, PartialAuto::identity(Level::Base, on));
    Permutation identity(qid.size());
    for (std::size_t k = 0; k < identity.size(); ++k) identity[k] = static_cast<int>(k);
    note = {{"g", qg}, {"f", qf}, {"gf", qgf}};
    return qgf == compose(qg, qf) && qid == identity;
  });
}

ProcedureResult kernel_evidence(const LimitSpec& spec, std::size_t samples) {
  return sampled("kernel-factorization", samples, [&](std::size_t i, nlohmann::json& note) {
    LimitHandle h(LimitSpec::parse(spec.name(), spec.seed + i));
    h.materialize(40);
    std::mt19937_64 rng(spec.seed * 15485863 + i);
    const auto sample = random_subset(rng, uniform(rng, 1, 8), 40);
    std::map<int, std::vector<Vertex>> by_part;
    for (auto v : sample) by_part[h.meta(v).part].push_back(v);
    PartialAuto target(Level::Base);
    for (auto& [p, vs] : by_part) {
      auto img = vs;
      std::shuffle(img.begin(), img.end(), rng);
      for (std::size_t k = 0; k < vs.size(); ++k) target.set(vs[k], img[k]);
    }
    const auto w = factor_via_conjugates(h, target, 16, {spec.seed + i});
    for (auto [x, y] : target.map())
      if (w.word.evaluate(x) != y) return false;
    note = to_json(w.report);
    return w.word.length() <= 16;
  });
}

ProcedureResult clique_evidence(const LimitSpec& spec, std::size_t samples) {
  return sampled("clique-structure", samples, [&](std::size_t i, nlohmann::json& note) {
    LimitHandle h(LimitSpec::parse(spec.name(), spec.seed + i));
    h.materialize(60);
    std::map<int, std::size_t> sizes;
    for (Vertex a = 0; a < 60; ++a) {
      ++sizes[h.meta(a).part];
      for (Vertex b = a + 1; b < 60; ++b)
        if (h.relation(a, b).adjacent != (h.meta(a).part == h.meta(b).part)) return false;
    }
    note = {{"cliques", sizes.size()}};
    if (spec.family == Family::IinfKn)
      for (auto [p, s] : sizes)
        if (s > static_cast<std::size_t>(spec.param)) return false;
    if (spec.family == Family::InKinf) return sizes.size() <= static_cast<std::size_t>(spec.param);
    return true;
  });
}

}  // namespace

std::vector<std::string> procedure_names() {
  return {"disjoint-copy",      "conjugate-order-preserving", "betweenness-invariance",
          "chain-condition",    "s2-monotone-copy",           "s2-conjugate-parts",
          "s2-part-action",     "part-action-quotient",       "kernel-factorization",
          "clique-structure"};
}

ProcedureResult run_procedure(std::string_view procedure, std::string_view structure,
                              std::uint64_t seed, std::size_t samples) {
  const auto spec = LimitSpec::parse(structure, seed);
  const auto f = spec.family;
  auto need = [&](bool ok) {
    if (!ok)
      throw PreconditionError("procedure " + std::string(procedure) + " does not apply to " +
                              spec.name());
  };
  if (procedure == "disjoint-copy") {
    need(is_order_family(f) || f == Family::Rationals);
    return disjoint_copy_evidence(spec, samples);
  }
  if (procedure == "conjugate-order-preserving") {
    need(is_order_family(f));
    return conjugate_order_evidence(spec, samples);
  }
  if (procedure == "betweenness-invariance") {
    need(is_order_family(f));
    return betweenness_evidence(spec, samples);
  }
  if (procedure == "chain-condition") {
    need(f == Family::Rationals || f == Family::RandomGraph);
    return chain_evidence(spec, samples);
  }
  if (procedure == "s2-monotone-copy") {
    need(f == Family::S2);
    return s2_monotone_evidence(spec, samples);
  }
  if (procedure == "s2-conjugate-parts") {
    need(f == Family::S2);
    return s2_conjugate_evidence(spec, samples);
  }
  if (procedure == "s2-part-action") {
    need(f == Family::S2);
    return s2_part_action_evidence(spec, samples);
  }
  if (procedure == "part-action-quotient") {
    need(f == Family::InKinf);
    return quotient_evidence(spec, samples);
  }
  if (procedure == "kernel-factorization") {
    need(f == Family::InKinf);
    return kernel_evidence(spec, samples);
  }
  if (procedure == "clique-structure") {
    need(spec.is_composite());
    return clique_evidence(spec, samples);
  }
  throw PreconditionError("unknown evidence procedure: " + std::string(procedure));
}

EvidenceRecord run_evidence(const CatalogEntry& e, std::uint64_t seed, std::size_t samples) {
  EvidenceRecord r;
  r.entry = e.structure;
  r.seed = seed;
  for (const auto& p : e.evidence) {
    try {
      r.procedures.push_back(run_procedure(p, e.structure, seed, samples));
    } catch (const std::exception& ex) {
      ProcedureResult failed;
      failed.procedure = p;
      failed.samples = samples;
      failed.failures = 1;
      failed.details.push_back(ex.what());
      r.procedures.push_back(std::move(failed));
    }
  }
  return r;
}

}  // namespace homog
