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

#include "homog/limits.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "homog/errors.hpp"
#include "homog/hash.hpp"
#include "homog/structure_io.hpp"

namespace homog {

namespace {

constexpr std::uint64_t kSaltEdge = 1;
constexpr std::uint64_t kSaltSlot = 2;
constexpr std::uint64_t kSaltPart = 3;
constexpr std::uint64_t kSaltScan = 4;

bool is_graph_family(Family f) { return f == Family::RandomGraph || f == Family::Henson; }
bool is_tournament_family(Family f) { return f == Family::RandomTournament || f == Family::S2; }

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// names

std::string LimitSpec::name() const {
  switch (family) {
    case Family::PureSet:
      return "pure-set";
    case Family::Rationals:
      return "rationals";
    case Family::RandomGraph:
      return "random-graph";
    case Family::Henson:
      return "henson(" + std::to_string(param) + ")";
    case Family::RandomTournament:
      return "random-tournament";
    case Family::S2:
      return "s2";
    case Family::InKinf:
      return "In-Kinf(" + std::to_string(param) + ")";
    case Family::IinfKn:
      return "Iinf-Kn(" + std::to_string(param) + ")";
    case Family::IinfKinf:
      return "Iinf-Kinf";
  }
  return "?";
}

LimitSpec LimitSpec::parse(std::string_view name, std::uint64_t seed, Expansion expansion) {
  auto with_param = [&](std::string_view prefix, int& out) {
    if (name.substr(0, prefix.size()) != prefix || name.back() != ')') return false;
    const auto inner = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    if (inner.empty() || inner.size() > 6) throw PreconditionError("bad parameter in " + std::string(name));
    out = 0;
    for (char c : inner) {
      if (c < '0' || c > '9') throw PreconditionError("bad parameter in " + std::string(name));
      out = out * 10 + (c - '0');
    }
    return true;
  };

  LimitSpec s;
  s.seed = seed;
  s.expansion = expansion;
  if (name == "pure-set") {
    s.family = Family::PureSet;
  } else if (name == "rationals") {
    s.family = Family::Rationals;
  } else if (name == "random-graph") {
    s.family = Family::RandomGraph;
  } else if (name == "henson") {
    s.family = Family::Henson;
    s.param = 3;
  } else if (with_param("henson(", s.param)) {
    s.family = Family::Henson;
  } else if (name == "random-tournament") {
    s.family = Family::RandomTournament;
  } else if (name == "s2") {
    s.family = Family::S2;
  } else if (with_param("In-Kinf(", s.param)) {
    s.family = Family::InKinf;
  } else if (with_param("Iinf-Kn(", s.param)) {
    s.family = Family::IinfKn;
  } else if (name == "Iinf-Kinf") {
    s.family = Family::IinfKinf;
  } else {
    throw PreconditionError("unknown structure family: " + std::string(name));
  }
  return s;
}

std::string_view expansion_name(Expansion e) {
  switch (e) {
    case Expansion::None:
      return "none";
    case Expansion::Order:
      return "order";
    case Expansion::OrderParts:
      return "order+parts";
  }
  return "?";
}

Expansion parse_expansion(std::string_view name) {
  for (auto e : {Expansion::None, Expansion::Order, Expansion::OrderParts})
    if (expansion_name(e) == name) return e;
  throw PreconditionError("unknown expansion: " + std::string(name));
}

std::string_view level_name(Level level) {
  switch (level) {
    case Level::Base:
      return "base";
    case Level::Ordered:
      return "ordered";
    case Level::Expanded:
      return "expanded";
  }
  return "?";
}

Level star_level(Family family) {
  switch (family) {
    case Family::S2:
    case Family::InKinf:
    case Family::IinfKn:
    case Family::IinfKinf:
      return Level::Expanded;
    default:
      return Level::Ordered;
  }
}

PairRelation PairRelation::flipped() const {
  PairRelation r = *this;
  r.arc = !arc;
  r.order = -order;
  std::swap(r.part_first, r.part_second);
  return r;
}

bool s2_arc(const Rational& x, int part_x, const Rational& y, int part_y) {
  if (x == y) throw PreconditionError("s2_arc: equal rationals");
  // Base convention: y -> x iff x < y. Pairs across the two parts are reversed.
  const bool base_x_to_y = y < x;
  return part_x == part_y ? base_x_to_y : !base_x_to_y;
}

// ---------------------------------------------------------------------------
// LimitHandle: construction and default growth

LimitHandle::LimitHandle(LimitSpec spec, std::size_t budget) : spec_(spec), budget_(budget) {
  if (spec_.family == Family::Henson && spec_.param < 3)
    throw PreconditionError("henson(k) requires k >= 3");
  if ((spec_.family == Family::InKinf || spec_.family == Family::IinfKn) && spec_.param < 1)
    throw PreconditionError(spec_.name() + " requires n >= 1");
  if (spec_.expansion == Expansion::OrderParts && !has_parts() && !spec_.is_composite())
    throw PreconditionError("part expansion is only available for s2 and the composite families");
  if (spec_.family == Family::S2) part_sizes_.assign(2, 0);
  if (spec_.family == Family::InKinf) part_sizes_.assign(static_cast<std::size_t>(spec_.param), 0);
}

bool LimitHandle::has_parts() const {
  return spec_.family == Family::S2 || spec_.family == Family::InKinf;
}

bool LimitHandle::convex_blocks() const {
  return spec_.family == Family::IinfKn || spec_.family == Family::IinfKinf;
}

int LimitHandle::part_count() const { return static_cast<int>(part_sizes_.size()); }

void LimitHandle::check_budget(std::size_t extra) const {
  if (verts_.size() + extra > budget_)
    throw BudgetExceeded("stage budget of " + std::to_string(budget_) + " vertices exceeded");
}

void LimitHandle::materialize(std::size_t n) {
  if (n > budget_)
    throw BudgetExceeded("stage budget of " + std::to_string(budget_) + " vertices exceeded");
  while (verts_.size() < n) materialize_default();
}

void LimitHandle::ensure(Vertex v) { materialize(std::size_t{v} + 1); }

Vertex LimitHandle::push(Record rec) {
  check_budget(1);
  const auto v = static_cast<Vertex>(verts_.size());
  auto& m = rec.meta;
  if (!by_coord_.emplace(m.coord, v).second)
    throw Error("internal: duplicate coordinate " + to_string(m.coord));
  if (m.part >= 0) {
    if (static_cast<std::size_t>(m.part) >= part_sizes_.size()) part_sizes_.resize(m.part + 1, 0);
    m.inner = part_sizes_[m.part]++;
    // A part's place in the convex order is the coordinate of its first vertex.
    if (static_cast<std::size_t>(m.part) >= part_key_.size()) part_key_.resize(m.part + 1);
    if (m.inner == 0) part_key_[m.part] = m.coord;
  }
  if (spec_.family == Family::Henson) {
    henson_adj_.emplace_back();
    for (auto [i, b] : rec.overrides) {
      if (!b) continue;
      henson_adj_[i].push_back(v);
      henson_adj_[v].push_back(i);
    }
  }
  verts_.push_back(std::move(rec));
  return v;
}

// Default coordinates come in levels. Level 0 is {0}; level L adds one point
// below the current minimum, the midpoint of every gap, and one point above the
// maximum, filled in a seeded order. Every gap thus receives a point per level.
Rational LimitHandle::next_default_coordinate() {
  if (level_pos_ == level_points_.size()) {
    lattice_.insert(lattice_.end(), level_points_.begin(), level_points_.end());
    std::sort(lattice_.begin(), lattice_.end());
    std::vector<Rational> fresh;
    if (lattice_.empty()) {
      fresh.emplace_back(0);
    } else {
      fresh.push_back(lattice_.front() - 1);
      for (std::size_t i = 0; i + 1 < lattice_.size(); ++i)
        fresh.push_back(midpoint(lattice_[i], lattice_[i + 1]));
      fresh.push_back(lattice_.back() + 1);
    }
    const auto level = ++level_;
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(fresh.size());
    for (std::size_t i = 0; i < fresh.size(); ++i)
      keyed[i] = {keyed_hash(spec_.seed, level, i, kSaltSlot), i};
    std::sort(keyed.begin(), keyed.end());
    level_points_.clear();
    for (auto [key, i] : keyed) level_points_.push_back(fresh[i]);
    level_pos_ = 0;
  }
  const Rational& c = level_points_[level_pos_++];
  auto it = by_coord_.find(c);
  if (it == by_coord_.end()) return c;
  // Taken by a targeted vertex: step just above it instead.
  auto next = std::next(it);
  return fresh_between(c, next == by_coord_.end() ? std::nullopt : std::optional(next->first));
}

bool LimitHandle::contains_clique(std::vector<Vertex> cand, int size) const {
  if (size <= 0) return true;
  if (static_cast<int>(cand.size()) < size) return false;
  for (std::size_t a = 0; a < cand.size(); ++a) {
    std::vector<Vertex> next;
    for (std::size_t b = a + 1; b < cand.size(); ++b)
      if (adjacent(cand[a], cand[b])) next.push_back(cand[b]);
    if (contains_clique(std::move(next), size - 1)) return true;
  }
  return false;
}

void LimitHandle::materialize_default() {
  const auto v = static_cast<Vertex>(verts_.size());
  Record rec;
  rec.meta.coord = next_default_coordinate();

  switch (spec_.family) {
    case Family::S2:
      rec.meta.part = v == 0 ? 0 : 1 - verts_[v - 1].meta.part;
      break;
    case Family::InKinf:
      rec.meta.part = static_cast<int>(keyed_hash(spec_.seed, v, 0, kSaltPart) %
                                       static_cast<std::uint64_t>(spec_.param));
      break;
    case Family::IinfKn: {
      std::vector<int> open;
      for (std::size_t p = 0; p < part_sizes_.size(); ++p)
        if (part_sizes_[p] < static_cast<std::size_t>(spec_.param)) open.push_back(static_cast<int>(p));
      const auto pick = keyed_hash(spec_.seed, v, 0, kSaltPart) % (open.size() + 1);
      rec.meta.part = pick == open.size() ? static_cast<int>(part_sizes_.size()) : open[pick];
      break;
    }
    case Family::IinfKinf: {
      const auto parts = part_sizes_.size();
      rec.meta.part = static_cast<int>(keyed_hash(spec_.seed, v, 0, kSaltPart) % (parts + 1));
      break;
    }
    case Family::Henson: {
      // Greedy: keep a hashed edge to i unless it would close a K_k.
      std::vector<char> chosen(v, 0);
      std::vector<Vertex> chosen_list;
      for (Vertex i = 0; i < v; ++i) {
        if (!(keyed_hash(spec_.seed, i, v, kSaltEdge) & 1U)) continue;
        std::vector<Vertex> common;
        for (auto w : henson_adj_[i])
          if (w < v && chosen[w]) common.push_back(w);
        std::sort(common.begin(), common.end());
        if (contains_clique(std::move(common), spec_.param - 2)) continue;
        chosen[i] = 1;
        rec.overrides.emplace_back(i, 1);
      }
      break;
    }
    default:
      break;
  }
  push(std::move(rec));
}

// ---------------------------------------------------------------------------
// relation queries

bool LimitHandle::default_bit(Vertex i, Vertex j) const {
  if (spec_.family == Family::RandomGraph || spec_.family == Family::RandomTournament)
    return keyed_hash(spec_.seed, i, j, kSaltEdge) & 1U;
  return false;
}

bool LimitHandle::bit(Vertex i, Vertex j) const {
  const auto& ov = verts_[j].overrides;
  auto it = std::lower_bound(ov.begin(), ov.end(), std::pair<Vertex, std::uint8_t>{i, 0});
  if (it != ov.end() && it->first == i) return it->second != 0;
  return default_bit(i, j);
}

bool LimitHandle::adjacent(Vertex i, Vertex j) const {
  if (spec_.is_composite()) return verts_[i].meta.part == verts_[j].meta.part;
  if (!is_graph_family(spec_.family)) return false;
  return i < j ? bit(i, j) : bit(j, i);
}

const VertexMeta& LimitHandle::meta(Vertex v) {
  ensure(v);
  return verts_[v].meta;
}

PairRelation LimitHandle::relation(Vertex i, Vertex j) {
  if (i == j) throw PreconditionError("relation: vertices must differ");
  ensure(std::max(i, j));
  const auto& a = verts_[i].meta;
  const auto& b = verts_[j].meta;
  PairRelation r;
  r.order = a.coord < b.coord ? -1 : 1;
  r.part_first = a.part;
  r.part_second = b.part;
  switch (spec_.family) {
    case Family::RandomGraph:
    case Family::Henson:
    case Family::InKinf:
    case Family::IinfKn:
    case Family::IinfKinf:
      r.adjacent = adjacent(i, j);
      break;
    case Family::RandomTournament:
      r.arc = i < j ? bit(i, j) : !bit(j, i);
      break;
    case Family::S2:
      r.arc = s2_arc(a.coord, a.part, b.coord, b.part);
      break;
    default:
      break;
  }
  return r;
}

PairRelation LimitHandle::type_at(Level level, Vertex i, Vertex j) {
  const auto full = relation(i, j);
  PairRelation r;
  r.adjacent = full.adjacent;
  r.arc = full.arc;
  const bool ordered = level != Level::Base || spec_.family == Family::Rationals;
  if (ordered) r.order = full.order;
  if (level == Level::Expanded && has_parts()) {
    r.part_first = full.part_first;
    r.part_second = full.part_second;
    if (spec_.family == Family::InKinf && full.part_first != full.part_second)
      r.order = full.part_first < full.part_second ? -1 : 1;  // parts are convex blocks
  }
  if (level == Level::Expanded && convex_blocks()) {
    const auto& a = verts_[i].meta;
    const auto& b = verts_[j].meta;
    if (a.part != b.part)
      r.order = part_key_[a.part] < part_key_[b.part] ? -1 : 1;
    else if (spec_.family == Family::IinfKn)
      r.order = a.inner < b.inner ? -1 : 1;
    if (spec_.family == Family::IinfKn) {
      r.part_first = static_cast<int>(a.inner);
      r.part_second = static_cast<int>(b.inner);
    }
  }
  return r;
}

int LimitHandle::point_type(Level level, Vertex v) {
  if (level != Level::Expanded) return -1;
  if (has_parts()) return meta(v).part;
  // Finite cliques carry a position label; it is fixed at arrival.
  if (spec_.family == Family::IinfKn) return static_cast<int>(meta(v).inner);
  return -1;
}

std::pair<int, std::size_t> LimitHandle::composite_view(Vertex v) {
  if (!spec_.is_composite())
    throw PreconditionError("composite_view: " + spec_.name() + " is not a composite family");
  const auto& m = meta(v);
  return {m.part, m.inner};
}

// ---------------------------------------------------------------------------
// stages

Level LimitHandle::exported_level() const {
  switch (spec_.expansion) {
    case Expansion::None:
      return Level::Base;
    case Expansion::Order:
      return Level::Ordered;
    case Expansion::OrderParts:
      return Level::Expanded;
  }
  return Level::Base;
}

Signature LimitHandle::signature(Level level) const {
  std::vector<Symbol> syms;
  const auto f = spec_.family;
  if (is_graph_family(f) || spec_.is_composite()) syms.push_back({"E", RelationKind::GraphEdge});
  if (is_tournament_family(f)) syms.push_back({"T", RelationKind::TournamentArc});
  if (f == Family::Rationals || level != Level::Base) syms.push_back({"<", RelationKind::LinearOrder});
  if (level == Level::Expanded && has_parts()) {
    for (int p = 0; p < part_count(); ++p)
      syms.push_back({"P" + std::to_string(p), RelationKind::UnaryPart, true});
  }
  if (level == Level::Expanded && f == Family::IinfKn) {
    for (int p = 0; p < spec_.param; ++p)
      syms.push_back({"L" + std::to_string(p), RelationKind::UnaryPart, true});
  }
  return Signature(std::move(syms));
}

FinStructure LimitHandle::stage(std::size_t n) { return stage(n, exported_level()); }

FinStructure LimitHandle::stage(std::size_t n, Level level) {
  materialize(n);
  std::vector<Vertex> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = static_cast<Vertex>(i);
  return window(seq, level);
}

FinStructure LimitHandle::window(std::span<const Vertex> seq, Level level) {
  for (auto v : seq) ensure(v);
  const auto sig = signature(level);
  FinStructure::Builder b(sig, seq.size());
  const auto e = sig.find("E"), t = sig.find("T"), lt = sig.find("<");
  for (Vertex i = 0; i < seq.size(); ++i) {
    for (Vertex j = i + 1; j < seq.size(); ++j) {
      const auto r = type_at(level, seq[i], seq[j]);
      if (e && r.adjacent) b.connect(*e, i, j);
      if (t) r.arc ? b.relate(*t, i, j) : b.relate(*t, j, i);
      if (lt) r.order < 0 ? b.relate(*lt, i, j) : b.relate(*lt, j, i);
    }
    if (const int p = point_type(level, seq[i]); p >= 0)
      b.mark((has_parts() ? "P" : "L") + std::to_string(p), i);
  }
  return b.build();
}

nlohmann::json LimitHandle::stage_json(std::size_t n) {
  auto out = nlohmann::json::object();
  out["structure"] = to_json(stage(n));
  out["family"] = spec_.name();
  out["seed"] = spec_.seed;
  out["expansion"] = std::string(expansion_name(spec_.expansion));
  auto meta_list = nlohmann::json::array();
  for (Vertex v = 0; v < n; ++v) {
    const auto& m = verts_[v].meta;
    nlohmann::json j = {{"coord", to_string(m.coord)}};
    if (spec_.family == Family::S2) j["part"] = m.part;
    if (spec_.is_composite()) j["composite"] = {m.part, m.inner};
    meta_list.push_back(std::move(j));
  }
  out["meta"] = std::move(meta_list);
  return out;
}

// ---------------------------------------------------------------------------
// extension witnesses

void LimitHandle::check_request(const ExtensionRequest& req) const {
  const auto f = spec_.family;
  auto in_range = [&](const std::vector<Vertex>& vs) {
    for (auto v : vs)
      if (v >= verts_.size())
        throw PreconditionError("extension request references unmaterialized vertex " +
                                std::to_string(v));
  };
  for (const auto* vs : {&req.adjacent_to, &req.nonadjacent_to, &req.arc_from, &req.arc_to,
                         &req.above, &req.below, &req.exclude})
    in_range(*vs);

  const bool graphish = is_graph_family(f) || spec_.is_composite();
  if (!graphish && (!req.adjacent_to.empty() || !req.nonadjacent_to.empty()))
    throw PreconditionError("adjacency constraints do not apply to " + spec_.name());
  if (!is_tournament_family(f) && (!req.arc_from.empty() || !req.arc_to.empty()))
    throw PreconditionError("arc constraints do not apply to " + spec_.name());
  if (req.part && !has_parts() && !spec_.is_composite())
    throw PreconditionError("part constraints do not apply to " + spec_.name());
  if (req.part && f == Family::S2 && *req.part != 0 && *req.part != 1)
    throw PreconditionError("s2 parts are 0 and 1");
  if (req.below_all && req.above_all && !verts_.empty())
    throw PreconditionError("below-all and above-all together");

  auto disjoint = [](std::vector<Vertex> a, std::vector<Vertex> b) {
    a = sorted_unique(std::move(a));
    b = sorted_unique(std::move(b));
    std::vector<Vertex> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    return both.empty();
  };
  if (!disjoint(req.adjacent_to, req.nonadjacent_to) || !disjoint(req.arc_from, req.arc_to) ||
      !disjoint(req.above, req.below))
    throw PreconditionError("extension request has overlapping constraint sets");
}

bool LimitHandle::meets(Vertex x, const ExtensionRequest& req) {
  ensure(x);
  const auto& mx = verts_[x].meta;
  if (req.part) {
    if (*req.part == kNewPart || mx.part != *req.part) return false;
  }
  for (auto y : req.adjacent_to)
    if (y == x || !adjacent(x, y)) return false;
  for (auto y : req.nonadjacent_to)
    if (y == x || adjacent(x, y)) return false;
  for (auto y : req.arc_from)
    if (y == x || relation(y, x).arc == false) return false;
  for (auto y : req.arc_to)
    if (y == x || relation(x, y).arc == false) return false;
  for (auto y : req.above)
    if (y == x || !(verts_[y].meta.coord < mx.coord)) return false;
  for (auto y : req.below)
    if (y == x || !(mx.coord < verts_[y].meta.coord)) return false;
  return true;
}

namespace {

bool dyadic(const Rational& x) {
  const auto d = boost::multiprecision::denominator(x);
  return (d & (d - 1)) == 0;
}

}  // namespace

// Targeted coordinates are never dyadic, so they cannot collide with the
// default levels (which are all dyadic).
Rational LimitHandle::fresh_between(const std::optional<Rational>& lo,
                                    const std::optional<Rational>& hi) const {
  if (lo && hi && !(*lo < *hi)) throw Unsatisfiable("empty order interval");
  std::optional<Rational> a = lo, b = hi;
  if (a) {
    auto nxt = by_coord_.upper_bound(*a);
    if (nxt != by_coord_.end() && (!b || nxt->first < *b)) b = nxt->first;
  } else if (b) {
    auto it = by_coord_.lower_bound(*b);
    if (it != by_coord_.begin()) a = std::prev(it)->first;
  } else {
    a = by_coord_.empty() ? Rational(0) : by_coord_.rbegin()->first;
  }
  const Rational width = a && b ? *b - *a : Rational(1);
  Rational scale(1, 3);
  for (;; scale /= 3) {
    const Rational x = a ? Rational(*a + width * scale) : Rational(*b - width * scale);
    if (!dyadic(x)) return x;
  }
}

void LimitHandle::require_clique_free(std::span<const Vertex> nbrs) const {
  std::vector<Vertex> cand(nbrs.begin(), nbrs.end());
  std::sort(cand.begin(), cand.end());
  if (contains_clique(cand, spec_.param - 1))
    throw Unsatisfiable(spec_.name() + ": the requested neighbourhood contains a K" +
                        std::to_string(spec_.param - 1) + ", so a witness would close a K" +
                        std::to_string(spec_.param));
}

Vertex LimitHandle::find_extension(const ExtensionRequest& req) {
  check_request(req);
  const auto f = spec_.family;
  if (f == Family::Henson) require_clique_free(req.adjacent_to);

  std::optional<Rational> lo, hi;
  for (auto y : req.above)
    if (!lo || *lo < verts_[y].meta.coord) lo = verts_[y].meta.coord;
  for (auto y : req.below)
    if (!hi || verts_[y].meta.coord < *hi) hi = verts_[y].meta.coord;
  if (lo && hi && !(*lo < *hi)) throw Unsatisfiable("order constraints leave an empty interval");

  const bool must_be_new = req.below_all || req.above_all || (req.part && *req.part == kNewPart);
  if (!must_be_new && !verts_.empty()) {
    const auto n = verts_.size();
    std::vector<char> skip(n, 0);
    for (const auto* vs : {&req.adjacent_to, &req.nonadjacent_to, &req.arc_from, &req.arc_to,
                           &req.above, &req.below, &req.exclude})
      for (auto v : *vs) skip[v] = 1;
    const std::size_t start = req.tiebreak ? keyed_hash(req.tiebreak, 0, 0, kSaltScan) % n : 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto x = static_cast<Vertex>((start + k) % n);
      if (!skip[x] && meets(x, req)) return x;
    }
  }
  return materialize_targeted(req);
}

Vertex LimitHandle::materialize_targeted(const ExtensionRequest& req) {
  const auto f = spec_.family;
  if (f == Family::S2) return targeted_s2(req);
  if (spec_.is_composite()) return targeted_composite(req);

  std::optional<Rational> lo, hi;
  for (auto y : req.above)
    if (!lo || *lo < verts_[y].meta.coord) lo = verts_[y].meta.coord;
  for (auto y : req.below)
    if (!hi || verts_[y].meta.coord < *hi) hi = verts_[y].meta.coord;
  if (req.below_all && !by_coord_.empty()) hi = by_coord_.begin()->first;
  if (req.above_all && !by_coord_.empty()) lo = by_coord_.rbegin()->first;

  Record rec;
  rec.meta.coord = fresh_between(lo, hi);
  const auto v = static_cast<Vertex>(verts_.size());
  auto force = [&](Vertex y, bool want) {
    if (want != default_bit(y, v)) rec.overrides.emplace_back(y, want ? 1 : 0);
  };
  for (auto y : req.adjacent_to) force(y, true);
  for (auto y : req.nonadjacent_to) force(y, false);
  for (auto y : req.arc_from) force(y, true);  // y < v, so bit set means y -> v
  for (auto y : req.arc_to) force(y, false);
  std::sort(rec.overrides.begin(), rec.overrides.end());
  return push(std::move(rec));
}

Vertex LimitHandle::targeted_s2(const ExtensionRequest& req) {
  // Candidate types: a gap among the constrained vertices (sorted by
  // coordinate) and a part. Each constrained vertex is satisfied either when
  // the witness lies above it or when it lies below it; sweep the gaps.
  std::vector<Vertex> cons = sorted_unique([&] {
    std::vector<Vertex> all;
    for (const auto* vs : {&req.arc_from, &req.arc_to, &req.above, &req.below})
      all.insert(all.end(), vs->begin(), vs->end());
    return all;
  }());
  std::sort(cons.begin(), cons.end(),
            [&](Vertex a, Vertex b) { return verts_[a].meta.coord < verts_[b].meta.coord; });
  const std::set<Vertex> from(req.arc_from.begin(), req.arc_from.end()),
      to(req.arc_to.begin(), req.arc_to.end()), above(req.above.begin(), req.above.end()),
      below(req.below.begin(), req.below.end());

  std::vector<int> parts;
  if (req.part) {
    parts = {*req.part};
  } else {
    const int preferred = verts_.empty() ? 0 : 1 - verts_.back().meta.part;
    parts = {preferred, 1 - preferred};
  }

  const std::size_t m = cons.size();
  for (int p : parts) {
    // ok_up[i]: constraints of cons[i] hold when the witness is above it.
    std::vector<char> ok_up(m), ok_down(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto c = cons[i];
      const int pc = verts_[c].meta.part;
      for (int up = 0; up < 2; ++up) {
        // witness x above c: same part gives x -> c, different parts give c -> x.
        const bool x_to_c = (p == pc) == (up == 1);
        bool ok = true;
        if (to.count(c) && !x_to_c) ok = false;
        if (from.count(c) && x_to_c) ok = false;
        if (above.count(c) && up == 0) ok = false;
        if (below.count(c) && up == 1) ok = false;
        (up ? ok_up : ok_down)[i] = ok;
      }
    }
    std::vector<char> suffix_down(m + 1, 1);
    for (std::size_t i = m; i-- > 0;) suffix_down[i] = suffix_down[i + 1] && ok_down[i];
    bool prefix_up = true;
    for (std::size_t g = 0; g <= m; ++g) {
      if (g > 0) prefix_up = prefix_up && ok_up[g - 1];
      if (!prefix_up) break;
      if (!suffix_down[g]) continue;
      if (req.below_all && g != 0) continue;
      if (req.above_all && g != m) continue;
      std::optional<Rational> lo, hi;
      if (g > 0) lo = verts_[cons[g - 1]].meta.coord;
      if (g < m) hi = verts_[cons[g]].meta.coord;
      if (req.below_all && !by_coord_.empty()) hi = by_coord_.begin()->first;
      if (req.above_all && !by_coord_.empty()) lo = by_coord_.rbegin()->first;
      Record rec;
      rec.meta.coord = fresh_between(lo, hi);
      rec.meta.part = p;
      return push(std::move(rec));
    }
  }
  throw Unsatisfiable("s2: no one-point type over the constrained vertices meets the request");
}

Vertex LimitHandle::targeted_composite(const ExtensionRequest& req) {
  const int n = spec_.param;
  std::set<int> adj_parts, non_parts;
  for (auto y : req.adjacent_to) adj_parts.insert(verts_[y].meta.part);
  for (auto y : req.nonadjacent_to) non_parts.insert(verts_[y].meta.part);
  if (adj_parts.size() > 1) throw Unsatisfiable("adjacent to vertices of two different cliques");

  auto full = [&](int p) {
    return spec_.family == Family::IinfKn && static_cast<std::size_t>(p) < part_sizes_.size() &&
           part_sizes_[p] >= static_cast<std::size_t>(n);
  };

  int target = -1;
  if (!adj_parts.empty()) {
    target = *adj_parts.begin();
    if (req.part && *req.part != target) throw Unsatisfiable("requested part differs from adjacency");
  } else if (req.part && *req.part != kNewPart) {
    target = *req.part;
    if (spec_.family == Family::InKinf && target >= n) throw Unsatisfiable("no such part");
    if (spec_.family != Family::InKinf && static_cast<std::size_t>(target) > part_sizes_.size())
      throw PreconditionError("part index beyond the next new part");
  } else if (spec_.family == Family::InKinf) {
    for (int p = 0; p < n && target < 0; ++p) {
      const bool fresh = part_sizes_[p] == 0;
      if (!non_parts.count(p) && (!req.part || fresh)) target = p;
    }
    if (target < 0) throw Unsatisfiable("every clique is excluded by the non-adjacency constraints");
  } else {
    target = static_cast<int>(part_sizes_.size());
  }
  if (non_parts.count(target)) throw Unsatisfiable("part is both required and forbidden");
  if (full(target)) throw Unsatisfiable("the clique already has all of its vertices");

  std::optional<Rational> lo, hi;
  for (auto y : req.above)
    if (!lo || *lo < verts_[y].meta.coord) lo = verts_[y].meta.coord;
  for (auto y : req.below)
    if (!hi || verts_[y].meta.coord < *hi) hi = verts_[y].meta.coord;
  if (req.below_all && !by_coord_.empty()) hi = by_coord_.begin()->first;
  if (req.above_all && !by_coord_.empty()) lo = by_coord_.rbegin()->first;

  Record rec;
  rec.meta.coord = fresh_between(lo, hi);
  rec.meta.part = target;
  return push(std::move(rec));
}

Vertex LimitHandle::vertex_at(const Rational& q) {
  if (spec_.family != Family::PureSet && spec_.family != Family::Rationals)
    throw PreconditionError("vertex_at is only defined on the pure-set and rationals carriers");
  if (auto it = by_coord_.find(q); it != by_coord_.end()) return it->second;
  Record rec;
  rec.meta.coord = q;
  return push(std::move(rec));
}

void demand_relation(LimitHandle& h, Level level, ExtensionRequest& req, Vertex y,
                     const PairRelation& rel) {
  const auto& spec = h.spec();
  const auto f = spec.family;
  if (level == Level::Expanded && h.convex_blocks())
    throw PreconditionError("one-point extension over the convex block order of " + spec.name() +
                            " is not available");
  if (f == Family::RandomGraph || f == Family::Henson || spec.is_composite())
    (rel.adjacent ? req.adjacent_to : req.nonadjacent_to).push_back(y);
  if (f == Family::RandomTournament || f == Family::S2)
    (rel.arc ? req.arc_from : req.arc_to).push_back(y);

  const bool parts = level == Level::Expanded && h.has_parts();
  if (parts && rel.part_second >= 0) {
    if (req.part && *req.part != rel.part_second)
      throw Unsatisfiable("conflicting part demands for one witness");
    req.part = rel.part_second;
  }
  const bool ordered = level != Level::Base || f == Family::Rationals;
  if (!ordered || rel.order == 0) return;
  if (parts && f == Family::InKinf && rel.part_second >= 0 && rel.part_second != h.meta(y).part) {
    // Across parts the order is fixed by the part indices.
    if (rel.order != (h.meta(y).part < rel.part_second ? -1 : 1))
      throw Unsatisfiable("order demand contradicts the block order of the parts");
    return;
  }
  (rel.order < 0 ? req.above : req.below).push_back(y);
}

// ---------------------------------------------------------------------------
// extension axioms

PropertyReport verify_extension_axioms(LimitHandle& h, std::size_t demand_size,
                                       std::size_t within) {
  if (demand_size > 3) throw PreconditionError("demand_size must be at most 3");
  h.materialize(within);
  PropertyReport report;
  report.property = Property::Extension;

  const auto& spec = h.spec();
  const auto base = static_cast<Vertex>(std::min<std::size_t>(12, within));
  if (demand_size > base) return report;

  std::vector<Vertex> S(demand_size);
  std::function<bool(std::vector<Vertex>, std::size_t)> has_clique =
      [&](std::vector<Vertex> cand, std::size_t size) {
        if (size == 0) return true;
        for (std::size_t a = 0; a < cand.size(); ++a) {
          std::vector<Vertex> next;
          for (std::size_t b = a + 1; b < cand.size(); ++b)
            if (h.relation(cand[a], cand[b]).adjacent) next.push_back(cand[b]);
          if (has_clique(std::move(next), size - 1)) return true;
        }
        return false;
      };
  std::function<void(std::size_t, Vertex)> each_subset;
  std::vector<ExtensionRequest> patterns;

  auto check_patterns = [&] {
    for (const auto& req : patterns) {
      ++report.instances_checked;
      bool found = false;
      for (Vertex w = 0; w < within && !found; ++w) {
        if (std::find(S.begin(), S.end(), w) != S.end()) continue;
        found = h.meets(w, req);
      }
      if (!found) {
        std::string line = "no witness below " + std::to_string(within) + " for S={";
        for (std::size_t i = 0; i < S.size(); ++i) line += (i ? "," : "") + std::to_string(S[i]);
        line += "}";
        report.failures.push_back(std::move(line));
      }
    }
  };

  auto build_patterns = [&] {
    patterns.clear();
    const std::size_t d = S.size();
    auto by_coord = S;
    std::sort(by_coord.begin(), by_coord.end(),
              [&](Vertex a, Vertex b) { return h.meta(a).coord < h.meta(b).coord; });
    auto slots = [&](std::optional<int> part) {
      for (std::size_t g = 0; g <= d; ++g) {
        ExtensionRequest r;
        r.above.assign(by_coord.begin(), by_coord.begin() + g);
        r.below.assign(by_coord.begin() + g, by_coord.end());
        r.part = part;
        patterns.push_back(std::move(r));
      }
    };
    switch (spec.family) {
      case Family::PureSet:
        patterns.emplace_back();
        break;
      case Family::Rationals:
        slots(std::nullopt);
        break;
      case Family::S2:
        slots(0);
        slots(1);
        break;
      case Family::RandomGraph:
      case Family::Henson:
      case Family::RandomTournament:
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
          ExtensionRequest r;
          for (std::size_t i = 0; i < d; ++i) {
            const bool on = (mask >> i) & 1U;
            if (spec.family == Family::RandomTournament)
              (on ? r.arc_from : r.arc_to).push_back(S[i]);
            else
              (on ? r.adjacent_to : r.nonadjacent_to).push_back(S[i]);
          }
          if (spec.family == Family::Henson &&
              has_clique(r.adjacent_to, static_cast<std::size_t>(spec.param - 1)))
            continue;  // only K_{k-1}-free neighbourhoods are realizable
          patterns.push_back(std::move(r));
        }
        break;
      case Family::InKinf:
      case Family::IinfKn:
      case Family::IinfKinf: {
        std::set<int> parts;
        for (auto v : S) parts.insert(h.meta(v).part);
        for (int p : parts) {
          ExtensionRequest r;
          for (auto v : S) (h.meta(v).part == p ? r.adjacent_to : r.nonadjacent_to).push_back(v);
          if (spec.family == Family::IinfKn &&
              r.adjacent_to.size() >= static_cast<std::size_t>(spec.param))
            continue;
          patterns.push_back(std::move(r));
        }
        if (spec.family == Family::InKinf && parts.size() >= static_cast<std::size_t>(spec.param))
          break;
        ExtensionRequest other;
        other.nonadjacent_to = S;
        patterns.push_back(std::move(other));
        break;
      }
    }
  };

  each_subset = [&](std::size_t idx, Vertex from) {
    if (idx == demand_size) {
      build_patterns();
      check_patterns();
      return;
    }
    for (Vertex v = from; v < base; ++v) {
      S[idx] = v;
      each_subset(idx + 1, v + 1);
    }
  };
  each_subset(0, 0);

  if (!report.failures.empty()) report.verdict = Verdict::Fails;
  return report;
}

}  // namespace homog
