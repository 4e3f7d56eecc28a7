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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homog/rational.hpp"
#include "homog/relstruct.hpp"
#include "homog/report.hpp"

namespace homog {

enum class Family {
  PureSet,
  Rationals,
  RandomGraph,
  Henson,            // param = k >= 3, the forbidden clique size
  RandomTournament,
  S2,                // dense local order
  InKinf,            // param = n: n disjoint infinite cliques
  IinfKn,            // param = n: infinitely many n-cliques
  IinfKinf,          // infinitely many infinite cliques
};

enum class Expansion { None, Order, OrderParts };

struct LimitSpec {
  Family family = Family::PureSet;
  int param = 0;
  std::uint64_t seed = 0;
  Expansion expansion = Expansion::None;

  /// "random-graph", "henson(3)", "In-Kinf(3)", ...
  std::string name() const;
  /// Inverse of name(). Throws PreconditionError for unknown names or bad parameters.
  static LimitSpec parse(std::string_view name, std::uint64_t seed = 0,
                         Expansion expansion = Expansion::None);

  bool is_composite() const {
    return family == Family::InKinf || family == Family::IinfKn || family == Family::IinfKinf;
  }
};

std::string_view expansion_name(Expansion e);
Expansion parse_expansion(std::string_view name);

/// Which relations a comparison looks at.
///  Base     - the family's own language (F).
///  Ordered  - F plus the generic order carried by the rational coordinates.
///  Expanded - Ordered plus named parts where the family has them (s2: P0/P1;
///             In-Kinf(n): P0..P(n-1) with parts convex in the order).
enum class Level { Base, Ordered, Expanded };

std::string_view level_name(Level level);

/// The level at which the automorphism group is the extremely amenable G*.
Level star_level(Family family);

struct VertexMeta {
  Rational coord;
  int part = -1;           // s2: 0/1; composites: part index
  std::size_t inner = 0;   // composites: position inside its part
};

/// Relation record between an ordered pair of distinct vertices (first, second).
/// Fields a level does not look at are left at their defaults.
struct PairRelation {
  bool adjacent = false;   // graph edge; composites: same part
  bool arc = false;        // tournaments: arc first -> second
  int order = 0;           // -1: first < second, +1: first > second
  int part_first = -1;
  int part_second = -1;

  PairRelation flipped() const;  // the record for (second, first); arc is negated
  bool operator==(const PairRelation&) const = default;
};

inline constexpr int kNewPart = -2;

/// One-point extension demand. A witness x must satisfy every listed constraint.
struct ExtensionRequest {
  std::vector<Vertex> adjacent_to;
  std::vector<Vertex> nonadjacent_to;
  std::vector<Vertex> arc_from;  // y -> x for every listed y
  std::vector<Vertex> arc_to;    // x -> y for every listed y
  std::vector<Vertex> above;     // coord(x) > coord(y)
  std::vector<Vertex> below;     // coord(x) < coord(y)
  bool below_all = false;        // new vertex below every materialized vertex
  bool above_all = false;
  std::optional<int> part;       // s2: 0/1; composites: index or kNewPart
  std::vector<Vertex> exclude;   // vertices that may not serve as the witness
  std::uint64_t tiebreak = 0;    // rotates the scan over existing vertices

  static ExtensionRequest between(Vertex lo, Vertex hi) {
    ExtensionRequest r;
    r.above = {lo};
    r.below = {hi};
    return r;
  }
};

/// Seeded, lazily materialized countable homogeneous structure.
///
/// Vertices 0..size()-1 are materialized. Default growth (stage(), materialize())
/// is a pure function of the LimitSpec: relations of the random graph and random
/// tournament come from a counter hash keyed by (seed, i, j); coordinates, parts
/// and Henson edges are decided vertex by vertex from the hash and earlier
/// vertices. find_extension() and vertex_at() may append targeted vertices whose
/// relations to earlier vertices are forced by the request. Relations between two
/// materialized vertices never change.
///
/// Single writer: any call may grow the structure.
class LimitHandle {
 public:
  static constexpr std::size_t kDefaultBudget = 100000;

  explicit LimitHandle(LimitSpec spec, std::size_t budget = kDefaultBudget);

  const LimitSpec& spec() const { return spec_; }
  std::size_t size() const { return verts_.size(); }
  std::size_t budget() const { return budget_; }

  /// Grows by default materialization until size() >= n.
  void materialize(std::size_t n);

  /// Induced structure on vertices 0..n-1 in the handle's exported signature.
  FinStructure stage(std::size_t n);
  FinStructure stage(std::size_t n, Level level);
  /// Induced structure on an explicit vertex sequence.
  FinStructure window(std::span<const Vertex> seq, Level level);
  Signature signature(Level level) const;
  Level exported_level() const;

  const VertexMeta& meta(Vertex v);
  PairRelation relation(Vertex i, Vertex j);
  /// relation() restricted to what `level` sees.
  PairRelation type_at(Level level, Vertex i, Vertex j);
  /// Unary label visible at `level`: the part for s2 and In-Kinf, the
  /// position inside the clique for Iinf-Kn; -1 otherwise.
  int point_type(Level level, Vertex v);

  Vertex find_extension(const ExtensionRequest& req);
  /// True iff the materialized vertex x (outside every constraint set) meets req.
  bool meets(Vertex x, const ExtensionRequest& req);

  /// Vertex with coordinate q, materialized if absent (pure-set and rationals only).
  Vertex vertex_at(const Rational& q);

  /// Composite coordinates (part-index, inner-index).
  std::pair<int, std::size_t> composite_view(Vertex v);

  /// Stage JSON plus vertex metadata.
  nlohmann::json stage_json(std::size_t n);

  bool has_parts() const;
  /// Iinf-Kn and Iinf-Kinf: the expanded order keeps every part convex.
  bool convex_blocks() const;
  int part_count() const;  // s2: 2; In-Kinf(n): n; otherwise number materialized

 private:
  struct Record {
    VertexMeta meta;
    // Relation bits to earlier vertices that differ from the default bit.
    std::vector<std::pair<Vertex, std::uint8_t>> overrides;
  };

  bool bit(Vertex i, Vertex j) const;  // i < j
  bool default_bit(Vertex i, Vertex j) const;
  bool adjacent(Vertex i, Vertex j) const;
  void ensure(Vertex v);
  void check_budget(std::size_t extra) const;
  Vertex push(Record rec);
  void materialize_default();
  Rational next_default_coordinate();
  Rational fresh_between(const std::optional<Rational>& lo,
                         const std::optional<Rational>& hi) const;
  void require_clique_free(std::span<const Vertex> nbrs) const;
  bool contains_clique(std::vector<Vertex> cand, int size) const;
  Vertex materialize_targeted(const ExtensionRequest& req);
  Vertex targeted_s2(const ExtensionRequest& req);
  Vertex targeted_composite(const ExtensionRequest& req);
  void check_request(const ExtensionRequest& req) const;

  LimitSpec spec_;
  std::size_t budget_;
  std::vector<Record> verts_;
  std::map<Rational, Vertex> by_coord_;
  std::vector<std::size_t> part_sizes_;  // composites and s2
  std::vector<Rational> part_key_;       // composites
  std::vector<std::vector<Vertex>> henson_adj_;
  std::vector<Rational> lattice_;       // default coordinates of completed levels
  std::vector<Rational> level_points_;  // current level, in fill order
  std::size_t level_pos_ = 0;
  std::uint64_t level_ = 0;
};

/// Arc between two points of the ordered two-coloured rationals: same part,
/// arc y -> x iff x < y; different parts, reversed. Returns true for x -> y.
/// Throws PreconditionError on equal rationals.
bool s2_arc(const Rational& x, int part_x, const Rational& y, int part_y);

/// Adds to `req` the demand that a witness x has type_at(level, y, x) == rel.
/// Fields the level (or family) does not look at are ignored.
void demand_relation(LimitHandle& h, Level level, ExtensionRequest& req, Vertex y,
                     const PairRelation& rel);

/// Every one-point demand over the demand_size-subsets of the first 12 vertices
/// has a witness among the first `within` vertices.
PropertyReport verify_extension_axioms(LimitHandle& h, std::size_t demand_size,
                                       std::size_t within);

}  // namespace homog
