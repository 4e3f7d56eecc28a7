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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "homog/limits.hpp"

namespace homog {

/// How a map is allowed to differ from a plain partial isomorphism at its level:
/// ReverseOrder flips the order, SwapParts exchanges parts 0 and 1.
enum class Twist { None, ReverseOrder, SwapParts };

std::string_view twist_name(Twist t);
PairRelation apply_twist(Twist t, PairRelation r);
int apply_twist(Twist t, int point_type);

/// Finite injective vertex map, read at a given level.
class PartialAuto {
 public:
  PartialAuto() = default;
  explicit PartialAuto(Level level, std::map<Vertex, Vertex> map = {});

  /// Identity on the given vertices.
  static PartialAuto identity(Level level, std::span<const Vertex> on);

  Level level() const { return level_; }
  const std::map<Vertex, Vertex>& map() const { return fwd_; }
  std::size_t size() const { return fwd_.size(); }
  bool empty() const { return fwd_.empty(); }

  std::optional<Vertex> image(Vertex v) const;
  std::optional<Vertex> preimage(Vertex v) const;
  std::vector<Vertex> domain() const;
  std::vector<Vertex> range() const;

  /// Adds x -> y. Throws PreconditionError when this breaks injectivity or
  /// redefines x.
  void set(Vertex x, Vertex y);

  PartialAuto inverse() const;
  /// `after` o this, on the x whose image lies in after's domain.
  PartialAuto then(const PartialAuto& after) const;
  /// Same map read at another level.
  PartialAuto at(Level level) const;

  bool operator==(const PartialAuto&) const = default;

 private:
  Level level_ = Level::Base;
  std::map<Vertex, Vertex> fwd_;
  std::map<Vertex, Vertex> bwd_;
};

nlohmann::json to_json(const PartialAuto& p);

/// True iff for all distinct x, y in the domain the level-type of (p(x), p(y))
/// is the twisted level-type of (x, y), and point types match likewise.
bool is_partial_iso(LimitHandle& h, const PartialAuto& p, Twist twist = Twist::None);

struct BackForthOptions {
  Twist twist = Twist::None;
  std::uint64_t seed = 0;         // scan rotation for witness search
  bool fixed_point_free = false;  // never map a vertex to itself
};

/// Extends p so that want_domain is in its domain and want_range in its range,
/// one point at a time (domain in the given order, then range). Throws
/// PreconditionError if p is not a (twisted) partial isomorphism.
PartialAuto backforth_extend(LimitHandle& h, const PartialAuto& p,
                             std::span<const Vertex> want_domain,
                             std::span<const Vertex> want_range,
                             const BackForthOptions& opts = {});

enum class AutoKind { Identity, OrderReversal, Shift, PartSwap, Seeded };

std::string_view auto_kind_name(AutoKind k);
AutoKind parse_auto_kind(std::string_view name);

/// Lazily realized automorphism of a limit.
///
/// Closed forms: order-reversal q -> -q and shift q -> q+1 on the pure-set and
/// rationals carriers. Back-and-forth kinds realize vertex t's image and then
/// its preimage for t = 0, 1, 2, ... in that order, so the realized graph does
/// not depend on the order of queries.
class AutoHandle {
 public:
  /// The named automorphism of h.
  ///   Identity      - any family.
  ///   OrderReversal - reverses the generic order, preserving the family's
  ///                   relations: closed form on pure-set, back-and-forth at
  ///                   the ordered level on graph, tournament and composite
  ///                   families.
  ///   Shift         - pure-set and rationals.
  ///   PartSwap      - s2: order-preserving, exchanges the two parts.
  static AutoHandle canonical(LimitHandle& h, AutoKind kind, std::uint64_t seed = 0);

  /// Seeded back-and-forth automorphism preserving `level`.
  static AutoHandle seeded(LimitHandle& h, std::uint64_t seed, Level level,
                           bool fixed_point_free = false);

  AutoKind kind() const { return kind_; }
  Level level() const { return level_; }
  Twist twist() const { return twist_; }
  std::uint64_t seed() const { return seed_; }
  LimitHandle& limit() const { return *h_; }

  Vertex image(Vertex v);
  Vertex preimage(Vertex v);

  /// Certified upper bound on the number of fixed points, when known.
  std::optional<std::size_t> fixed_point_bound() const;

  /// Realized pairs so far.
  const std::map<Vertex, Vertex>& realized() const { return fwd_; }

  /// Images of `on`, as a partial map at this handle's level.
  PartialAuto restrict_to(std::span<const Vertex> on);

 private:
  AutoHandle(LimitHandle& h, AutoKind kind, Level level, Twist twist, std::uint64_t seed,
             bool fixed_point_free);
  void step();
  void record(Vertex x, Vertex y);

  LimitHandle* h_;
  AutoKind kind_;
  Level level_;
  Twist twist_;
  std::uint64_t seed_;
  bool fixed_point_free_;
  Vertex next_ = 0;
  std::map<Vertex, Vertex> fwd_, bwd_;
};

/// One line of an automorphism's certification.
struct AutoCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Re-verifies every realized pair: (twisted) partial isomorphism at the
/// handle's level, inverse consistency, and the fixed-point bound.
std::vector<AutoCheck> certify(AutoHandle& g);

/// x lies strictly between y and z. Throws PreconditionError unless distinct.
bool betweenness(const Rational& x, const Rational& y, const Rational& z);

enum class PartAction { PreservesEach, Swaps, Mixed };
std::string_view part_action_name(PartAction a);

/// Classifies g on the sample (s2 only).
PartAction preserves_parts(AutoHandle& g, std::span<const Vertex> sample);
PartAction preserves_parts(LimitHandle& h, const PartialAuto& g, std::span<const Vertex> sample);

}  // namespace homog
