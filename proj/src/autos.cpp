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

#include "homog/autos.hpp"

#include <algorithm>

#include "homog/errors.hpp"
#include "homog/hash.hpp"

namespace homog {

std::string_view twist_name(Twist t) {
  switch (t) {
    case Twist::None:
      return "none";
    case Twist::ReverseOrder:
      return "reverse-order";
    case Twist::SwapParts:
      return "swap-parts";
  }
  return "?";
}

int apply_twist(Twist t, int point_type) {
  if (t == Twist::SwapParts && point_type >= 0) return 1 - point_type;
  return point_type;
}

PairRelation apply_twist(Twist t, PairRelation r) {
  if (t == Twist::ReverseOrder) r.order = -r.order;
  r.part_first = apply_twist(t, r.part_first);
  r.part_second = apply_twist(t, r.part_second);
  return r;
}

// ---------------------------------------------------------------------------
// PartialAuto

PartialAuto::PartialAuto(Level level, std::map<Vertex, Vertex> map) : level_(level) {
  for (auto [x, y] : map) set(x, y);
}

PartialAuto PartialAuto::identity(Level level, std::span<const Vertex> on) {
  PartialAuto p(level);
  for (auto v : on)
    if (!p.image(v)) p.set(v, v);
  return p;
}

std::optional<Vertex> PartialAuto::image(Vertex v) const {
  auto it = fwd_.find(v);
  if (it == fwd_.end()) return std::nullopt;
  return it->second;
}

std::optional<Vertex> PartialAuto::preimage(Vertex v) const {
  auto it = bwd_.find(v);
  if (it == bwd_.end()) return std::nullopt;
  return it->second;
}

std::vector<Vertex> PartialAuto::domain() const {
  std::vector<Vertex> out;
  for (auto [x, y] : fwd_) out.push_back(x);
  return out;
}

std::vector<Vertex> PartialAuto::range() const {
  std::vector<Vertex> out;
  for (auto [y, x] : bwd_) out.push_back(y);
  return out;
}

void PartialAuto::set(Vertex x, Vertex y) {
  if (auto it = fwd_.find(x); it != fwd_.end()) {
    if (it->second == y) return;
    throw PreconditionError("partial map redefines " + std::to_string(x));
  }
  if (bwd_.count(y)) throw PreconditionError("partial map is not injective at " + std::to_string(y));
  fwd_[x] = y;
  bwd_[y] = x;
}

PartialAuto PartialAuto::inverse() const {
  PartialAuto p(level_);
  p.fwd_ = bwd_;
  p.bwd_ = fwd_;
  return p;
}

PartialAuto PartialAuto::then(const PartialAuto& after) const {
  PartialAuto p(std::min(level_, after.level_));
  for (auto [x, y] : fwd_)
    if (auto z = after.image(y)) p.set(x, *z);
  return p;
}

PartialAuto PartialAuto::at(Level level) const {
  PartialAuto p = *this;
  p.level_ = level;
  return p;
}

nlohmann::json to_json(const PartialAuto& p) {
  auto pairs = nlohmann::json::array();
  for (auto [x, y] : p.map()) pairs.push_back({x, y});
  return {{"level", std::string(level_name(p.level()))}, {"map", pairs}};
}

bool is_partial_iso(LimitHandle& h, const PartialAuto& p, Twist twist) {
  const auto level = p.level();
  std::vector<std::pair<Vertex, Vertex>> pairs(p.map().begin(), p.map().end());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, fx] = pairs[i];
    if (h.point_type(level, fx) != apply_twist(twist, h.point_type(level, x))) return false;
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      auto [y, fy] = pairs[j];
      if (!(h.type_at(level, fx, fy) == apply_twist(twist, h.type_at(level, x, y)))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// one-point steps

namespace {

constexpr std::uint64_t kSaltForth = 11;
constexpr std::uint64_t kSaltBack = 12;

// Finds y whose type over the current range matches the (twisted) type of x
// over the current domain.
Vertex forth_point(LimitHandle& h, Level level, Twist twist, const std::map<Vertex, Vertex>& fwd,
                   Vertex x, std::uint64_t tiebreak, bool avoid_self) {
  ExtensionRequest req;
  req.tiebreak = tiebreak;
  for (auto [d, pd] : fwd) {
    demand_relation(h, level, req, pd, apply_twist(twist, h.type_at(level, d, x)));
    req.exclude.push_back(pd);
  }
  if (const int t = apply_twist(twist, h.point_type(level, x)); t >= 0) {
    if (req.part && *req.part != t) throw Unsatisfiable("conflicting part demands");
    req.part = t;
  }
  if (avoid_self) req.exclude.push_back(x);
  const auto y = h.find_extension(req);
  for (auto [d, pd] : fwd)
    if (!(h.type_at(level, pd, y) == apply_twist(twist, h.type_at(level, d, x))))
      throw Error("internal: extension witness has the wrong type");
  return y;
}

}  // namespace

PartialAuto backforth_extend(LimitHandle& h, const PartialAuto& p,
                             std::span<const Vertex> want_domain,
                             std::span<const Vertex> want_range, const BackForthOptions& opts) {
  if (!is_partial_iso(h, p, opts.twist))
    throw PreconditionError("backforth_extend: input is not a partial isomorphism at level " +
                            std::string(level_name(p.level())));
  const auto level = p.level();
  // Both twists are involutions, so the back step uses the same twist.
  std::map<Vertex, Vertex> fwd = p.map();
  std::map<Vertex, Vertex> bwd = p.inverse().map();
  for (auto x : want_domain) {
    if (fwd.count(x)) continue;
    const auto y = forth_point(h, level, opts.twist, fwd, x,
                               keyed_hash(opts.seed, x, 0, kSaltForth), opts.fixed_point_free);
    fwd[x] = y;
    bwd[y] = x;
  }
  for (auto y : want_range) {
    if (bwd.count(y)) continue;
    const auto x = forth_point(h, level, opts.twist, bwd, y,
                               keyed_hash(opts.seed, y, 0, kSaltBack), opts.fixed_point_free);
    bwd[y] = x;
    fwd[x] = y;
  }
  return PartialAuto(level, std::move(fwd));
}

// ---------------------------------------------------------------------------
// AutoHandle

std::string_view auto_kind_name(AutoKind k) {
  switch (k) {
    case AutoKind::Identity:
      return "identity";
    case AutoKind::OrderReversal:
      return "order-reversal";
    case AutoKind::Shift:
      return "shift";
    case AutoKind::PartSwap:
      return "part-swap";
    case AutoKind::Seeded:
      return "seeded";
  }
  return "?";
}

AutoKind parse_auto_kind(std::string_view name) {
  for (auto k : {AutoKind::Identity, AutoKind::OrderReversal, AutoKind::Shift, AutoKind::PartSwap,
                 AutoKind::Seeded})
    if (auto_kind_name(k) == name) return k;
  throw PreconditionError("unknown automorphism kind: " + std::string(name));
}

AutoHandle::AutoHandle(LimitHandle& h, AutoKind kind, Level level, Twist twist, std::uint64_t seed,
                       bool fixed_point_free)
    : h_(&h),
      kind_(kind),
      level_(level),
      twist_(twist),
      seed_(seed),
      fixed_point_free_(fixed_point_free) {}

AutoHandle AutoHandle::canonical(LimitHandle& h, AutoKind kind, std::uint64_t seed) {
  const auto f = h.spec().family;
  const bool carrier = f == Family::PureSet || f == Family::Rationals;
  switch (kind) {
    case AutoKind::Identity:
      return AutoHandle(h, kind, Level::Expanded, Twist::None, seed, false);
    case AutoKind::OrderReversal:
      if (f == Family::Rationals || f == Family::S2)
        throw PreconditionError("order-reversal is not an automorphism of " + h.spec().name());
      // The vertex-ordered age of Iinf-Kn has no amalgamation, so back-and-forth
      // at the ordered level can get stuck.
      if (f == Family::IinfKn)
        throw PreconditionError("order-reversal is not available for " + h.spec().name());
      return AutoHandle(h, kind, Level::Ordered, Twist::ReverseOrder, seed, false);
    case AutoKind::Shift:
      if (!carrier) throw PreconditionError("shift needs the pure-set or rationals carrier");
      return AutoHandle(h, kind, Level::Ordered, Twist::None, seed, true);
    case AutoKind::PartSwap:
      if (f != Family::S2) throw PreconditionError("part-swap needs the s2 family");
      return AutoHandle(h, kind, Level::Expanded, Twist::SwapParts, seed, true);
    case AutoKind::Seeded:
      return seeded(h, seed, Level::Base, false);
  }
  throw PreconditionError("unknown automorphism kind");
}

AutoHandle AutoHandle::seeded(LimitHandle& h, std::uint64_t seed, Level level,
                              bool fixed_point_free) {
  return AutoHandle(h, AutoKind::Seeded, level, Twist::None, seed, fixed_point_free);
}

void AutoHandle::record(Vertex x, Vertex y) {
  fwd_[x] = y;
  bwd_[y] = x;
}

void AutoHandle::step() {
  const Vertex t = next_++;
  h_->meta(t);
  if (!fwd_.count(t))
    record(t, forth_point(*h_, level_, twist_, fwd_, t, keyed_hash(seed_, t, 0, kSaltForth),
                          fixed_point_free_));
  if (!bwd_.count(t)) {
    const auto x = forth_point(*h_, level_, twist_, bwd_, t, keyed_hash(seed_, t, 0, kSaltBack),
                               fixed_point_free_);
    record(x, t);
  }
}

Vertex AutoHandle::image(Vertex v) {
  if (auto it = fwd_.find(v); it != fwd_.end()) return it->second;
  const auto& spec = h_->spec();
  const bool closed = kind_ == AutoKind::Identity || kind_ == AutoKind::Shift ||
                      (kind_ == AutoKind::OrderReversal && spec.family == Family::PureSet);
  if (closed) {
    Vertex y = v;
    if (kind_ == AutoKind::Shift) y = h_->vertex_at(h_->meta(v).coord + 1);
    if (kind_ == AutoKind::OrderReversal) y = h_->vertex_at(-h_->meta(v).coord);
    h_->meta(v);
    record(v, y);
    return y;
  }
  while (!fwd_.count(v)) step();
  return fwd_.at(v);
}

Vertex AutoHandle::preimage(Vertex v) {
  if (auto it = bwd_.find(v); it != bwd_.end()) return it->second;
  const auto& spec = h_->spec();
  const bool closed = kind_ == AutoKind::Identity || kind_ == AutoKind::Shift ||
                      (kind_ == AutoKind::OrderReversal && spec.family == Family::PureSet);
  if (closed) {
    Vertex x = v;
    if (kind_ == AutoKind::Shift) x = h_->vertex_at(h_->meta(v).coord - 1);
    if (kind_ == AutoKind::OrderReversal) x = h_->vertex_at(-h_->meta(v).coord);
    h_->meta(v);
    record(x, v);
    return x;
  }
  while (!bwd_.count(v)) step();
  return bwd_.at(v);
}

std::optional<std::size_t> AutoHandle::fixed_point_bound() const {
  switch (kind_) {
    case AutoKind::OrderReversal:
      return 1;
    case AutoKind::Shift:
    case AutoKind::PartSwap:
      return 0;
    case AutoKind::Seeded:
      if (fixed_point_free_) return 0;
      return std::nullopt;
    case AutoKind::Identity:
      return std::nullopt;
  }
  return std::nullopt;
}

PartialAuto AutoHandle::restrict_to(std::span<const Vertex> on) {
  PartialAuto p(level_);
  for (auto v : on) p.set(v, image(v));
  return p;
}

std::vector<AutoCheck> certify(AutoHandle& g) {
  std::vector<AutoCheck> checks;
  auto& h = g.limit();
  const auto level = g.level() == Level::Expanded && !h.has_parts() ? Level::Ordered : g.level();
  PartialAuto realized(level, g.realized());
  checks.push_back({"partial-isomorphism", is_partial_iso(h, realized, g.twist()),
                    std::to_string(realized.size()) + " pairs at level " +
                        std::string(level_name(level)) + ", twist " +
                        std::string(twist_name(g.twist()))});
  bool inverse_ok = true;
  for (auto [x, y] : g.realized()) inverse_ok = inverse_ok && g.preimage(y) == x;
  checks.push_back({"inverse-consistency", inverse_ok, ""});
  std::size_t fixed = 0;
  for (auto [x, y] : g.realized()) fixed += x == y;
  const auto bound = g.fixed_point_bound();
  checks.push_back({"fixed-points", !bound || fixed <= *bound,
                    std::to_string(fixed) + " fixed among realized pairs" +
                        (bound ? ", bound " + std::to_string(*bound) : std::string())});
  return checks;
}

// ---------------------------------------------------------------------------

bool betweenness(const Rational& x, const Rational& y, const Rational& z) {
  if (x == y || y == z || x == z) throw PreconditionError("betweenness needs distinct points");
  return (y < x && x < z) || (z < x && x < y);
}

std::string_view part_action_name(PartAction a) {
  switch (a) {
    case PartAction::PreservesEach:
      return "preserves-each";
    case PartAction::Swaps:
      return "swaps";
    case PartAction::Mixed:
      return "mixed";
  }
  return "?";
}

namespace {

template <typename ImageFn>
PartAction classify(LimitHandle& h, std::span<const Vertex> sample, ImageFn image) {
  if (h.spec().family != Family::S2) throw PreconditionError("part action is defined on s2 only");
  bool keep = true, swap = true;
  for (auto v : sample) {
    const bool same = h.meta(v).part == h.meta(image(v)).part;
    keep = keep && same;
    swap = swap && !same;
  }
  if (keep) return PartAction::PreservesEach;
  if (swap) return PartAction::Swaps;
  return PartAction::Mixed;
}

}  // namespace

PartAction preserves_parts(AutoHandle& g, std::span<const Vertex> sample) {
  return classify(g.limit(), sample, [&](Vertex v) { return g.image(v); });
}

PartAction preserves_parts(LimitHandle& h, const PartialAuto& g, std::span<const Vertex> sample) {
  return classify(h, sample, [&](Vertex v) {
    auto y = g.image(v);
    if (!y) throw PreconditionError("sample vertex outside the map's domain");
    return *y;
  });
}

}  // namespace homog
