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


#include "homog/witnesses.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "homog/errors.hpp"
#include "homog/hash.hpp"

namespace homog {

std::string_view method_name(Method m) {
  return m == Method::Pipeline ? "pipeline" : "fallback-search";
}

bool WitnessReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

nlohmann::json to_json(const WitnessReport& r) {
  auto checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"postcondition", c.postcondition}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"operation", r.operation},   {"inputs", r.inputs},
          {"witness", r.witness},       {"checks", checks},
          {"stage_used", r.stage_used}, {"method", std::string(method_name(r.method))},
          {"pass", r.all_pass()}};
}

std::optional<Vertex> ConjugationWord::evaluate(Vertex x) const {
  std::optional<Vertex> cur = x;
  for (auto it = terms.rbegin(); it != terms.rend() && cur; ++it) {
    const auto& [g, s] = *it;
    cur = g.preimage(*cur);
    if (cur) cur = s.image(*cur);
    if (cur) cur = g.image(*cur);
  }
  return cur;
}

nlohmann::json to_json(const ConjugationWord& w) {
  auto out = nlohmann::json::array();
  for (const auto& [g, s] : w.terms) out.push_back({{"g", to_json(g)}, {"s", to_json(s)}});
  return out;
}

bool has_free_order_expansion(Family f) {
  return f == Family::PureSet || f == Family::RandomGraph || f == Family::Henson ||
         f == Family::RandomTournament;
}

Embedding as_embedding(LimitHandle& h, const PartialAuto& p, Level level) {
  Embedding e;
  const auto dom = p.domain();
  std::vector<Vertex> ran;
  for (auto x : dom) ran.push_back(*p.image(x));
  e.dom = h.window(dom, level);
  e.cod = h.window(ran, level);
  e.map.resize(dom.size());
  for (Vertex i = 0; i < dom.size(); ++i) e.map[i] = i;
  return e;
}

namespace {

constexpr std::uint64_t kSaltCopy = 21;
constexpr std::uint64_t kSaltPlace = 22;
constexpr std::uint64_t kSaltJ = 23;

// Counts the vertices a procedure materializes through its own extension
// requests. Growth caused by evaluating a given automorphism is not counted.
class Growth {
 public:
  Growth(LimitHandle& h, std::size_t input_size)
      : h_(h), cap_(10 * std::max<std::size_t>(1, input_size)) {}

  template <class F>
  auto run(F&& f) {
    const auto before = h_.size();
    auto out = f();
    used_ += h_.size() - before;
    if (used_ > cap_)
      throw BudgetExceeded("witness search grew the stage by " + std::to_string(used_) +
                           " vertices, over its cap of " + std::to_string(cap_));
    return out;
  }

  Vertex find(const ExtensionRequest& req) {
    return run([&] { return h_.find_extension(req); });
  }

 private:
  LimitHandle& h_;
  std::size_t cap_;
  std::size_t used_ = 0;
};

std::vector<Vertex> distinct_sorted_by_coord(LimitHandle& h, std::span<const Vertex> A) {
  std::vector<Vertex> out(A.begin(), A.end());
  for (auto v : out) h.meta(v);
  std::sort(out.begin(), out.end(),
            [&](Vertex a, Vertex b) { return h.meta(a).coord < h.meta(b).coord; });
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw PreconditionError("vertex set lists a vertex twice");
  return out;
}

nlohmann::json vertex_list(std::span<const Vertex> vs) { return std::vector<Vertex>(vs.begin(), vs.end()); }

nlohmann::json base_inputs(LimitHandle& h, std::span<const Vertex> A) {
  return {{"structure", h.spec().name()}, {"seed", h.spec().seed}, {"A", vertex_list(A)}};
}

nlohmann::json auto_inputs(const AutoHandle& g) {
  return {{"kind", std::string(auto_kind_name(g.kind()))},
          {"level", std::string(level_name(g.level()))},
          {"seed", g.seed()}};
}

void finish(WitnessReport& r, LimitHandle& h) {
  r.stage_used = h.size();
  for (const auto& c : r.checks)
    if (!c.pass)
      throw CertificationError(r.operation + ": postcondition '" + c.postcondition +
                               "' failed (" + c.detail + ")");
}

const Rational& coord(LimitHandle& h, Vertex v) { return h.meta(v).coord; }

struct PlaceOptions {
  bool ascending = false;         // each point above every point placed so far
  bool pin_parts = false;         // keep the source part (composites)
  std::vector<int> parts;         // explicit part per source point (s2)
  std::vector<Vertex> exclude;
};

// Copies the sequence src point by point at `level`: every new image has the
// level-type over earlier images that its source has over earlier sources.
PartialAuto place_copy(LimitHandle& h, Growth& growth, Level level, std::span<const Vertex> src,
                       const PlaceOptions& po, std::uint64_t seed) {
  PartialAuto out(Level::Base);
  std::vector<Vertex> imgs;
  for (std::size_t i = 0; i < src.size(); ++i) {
    ExtensionRequest req;
    req.tiebreak = keyed_hash(seed, i, src.size(), kSaltPlace);
    for (std::size_t j = 0; j < i; ++j)
      demand_relation(h, level, req, imgs[j], h.type_at(level, src[j], src[i]));
    if (po.ascending) req.above = imgs;
    if (po.pin_parts) req.part = h.meta(src[i]).part;
    if (!po.parts.empty()) req.part = po.parts[i];
    req.exclude = po.exclude;
    req.exclude.insert(req.exclude.end(), imgs.begin(), imgs.end());
    const auto x = growth.find(req);
    imgs.push_back(x);
    out.set(src[i], x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// disjoint copy

PartialAuto disjoint_copy_map(LimitHandle& f, AutoHandle& h, const std::vector<Vertex>& A,
                              Growth& growth, std::uint64_t seed) {
  const auto bound = h.fixed_point_bound();
  PartialAuto iota(Level::Base);
  std::vector<Vertex> imgs;
  std::set<Vertex> blocked;  // A~, h(A~), h^-1(A~)
  for (std::size_t i = 0; i < A.size(); ++i) {
    ExtensionRequest req;
    req.tiebreak = keyed_hash(seed, i, A.size(), kSaltCopy);
    for (std::size_t j = 0; j < i; ++j)
      demand_relation(f, Level::Base, req, imgs[j], f.type_at(Level::Base, A[j], A[i]));
    std::vector<Vertex> fixed;
    for (;;) {
      req.exclude.assign(blocked.begin(), blocked.end());
      req.exclude.insert(req.exclude.end(), fixed.begin(), fixed.end());
      const auto x = growth.find(req);
      if (h.image(x) != x) {
        imgs.push_back(x);
        iota.set(A[i], x);
        blocked.insert({x, h.image(x), h.preimage(x)});
        break;
      }
      fixed.push_back(x);
      if (fixed.size() > *bound)
        throw CertificationError("disjoint_copy: more fixed points than the certified bound");
    }
  }
  return iota;
}

std::vector<WitnessCheck> disjoint_copy_checks(LimitHandle& f, AutoHandle& h,
                                               const PartialAuto& iota) {
  std::vector<WitnessCheck> checks;
  const auto emb = as_embedding(f, iota, Level::Base);
  checks.push_back({"copy is isomorphic to A",
                    is_partial_iso(f, iota) && is_embedding(emb),
                    std::to_string(iota.size()) + " points"});
  const auto img = iota.range();
  const std::set<Vertex> img_set(img.begin(), img.end());
  std::size_t meets = 0;
  for (auto x : img) meets += img_set.count(h.image(x));
  checks.push_back({"copy is disjoint from its image", meets == 0,
                    std::to_string(meets) + " common points"});
  return checks;
}

void require_same_limit(LimitHandle& f, const AutoHandle& h) {
  if (&h.limit() != &f) throw PreconditionError("automorphism belongs to another limit");
}

// ---------------------------------------------------------------------------
// fallback: direct search for a conjugator

struct ConjugatorGoal {
  // z[i] is (g sigma g^-1)(A[i]); the search keeps only consistent z.
  std::function<bool(std::size_t i, Vertex zi)> unary;
  std::function<bool(std::size_t i, Vertex zi, std::size_t j, Vertex zj)> binary;
};

class ConjugatorSearch {
 public:
  ConjugatorSearch(LimitHandle& h, AutoHandle& sigma, std::vector<Vertex> A, ConjugatorGoal goal,
                   std::size_t node_cap)
      : h_(h), sigma_(sigma), A_(std::move(A)), goal_(std::move(goal)), cap_(node_cap) {
    const auto n = std::min<std::size_t>(h_.size(), 32);
    std::set<Vertex> pool(A_.begin(), A_.end());
    for (Vertex v = 0; v < n; ++v) pool.insert(v);
    pool_.assign(pool.begin(), pool.end());
  }

  std::optional<PartialAuto> run() {
    c_.clear();
    if (choose_c()) return g_;
    return std::nullopt;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  bool tick() {
    if (++nodes_ > cap_) throw SearchExhausted("fallback search used its candidate budget");
    return true;
  }

  bool consistent(Vertex x, Vertex gx) {
    for (auto [d, gd] : g_.map()) {
      if (d == x || gd == gx) return false;
      if (!(h_.type_at(Level::Base, d, x) == h_.type_at(Level::Base, gd, gx))) return false;
    }
    return true;
  }

  bool choose_c() {
    const auto i = c_.size();
    if (i == A_.size()) return choose_z();
    for (auto c : pool_) {
      tick();
      if (!consistent(c, A_[i])) continue;
      g_.set(c, A_[i]);
      c_.push_back(c);
      if (choose_c()) return true;
      c_.pop_back();
      g_ = without(g_, c);
    }
    return false;
  }

  bool choose_z() {
    y_.assign(A_.size(), 0);
    z_.assign(A_.size(), std::nullopt);
    free_.clear();
    for (std::size_t i = 0; i < A_.size(); ++i) {
      y_[i] = sigma_.image(c_[i]);
      if (auto gy = g_.image(y_[i])) z_[i] = *gy;
      else free_.push_back(i);
    }
    for (std::size_t i = 0; i < A_.size(); ++i)
      if (z_[i] && !fits(i, *z_[i])) return false;
    return assign_free(0);
  }

  bool fits(std::size_t i, Vertex zi) const {
    if (!goal_.unary(i, zi)) return false;
    for (std::size_t j = 0; j < A_.size(); ++j)
      if (j != i && z_[j] && !goal_.binary(i, zi, j, *z_[j])) return false;
    return true;
  }

  bool assign_free(std::size_t k) {
    if (k == free_.size()) return true;
    const auto i = free_[k];
    for (auto z : pool_) {
      tick();
      if (!fits(i, z) || !consistent(y_[i], z)) continue;
      g_.set(y_[i], z);
      z_[i] = z;
      if (assign_free(k + 1)) return true;
      z_[i].reset();
      g_ = without(g_, y_[i]);
    }
    return false;
  }

  static PartialAuto without(const PartialAuto& p, Vertex x) {
    auto m = p.map();
    m.erase(x);
    return PartialAuto(p.level(), std::move(m));
  }

  LimitHandle& h_;
  AutoHandle& sigma_;
  std::vector<Vertex> A_;
  ConjugatorGoal goal_;
  std::size_t cap_;
  std::size_t nodes_ = 0;
  std::vector<Vertex> pool_;
  std::vector<Vertex> c_;
  std::vector<Vertex> y_;
  std::vector<std::optional<Vertex>> z_;
  std::vector<std::size_t> free_;
  PartialAuto g_{Level::Base};
};

// (g sigma g^-1)(x), or nullopt where undefined.
std::optional<Vertex> conjugate_at(const PartialAuto& g, AutoHandle& sigma, Vertex x) {
  const auto pre = g.preimage(x);
  if (!pre) return std::nullopt;
  return g.image(sigma.image(*pre));
}

template <class Pipeline>
MapWitness with_fallback(WitnessReport report, const WitnessOptions& opts, Pipeline&& pipeline,
                         ConjugatorSearch search,
                         const std::function<std::vector<WitnessCheck>(const PartialAuto&)>& post,
                         LimitHandle& h) {
  std::string pipeline_error;
  if (!opts.force_fallback) {
    try {
      auto g = pipeline();
      report.checks = post(g);
      if (report.all_pass()) {
        report.method = Method::Pipeline;
        report.witness = to_json(g);
        finish(report, h);
        return {std::move(g), std::move(report)};
      }
      pipeline_error = "pipeline witness failed its re-check";
    } catch (const Error& e) {
      pipeline_error = e.what();
    }
  }
  std::optional<PartialAuto> g;
  try {
    g = search.run();
  } catch (const SearchExhausted& e) {
    throw SearchExhausted(report.operation + ": " +
                          (pipeline_error.empty() ? "" : "pipeline: " + pipeline_error + "; ") +
                          "fallback: " + e.what());
  }
  if (!g)
    throw SearchExhausted(report.operation + ": " +
                          (pipeline_error.empty() ? "" : "pipeline: " + pipeline_error + "; ") +
                          "fallback: no conjugator in the candidate window (" +
                          std::to_string(search.nodes()) + " candidates)");
  report.method = Method::FallbackSearch;
  report.checks = post(*g);
  report.witness = to_json(*g);
  finish(report, h);
  return {std::move(*g), std::move(report)};
}

// ---------------------------------------------------------------------------
// s2 helpers

void require_s2_swap(AutoHandle& sigma, std::span<const Vertex> A) {
  auto& h = sigma.limit();
  if (h.spec().family != Family::S2) throw PreconditionError("needs an s2 limit");
  if (sigma.fixed_point_bound() != std::optional<std::size_t>(0))
    throw PreconditionError("sigma must be certified fixed-point-free");
  if (sigma.level() == Level::Base || sigma.twist() == Twist::ReverseOrder)
    throw PreconditionError("sigma must be certified order-preserving");
  std::vector<Vertex> sample(A.begin(), A.end());
  for (Vertex v = 0; v < 12; ++v) sample.push_back(v);
  std::sort(sample.begin(), sample.end());
  sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  if (preserves_parts(sigma, sample) != PartAction::Swaps)
    throw PreconditionError("sigma must swap the two parts");
}

PartialAuto monotone_copy_map(AutoHandle& sigma, const std::vector<Vertex>& A, Growth& growth,
                              std::uint64_t seed) {
  auto& h = sigma.limit();
  PartialAuto iota(Level::Expanded);
  if (A.empty()) return iota;
  std::vector<Vertex> imgs = {A[0]};
  iota.set(A[0], A[0]);
  const Vertex first = A[0];
  const bool up = coord(h, first) < coord(h, sigma.image(first));
  for (std::size_t k = 1; k < A.size(); ++k) {
    const int p = h.meta(A[k]).part;
    ExtensionRequest req;
    req.tiebreak = keyed_hash(seed, k, A.size(), kSaltCopy);
    Vertex x;
    if (up) {
      req.above = {imgs.back()};
      req.below = {sigma.image(first)};
      req.part = p;
      x = growth.find(req);
    } else {
      req.above = {sigma.image(imgs.back())};
      req.below = {first};
      req.part = 1 - p;
      x = sigma.preimage(growth.find(req));
    }
    imgs.push_back(x);
    iota.set(A[k], x);
  }
  return iota;
}

std::vector<WitnessCheck> monotone_copy_checks(AutoHandle& sigma, const PartialAuto& iota) {
  auto& h = sigma.limit();
  std::vector<WitnessCheck> checks;
  checks.push_back({"copy is isomorphic to A at the expanded level",
                    is_partial_iso(h, iota) && is_embedding(as_embedding(h, iota, Level::Expanded)),
                    std::to_string(iota.size()) + " points"});
  const auto img = iota.range();
  bool separated = true;
  std::string detail = "empty copy";
  if (!img.empty()) {
    std::vector<Rational> a, b;
    for (auto x : img) {
      a.push_back(coord(h, x));
      b.push_back(coord(h, sigma.image(x)));
    }
    const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
    const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
    const bool below = *amax < *bmin, above = *bmax < *amin;
    separated = below || above;
    detail = below ? "copy lies below its image" : above ? "copy lies above its image" : "interleaved";
  }
  checks.push_back({"copy and its image are order-separated", separated, detail});
  return checks;
}

PartialAuto part_split_map(LimitHandle& h, const std::vector<Vertex>& A0,
                           const std::vector<Vertex>& A1, Growth& growth, std::uint64_t seed) {
  // Inside each block the order is kept; across the blocks it is reversed.
  const bool a0_low = A0.empty() || A1.empty() || coord(h, A0.back()) < coord(h, A1.front());
  std::vector<Vertex> seq;
  std::vector<int> parts;
  auto add = [&](const std::vector<Vertex>& block, bool swap) {
    for (auto v : block) {
      seq.push_back(v);
      parts.push_back(swap ? 1 - h.meta(v).part : h.meta(v).part);
    }
  };
  if (a0_low) {
    add(A1, true);
    add(A0, false);
  } else {
    add(A0, false);
    add(A1, true);
  }
  PlaceOptions po;
  po.ascending = true;
  po.parts = parts;
  return place_copy(h, growth, Level::Base, seq, po, seed);
}

std::vector<WitnessCheck> part_split_checks(LimitHandle& h, const PartialAuto& k,
                                            const std::vector<Vertex>& A0,
                                            const std::vector<Vertex>& A1) {
  std::vector<WitnessCheck> checks;
  checks.push_back({"base-level partial isomorphism", is_partial_iso(h, k.at(Level::Base)),
                    std::to_string(k.size()) + " points"});
  bool keep = true, swap = true;
  for (auto x : A0) keep = keep && h.meta(*k.image(x)).part == h.meta(x).part;
  for (auto x : A1) swap = swap && h.meta(*k.image(x)).part == 1 - h.meta(x).part;
  checks.push_back({"parts kept on A0", keep, std::to_string(A0.size()) + " points"});
  checks.push_back({"parts swapped on A1", swap, std::to_string(A1.size()) + " points"});
  return checks;
}

void require_separated(LimitHandle& h, const std::vector<Vertex>& A0,
                       const std::vector<Vertex>& A1) {
  for (auto x : A0)
    if (std::find(A1.begin(), A1.end(), x) != A1.end())
      throw PreconditionError("s2_part_split: blocks overlap");
  if (A0.empty() || A1.empty()) return;
  if (!(coord(h, A0.back()) < coord(h, A1.front()) || coord(h, A1.back()) < coord(h, A0.front())))
    throw PreconditionError("s2_part_split: blocks are not order-separated");
}

// ---------------------------------------------------------------------------
// conjugation words

bool factor_supported(Family f) {
  return has_free_order_expansion(f) || f == Family::Rationals || f == Family::InKinf;
}

// One conjugate g s g^-1 equal to p on p's domain, for p without cycles of
// length two or more. A copy e of dom(p) u ran(p) is placed in an order that p
// preserves; then s = e p e^-1 lives at the star level and g = e^-1.
std::pair<PartialAuto, PartialAuto> single_conjugate(LimitHandle& h, Growth& growth,
                                                     const PartialAuto& p, Level star,
                                                     std::uint64_t seed) {
  std::set<Vertex> w;
  for (auto [x, y] : p.map()) w.insert({x, y});
  // Key: fixed points first, then (position along the path, start of the path).
  std::map<Vertex, std::pair<long, Vertex>> key;
  for (auto v : w) {
    if (p.image(v) == v) {
      key[v] = {-1, v};
      continue;
    }
    Vertex start = v;
    long pos = 0;
    while (auto prev = p.preimage(start)) {
      start = *prev;
      ++pos;
    }
    key[v] = {pos, start};
  }
  std::vector<Vertex> seq(w.begin(), w.end());
  std::sort(seq.begin(), seq.end(), [&](Vertex a, Vertex b) { return key[a] < key[b]; });
  PlaceOptions po;
  po.ascending = true;
  po.pin_parts = h.spec().family == Family::InKinf;
  const auto e = place_copy(h, growth, Level::Base, seq, po, seed);
  PartialAuto s(star);
  for (auto [x, y] : p.map()) s.set(*e.image(x), *e.image(y));
  return {e.inverse(), s};
}

bool has_cycle(const PartialAuto& p) {
  for (auto [x, y] : p.map()) {
    if (x == y) continue;
    std::optional<Vertex> cur = y;
    for (std::size_t steps = 0; cur && steps <= p.size(); ++steps) {
      if (*cur == x) return true;
      cur = p.image(*cur);
    }
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// public operations

MapWitness disjoint_copy(LimitHandle& f, AutoHandle& h, std::span<const Vertex> A_in,
                         const WitnessOptions& opts) {
  require_same_limit(f, h);
  const auto fam = f.spec().family;
  if (!has_free_order_expansion(fam) && fam != Family::Rationals)
    throw PreconditionError("disjoint_copy: " + f.spec().name() +
                            " is not among the strong-amalgamation families");
  if (!h.fixed_point_bound())
    throw PreconditionError("disjoint_copy: h has no certified fixed-point bound");
  const auto A = distinct_sorted_by_coord(f, A_in);
  Growth growth(f, A.size());
  WitnessReport r;
  r.operation = "disjoint_copy";
  r.inputs = base_inputs(f, A);
  r.inputs["h"] = auto_inputs(h);
  auto iota = disjoint_copy_map(f, h, A, growth, opts.seed);
  r.checks = disjoint_copy_checks(f, h, iota);
  r.witness = to_json(iota);
  finish(r, f);
  return {std::move(iota), std::move(r)};
}

MapWitness order_transport(LimitHandle& f, std::span<const TransportBlock> blocks,
                           const WitnessOptions& opts) {
  if (!has_free_order_expansion(f.spec().family))
    throw PreconditionError("order_transport: " + f.spec().name() +
                            " does not admit every linear order in its order expansion");
  std::set<Vertex> seen;
  std::vector<Vertex> seq;
  auto in = nlohmann::json::array();
  for (const auto& b : blocks) {
    for (auto v : b.target_order) {
      if (!seen.insert(v).second)
        throw PreconditionError("order_transport: vertex " + std::to_string(v) +
                                " appears twice (overlapping blocks or a non-linear target)");
      f.meta(v);
      seq.push_back(v);
    }
    in.push_back(vertex_list(b.target_order));
  }
  Growth growth(f, seq.size());
  WitnessReport r;
  r.operation = "order_transport";
  r.inputs = {{"structure", f.spec().name()}, {"seed", f.spec().seed}, {"blocks", in}};
  PlaceOptions po;
  po.ascending = true;
  auto k = place_copy(f, growth, Level::Base, seq, po, opts.seed);
  r.checks.push_back({"base-level partial isomorphism", is_partial_iso(f, k),
                      std::to_string(k.size()) + " points"});
  bool ordered = true;
  std::size_t pairs = 0;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.target_order.size(); ++i)
      for (std::size_t j = i + 1; j < b.target_order.size(); ++j, ++pairs)
        ordered = ordered && coord(f, *k.image(b.target_order[i])) <
                                 coord(f, *k.image(b.target_order[j]));
  r.checks.push_back({"every block ordered as its target", ordered,
                      std::to_string(pairs) + " pairs"});
  r.witness = to_json(k);
  finish(r, f);
  return {std::move(k), std::move(r)};
}

MapWitness conjugate_order_preserving(LimitHandle& f, AutoHandle& sigma,
                                      std::span<const Vertex> A_in, const WitnessOptions& opts) {
  require_same_limit(f, sigma);
  if (!has_free_order_expansion(f.spec().family))
    throw PreconditionError("conjugate_order_preserving: " + f.spec().name() +
                            " does not admit every linear order in its order expansion");
  if (sigma.twist() != Twist::ReverseOrder || sigma.level() == Level::Base)
    throw PreconditionError("conjugate_order_preserving: sigma is not certified order-reversing");
  const auto bound = sigma.fixed_point_bound();
  if (!bound || *bound > 1)
    throw PreconditionError("conjugate_order_preserving: sigma may have several fixed points");
  const auto A = distinct_sorted_by_coord(f, A_in);

  WitnessReport r;
  r.operation = "conjugate_order_preserving";
  r.inputs = base_inputs(f, A);
  r.inputs["sigma"] = auto_inputs(sigma);

  auto post = [&](const PartialAuto& g) {
    std::vector<WitnessCheck> checks;
    checks.push_back({"g is a base-level partial isomorphism", is_partial_iso(f, g.at(Level::Base)),
                      std::to_string(g.size()) + " points"});
    bool defined = true, increasing = true;
    std::optional<Rational> last;
    for (auto a : A) {
      const auto z = conjugate_at(g, sigma, a);
      if (!z) {
        defined = false;
        break;
      }
      if (last && !(*last < coord(f, *z))) increasing = false;
      last = coord(f, *z);
    }
    checks.push_back({"g sigma g^-1 defined on A", defined, std::to_string(A.size()) + " points"});
    checks.push_back({"g sigma g^-1 increasing on A", defined && increasing,
                      std::to_string(A.size()) + " points"});
    return checks;
  };

  auto pipeline = [&]() -> PartialAuto {
    if (A.size() <= 1) {
      PartialAuto g(Level::Base);
      for (auto a : A) {
        g.set(a, a);
        if (const auto s = sigma.image(a); s != a) g.set(s, s);
      }
      return g;
    }
    Growth growth(f, A.size());
    const auto iota = disjoint_copy_map(f, sigma, A, growth, opts.seed);
    std::vector<Vertex> at, b;
    for (auto a : A) at.push_back(*iota.image(a));
    for (auto x : at) b.push_back(sigma.image(x));
    // k orders both A~ and sigma(A~) like A; j carries k(A~) back onto A.
    std::vector<Vertex> seq = at;
    seq.insert(seq.end(), b.begin(), b.end());
    PlaceOptions po;
    po.ascending = true;
    const auto k = place_copy(f, growth, Level::Base, seq, po, opts.seed);
    PartialAuto j0(Level::Ordered);
    for (std::size_t i = 0; i < A.size(); ++i) j0.set(*k.image(at[i]), A[i]);
    std::vector<Vertex> want;
    for (auto y : b) want.push_back(*k.image(y));
    const auto j = growth.run([&] {
      return backforth_extend(f, j0, want, {}, {Twist::None, keyed_hash(opts.seed, 0, 0, kSaltJ)});
    });
    return k.then(j).at(Level::Base);
  };

  ConjugatorGoal goal;
  goal.unary = [](std::size_t, Vertex) { return true; };
  goal.binary = [&](std::size_t i, Vertex zi, std::size_t j, Vertex zj) {
    return (i < j) == (coord(f, zi) < coord(f, zj));
  };
  return with_fallback(std::move(r), opts, pipeline,
                       ConjugatorSearch(f, sigma, A, goal, opts.fallback_nodes), post, f);
}

MapWitness s2_monotone_copy(AutoHandle& sigma, std::span<const Vertex> A_in,
                            const WitnessOptions& opts) {
  auto& h = sigma.limit();
  require_s2_swap(sigma, A_in);
  const auto A = distinct_sorted_by_coord(h, A_in);
  Growth growth(h, A.size());
  WitnessReport r;
  r.operation = "s2_monotone_copy";
  r.inputs = base_inputs(h, A);
  r.inputs["sigma"] = auto_inputs(sigma);
  auto iota = monotone_copy_map(sigma, A, growth, opts.seed);
  r.checks = monotone_copy_checks(sigma, iota);
  r.witness = to_json(iota);
  finish(r, h);
  return {std::move(iota), std::move(r)};
}

MapWitness s2_part_split(LimitHandle& h, std::span<const Vertex> A0_in,
                         std::span<const Vertex> A1_in, const WitnessOptions& opts) {
  if (h.spec().family != Family::S2) throw PreconditionError("s2_part_split: needs an s2 limit");
  const auto A0 = distinct_sorted_by_coord(h, A0_in);
  const auto A1 = distinct_sorted_by_coord(h, A1_in);
  require_separated(h, A0, A1);
  Growth growth(h, A0.size() + A1.size());
  WitnessReport r;
  r.operation = "s2_part_split";
  r.inputs = {{"structure", h.spec().name()}, {"seed", h.spec().seed},
              {"A0", vertex_list(A0)}, {"A1", vertex_list(A1)}};
  auto k = part_split_map(h, A0, A1, growth, opts.seed);
  r.checks = part_split_checks(h, k, A0, A1);
  r.witness = to_json(k);
  finish(r, h);
  return {std::move(k), std::move(r)};
}

MapWitness s2_conjugate_parts(AutoHandle& sigma, std::span<const Vertex> A_in,
                              const WitnessOptions& opts) {
  auto& h = sigma.limit();
  require_s2_swap(sigma, A_in);
  const auto A = distinct_sorted_by_coord(h, A_in);
  WitnessReport r;
  r.operation = "s2_conjugate_parts";
  r.inputs = base_inputs(h, A);
  r.inputs["sigma"] = auto_inputs(sigma);

  auto post = [&](const PartialAuto& g) {
    std::vector<WitnessCheck> checks;
    checks.push_back({"g is a base-level partial isomorphism", is_partial_iso(h, g.at(Level::Base)),
                      std::to_string(g.size()) + " points"});
    bool defined = true, parts = true;
    for (auto a : A) {
      const auto z = conjugate_at(g, sigma, a);
      if (!z) {
        defined = false;
        break;
      }
      parts = parts && h.meta(*z).part == h.meta(a).part;
    }
    checks.push_back({"g sigma g^-1 defined on A", defined, std::to_string(A.size()) + " points"});
    checks.push_back({"g sigma g^-1 keeps parts on A", defined && parts,
                      std::to_string(A.size()) + " points"});
    return checks;
  };

  auto pipeline = [&]() -> PartialAuto {
    if (A.empty()) return PartialAuto(Level::Base);
    Growth growth(h, A.size());
    const auto iota = monotone_copy_map(sigma, A, growth, opts.seed);
    std::vector<Vertex> at, b;
    for (auto a : A) at.push_back(*iota.image(a));
    for (auto x : at) b.push_back(sigma.image(x));
    auto bs = distinct_sorted_by_coord(h, b);
    const auto k = part_split_map(h, at, bs, growth, opts.seed);
    PartialAuto j0(Level::Expanded);
    for (std::size_t i = 0; i < A.size(); ++i) j0.set(*k.image(at[i]), A[i]);
    std::vector<Vertex> want;
    for (auto y : b) want.push_back(*k.image(y));
    const auto j = growth.run([&] {
      return backforth_extend(h, j0, want, {}, {Twist::None, keyed_hash(opts.seed, 1, 0, kSaltJ)});
    });
    return k.then(j).at(Level::Base);
  };

  ConjugatorGoal goal;
  goal.unary = [&](std::size_t i, Vertex zi) { return h.meta(zi).part == h.meta(A[i]).part; };
  goal.binary = [](std::size_t, Vertex, std::size_t, Vertex) { return true; };
  return with_fallback(std::move(r), opts, pipeline,
                       ConjugatorSearch(h, sigma, A, goal, opts.fallback_nodes), post, h);
}

WordWitness factor_via_conjugates(LimitHandle& f, const PartialAuto& target_in,
                                  std::size_t max_word, const WitnessOptions& opts) {
  const auto fam = f.spec().family;
  if (!factor_supported(fam))
    throw PreconditionError("factor_via_conjugates: not available for " + f.spec().name());
  const auto target = target_in.at(Level::Base);
  if (!is_partial_iso(f, target))
    throw PreconditionError("factor_via_conjugates: target is not a base-level partial isomorphism");
  const auto star = star_level(fam);
  const auto D = target.domain();
  Growth growth(f, D.size());

  WitnessReport r;
  r.operation = "factor_via_conjugates";
  r.inputs = {{"structure", f.spec().name()}, {"seed", f.spec().seed},
              {"target", to_json(target)}, {"max_word", max_word}};

  const bool identity = std::all_of(target.map().begin(), target.map().end(),
                                    [](const auto& xy) { return xy.first == xy.second; });
  ConjugationWord word;
  if (!(identity && max_word == 0)) {
    if (max_word == 0)
      throw WordBoundExceeded("factor_via_conjugates: a nontrivial target needs at least one conjugate");
    if (fam == Family::InKinf)
      for (auto [x, y] : target.map())
        if (f.meta(x).part != f.meta(y).part)
          throw WordBoundExceeded(
              "factor_via_conjugates: target moves vertex " + std::to_string(x) +
              " to another part; every conjugate of a star-level map fixes each part");
    if (is_partial_iso(f, target.at(star))) {
      std::set<Vertex> w;
      for (auto [x, y] : target.map()) w.insert({x, y});
      const std::vector<Vertex> wv(w.begin(), w.end());
      word.terms.emplace_back(PartialAuto::identity(Level::Base, wv), target.at(star));
    } else if (!has_cycle(target)) {
      word.terms.push_back(single_conjugate(f, growth, target, star, opts.seed));
    } else {
      if (max_word < 2)
        throw WordBoundExceeded("factor_via_conjugates: target has a cycle and needs two conjugates");
      // target = (target o c^-1) o c for a fresh copy c of its domain; neither
      // factor has a cycle since each moves its domain off itself.
      PlaceOptions po;
      po.pin_parts = fam == Family::InKinf;
      for (auto [x, y] : target.map()) po.exclude.insert(po.exclude.end(), {x, y});
      const auto c = place_copy(f, growth, Level::Base, D, po, opts.seed);
      const auto rest = c.inverse().then(target);
      word.terms.push_back(single_conjugate(f, growth, rest, star, keyed_hash(opts.seed, 1, 0, kSaltJ)));
      word.terms.push_back(single_conjugate(f, growth, c, star, keyed_hash(opts.seed, 2, 0, kSaltJ)));
    }
  }

  bool gs_ok = true, ss_ok = true, agrees = true;
  for (const auto& [g, s] : word.terms) {
    gs_ok = gs_ok && is_partial_iso(f, g.at(Level::Base));
    ss_ok = ss_ok && is_partial_iso(f, s.at(star));
  }
  for (auto [x, y] : target.map()) agrees = agrees && word.evaluate(x) == y;
  r.checks.push_back({"word length within bound", word.length() <= max_word,
                      std::to_string(word.length()) + " of " + std::to_string(max_word)});
  r.checks.push_back({"conjugators are base-level partial isomorphisms", gs_ok,
                      std::to_string(word.length()) + " terms"});
  r.checks.push_back({"conjugated maps are star-level partial isomorphisms", ss_ok,
                      std::string("level ") + std::string(level_name(star))});
  r.checks.push_back({"word agrees with the target", agrees,
                      std::to_string(target.size()) + " points"});
  r.witness = to_json(word);
  finish(r, f);
  return {std::move(word), std::move(r)};
}

}  // namespace homog
