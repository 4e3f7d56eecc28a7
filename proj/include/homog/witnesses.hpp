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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homog/autos.hpp"
#include "homog/limits.hpp"
#include "homog/relstruct.hpp"

namespace homog {

enum class Method { Pipeline, FallbackSearch };
std::string_view method_name(Method m);

struct WitnessCheck {
  std::string postcondition;
  bool pass = false;
  std::string detail;
};

/// Outcome of a witness procedure. Every check of a returned report passed;
/// a failed re-check raises CertificationError instead.
struct WitnessReport {
  std::string operation;
  nlohmann::json inputs;
  nlohmann::json witness;
  std::vector<WitnessCheck> checks;
  std::size_t stage_used = 0;
  Method method = Method::Pipeline;

  bool all_pass() const;
};

nlohmann::json to_json(const WitnessReport& r);

/// A partial map together with the report that certified it.
struct MapWitness {
  PartialAuto map;
  WitnessReport report;
};

/// Product t_0 t_1 ... t_(m-1) of conjugates t_i = g_i s_i g_i^-1. The rightmost
/// factor acts first. g_i is read at the base level, s_i at the star level.
struct ConjugationWord {
  std::vector<std::pair<PartialAuto, PartialAuto>> terms;

  std::size_t length() const { return terms.size(); }
  /// Image of x, or nullopt where some factor is undefined.
  std::optional<Vertex> evaluate(Vertex x) const;
};

nlohmann::json to_json(const ConjugationWord& w);

struct WordWitness {
  ConjugationWord word;
  WitnessReport report;
};

struct WitnessOptions {
  std::uint64_t seed = 0;
  bool force_fallback = false;         // skip the pipeline where one exists
  std::size_t fallback_nodes = 10000;  // candidate budget of the fallback search
};

/// One block of order_transport: its vertices listed in the wanted order.
struct TransportBlock {
  std::vector<Vertex> target_order;
};

/// Families whose age has strong amalgamation and whose order expansion admits
/// every linear order: pure-set, random-graph, henson(k), random-tournament.
bool has_free_order_expansion(Family f);

/// A copy iota: A -> A~ at the base level with A~ disjoint from h(A~).
/// Requires a rationals or free-order family and a finite fixed-point bound on h.
MapWitness disjoint_copy(LimitHandle& f, AutoHandle& h, std::span<const Vertex> A,
                         const WitnessOptions& opts = {});

/// A base-level partial isomorphism k on the union of the blocks that orders
/// every block as listed.
MapWitness order_transport(LimitHandle& f, std::span<const TransportBlock> blocks,
                           const WitnessOptions& opts = {});

/// g with g sigma g^-1 increasing on A, for an order-reversing sigma with at most
/// one fixed point.
MapWitness conjugate_order_preserving(LimitHandle& f, AutoHandle& sigma,
                                      std::span<const Vertex> A,
                                      const WitnessOptions& opts = {});

/// s2: a copy of A at the expanded level lying entirely below or entirely above
/// its sigma-image. sigma must be fixed-point-free, order-preserving and swap
/// the parts.
MapWitness s2_monotone_copy(AutoHandle& sigma, std::span<const Vertex> A,
                            const WitnessOptions& opts = {});

/// s2: a base-level partial isomorphism keeping parts on A0 and swapping them on
/// A1. The blocks must be disjoint and one must lie entirely below the other.
MapWitness s2_part_split(LimitHandle& h, std::span<const Vertex> A0,
                         std::span<const Vertex> A1, const WitnessOptions& opts = {});

/// s2: g with g sigma g^-1 keeping the part of every point of A.
MapWitness s2_conjugate_parts(AutoHandle& sigma, std::span<const Vertex> A,
                              const WitnessOptions& opts = {});

/// Writes target as a product of at most max_word conjugates of star-level maps.
/// Supported on pure-set, rationals, random-graph, henson(k), random-tournament
/// and In-Kinf(n). Throws WordBoundExceeded when no word is found within the
/// bound; this is not a proof that none exists.
WordWitness factor_via_conjugates(LimitHandle& f, const PartialAuto& target, std::size_t max_word,
                                  const WitnessOptions& opts = {});

/// A partial map as an embedding of the induced window on its domain into the
/// induced window on its range.
Embedding as_embedding(LimitHandle& h, const PartialAuto& p, Level level);

}  // namespace homog
