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
#include <vector>

#include <json.hpp>

#include "homog/autos.hpp"
#include "homog/limits.hpp"

namespace homog {

/// Flow data of one homogeneous structure. Descriptors are plain strings: the
/// flows are compact spaces with no finite representation.
struct CatalogEntry {
  std::string structure;  // LimitSpec name, or a data-only name
  bool data_only = false;
  std::string G;
  std::string G_star;
  std::string N_G_star;
  std::string normal_closure;
  std::string M_flow;
  std::string Pi_flow;
  std::string B_flow;
  std::optional<std::string> B_finite;
  std::vector<std::string> evidence;
};

nlohmann::json to_json(const CatalogEntry& e);

/// Accepts every LimitSpec name (henson(k), In-Kinf(n), Iinf-Kn(n) with their
/// parameter) and the data-only rational-urysohn. Throws PreconditionError for
/// unknown names.
CatalogEntry get_entry(std::string_view name);

/// One representative per catalogue row, in display order.
std::vector<std::string> catalog_names();

/// G modulo its normal closure, computed from the descriptors: "trivial" when
/// the closure is all of G, and K when G = K ⋉ N and the closure is {e} × N.
/// Returns nullopt when the descriptors do not have one of these shapes.
std::optional<std::string> quotient_descriptor(const CatalogEntry& e);

/// B_flow equals quotient_descriptor for every catalogue row.
bool catalog_consistent(std::vector<std::string>* mismatches = nullptr);

/// A permutation of part indices: p[i] is the image of part i.
using Permutation = std::vector<int>;

Permutation compose(const Permutation& after, const Permutation& first);

/// The permutation of the n cliques of In-Kinf(n) induced by g on its domain.
/// Throws CertificationError when g sends two vertices of one clique to different
/// cliques or merges cliques, and PreconditionError when the domain misses more
/// than one clique.
Permutation part_action_quotient(LimitHandle& h, const PartialAuto& g);
/// Same for a lazily realized automorphism, sampled on the first vertices until
/// every clique is met.
Permutation part_action_quotient(AutoHandle& g, std::size_t sample = 30);

struct ProcedureResult {
  std::string procedure;
  std::size_t samples = 0;
  std::size_t failures = 0;
  nlohmann::json details = nlohmann::json::array();  // failure lines and sample reports

  bool pass() const { return failures == 0; }
};

struct EvidenceRecord {
  std::string entry;
  std::uint64_t seed = 0;
  std::vector<ProcedureResult> procedures;

  bool pass() const;
};

nlohmann::json to_json(const EvidenceRecord& r);

/// Runs every evidence procedure of the entry with `samples` samples each.
/// Failures are recorded in the verdict, never thrown.
EvidenceRecord run_evidence(const CatalogEntry& e, std::uint64_t seed, std::size_t samples = 20);

/// Names accepted by run_procedure.
std::vector<std::string> procedure_names();

/// Runs a single evidence procedure against the limit named by `structure`.
ProcedureResult run_procedure(std::string_view procedure, std::string_view structure,
                              std::uint64_t seed, std::size_t samples);

}  // namespace homog
