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


// Command-line front end. Exit codes: 0 success, 1 failed check, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homog/autos.hpp"
#include "homog/catalog.hpp"
#include "homog/errors.hpp"
#include "homog/fraisse.hpp"
#include "homog/limits.hpp"
#include "homog/structure_io.hpp"
#include "homog/suite.hpp"
#include "homog/witnesses.hpp"

using namespace homog;
using nlohmann::json;

namespace {

constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Vertex> parse_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const auto v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Vertex>(v));
    } catch (const std::logic_error&) {
      throw UsageError("not a vertex index: " + item);
    }
  }
  return out;
}

// "0:1,1:0" -> {0 -> 1, 1 -> 0}
std::map<Vertex, Vertex> parse_pairs(const std::string& text) {
  std::map<Vertex, Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("expected x:y, got " + item);
    const auto x = parse_list(item.substr(0, colon)), y = parse_list(item.substr(colon + 1));
    if (x.size() != 1 || y.size() != 1) throw UsageError("expected x:y, got " + item);
    out[x[0]] = y[0];
  }
  return out;
}

Level parse_level(const std::string& name) {
  for (auto l : {Level::Base, Level::Ordered, Level::Expanded})
    if (level_name(l) == name) return l;
  throw UsageError("unknown level: " + name);
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

struct Options {
  std::string structure = "random-graph";
  std::uint64_t seed = 7;
  std::string expansion = "none";
  std::string format = "json";
};

void add_common(CLI::App* cmd, Options& o, bool with_structure = true,
                std::vector<std::string> formats = {"json"}) {
  if (with_structure) {
    cmd->add_option("--structure", o.structure, "limit family, e.g. random-graph, henson(3), s2");
    cmd->add_option("--expansion", o.expansion, "none | order | order+parts");
  }
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
}

LimitSpec spec_of(const Options& o) {
  return LimitSpec::parse(o.structure, o.seed, parse_expansion(o.expansion));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homog: finite machinery for countable homogeneous structures"};
  app.require_subcommand(1);
  Options o;
  int result = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "print a finite stage of a limit");
  std::size_t stage = 20;
  std::string level;
  add_common(gen, o, true, {"json", "dot"});
  gen->add_option("--stage", stage, "number of vertices");
  gen->add_option("--level", level, "base | ordered | expanded (dot output)");
  gen->callback([&] {
    LimitHandle h(spec_of(o));
    if (o.format == "dot") {
      std::cout << to_dot(level.empty() ? h.stage(stage) : h.stage(stage, parse_level(level)));
      return;
    }
    emit(h.stage_json(stage));
  });

  // check-ap / check-hp
  std::string cls;
  std::size_t max_size = 4;
  bool strong = false;
  auto* ap = app.add_subcommand("check-ap", "brute-force amalgamation check");
  ap->add_option("--class", cls, "class name")->required();
  ap->add_option("--max-size", max_size, "size bound");
  ap->add_flag("--strong", strong, "require disjoint amalgams");
  add_common(ap, o, false);
  ap->callback([&] {
    const auto r = check_ap(class_by_name(cls, max_size), strong);
    emit(to_json(r));
    if (!r.holds()) result = kCheckFailed;
  });
  auto* hp = app.add_subcommand("check-hp", "brute-force hereditary check");
  hp->add_option("--class", cls, "class name")->required();
  hp->add_option("--max-size", max_size, "size bound");
  add_common(hp, o, false);
  hp->callback([&] {
    const auto r = check_hp(class_by_name(cls, max_size));
    emit(to_json(r));
    if (!r.holds()) result = kCheckFailed;
  });

  // check-chain
  auto* chain = app.add_subcommand("check-chain", "chain condition between sampled pairs");
  std::optional<std::string> u_text, v_text;
  bool by_coord = false;
  std::size_t samples = 20, max_len = 4;
  add_common(chain, o);
  chain->add_option("--u", u_text, "vertex u (default: first increasing edge)");
  chain->add_option("--v", v_text, "vertex v");
  chain->add_flag("--coords", by_coord, "read --u and --v as coordinates such as 1/2");
  chain->add_option("--samples", samples, "number of sampled pairs");
  chain->add_option("--max-len", max_len, "longest allowed chain");
  chain->callback([&] {
    LimitHandle h(spec_of(o));
    h.materialize(40);
    if (u_text.has_value() != v_text.has_value()) throw UsageError("give both --u and --v");
    auto resolve = [&](const std::string& t) {
      if (by_coord) return h.vertex_at(parse_rational(t));
      const auto v = parse_list(t);
      if (v.size() != 1) throw UsageError("not a vertex: " + t);
      return v[0];
    };
    Vertex u = 0, v = 0;
    if (u_text) {
      u = resolve(*u_text);
      v = resolve(*v_text);
    } else {
      bool found = false;
      for (Vertex a = 0; a < 40 && !found; ++a)
        for (Vertex b = 0; b < 40 && !found; ++b)
          if (a != b && h.meta(a).coord < h.meta(b).coord && h.relation(a, b).adjacent) {
            u = a;
            v = b;
            found = true;
          }
      if (!found) throw UsageError("no increasing edge among the first 40 vertices; give --u and --v");
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<Vertex> pick(0, 39);
    std::vector<VertexPair> pairs;
    while (pairs.size() < samples) {
      Vertex x = pick(rng), y = pick(rng);
      if (x == y) continue;
      if (h.meta(y).coord < h.meta(x).coord) std::swap(x, y);
      pairs.push_back({x, y});
    }
    const auto r = check_chain_condition(h, u, v, pairs, max_len);
    emit(to_json(r));
    if (!r.holds()) result = kCheckFailed;
  });

  // auto
  auto* au = app.add_subcommand("auto", "query an automorphism and certify its realized part");
  std::string kind = "identity", query = "0,1,2", auto_level = "base";
  bool fpf = false;
  add_common(au, o);
  au->add_option("--kind", kind, "identity | order-reversal | shift | part-swap | seeded");
  au->add_option("--query", query, "vertices to map, comma separated");
  au->add_option("--level", auto_level, "level of a seeded automorphism");
  au->add_flag("--fixed-point-free", fpf, "seeded automorphism without fixed points");
  au->callback([&] {
    LimitHandle h(spec_of(o));
    const auto k = parse_auto_kind(kind);
    auto g = k == AutoKind::Seeded ? AutoHandle::seeded(h, o.seed, parse_level(auto_level), fpf)
                                   : AutoHandle::canonical(h, k, o.seed);
    json images = json::object();
    for (auto v : parse_list(query)) images[std::to_string(v)] = g.image(v);
    json checks = json::array();
    bool ok = true;
    for (const auto& c : certify(g)) {
      ok = ok && c.pass;
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    emit({{"structure", h.spec().name()},
          {"kind", auto_kind_name(k)},
          {"images", images},
          {"certification", checks}});
    if (!ok) result = kCheckFailed;
  });

  // witness
  auto* wit = app.add_subcommand("witness", "run a constructive procedure and check its output");
  std::string op, set = "0,1,2", set1, blocks, target, wkind;
  std::size_t max_word = 16;
  bool force_fallback = false;
  add_common(wit, o);
  wit->add_option("op", op, "procedure")
      ->required()
      ->check(CLI::IsMember({"disjoint-copy", "order-transport", "conjugate-order", "s2-monotone",
                             "s2-split", "s2-conjugate", "factor"}));
  wit->add_option("--set", set, "the finite set A, comma separated");
  wit->add_option("--set1", set1, "s2-split: the points whose part is swapped");
  wit->add_option("--blocks", blocks, "order-transport: blocks in target order, e.g. 3,1;0,2");
  wit->add_option("--map", target, "factor: the target map, e.g. 0:1,1:0");
  wit->add_option("--kind", wkind, "automorphism kind for h or sigma");
  wit->add_option("--max-word", max_word, "factor: word bound");
  wit->add_flag("--force-fallback", force_fallback, "use the certified search directly");
  wit->callback([&] {
    LimitHandle h(spec_of(o));
    const WitnessOptions opts{o.seed, force_fallback};
    const auto A = parse_list(set);
    auto handle = [&](const char* fallback) {
      const auto k = parse_auto_kind(wkind.empty() ? fallback : wkind);
      return k == AutoKind::Seeded ? AutoHandle::seeded(h, o.seed, Level::Base, true)
                                   : AutoHandle::canonical(h, k, o.seed);
    };
    json out;
    bool ok = true;
    auto map_out = [&](const MapWitness& w) {
      out = to_json(w.report);
      ok = w.report.all_pass();
    };
    if (op == "disjoint-copy") {
      auto g = handle("seeded");
      map_out(disjoint_copy(h, g, A, opts));
    } else if (op == "order-transport") {
      std::vector<TransportBlock> bs;
      std::stringstream in(blocks);
      std::string b;
      while (std::getline(in, b, ';')) bs.push_back({parse_list(b)});
      map_out(order_transport(h, bs, opts));
    } else if (op == "conjugate-order") {
      auto g = handle("order-reversal");
      map_out(conjugate_order_preserving(h, g, A, opts));
    } else if (op == "s2-monotone") {
      auto g = handle("part-swap");
      map_out(s2_monotone_copy(g, A, opts));
    } else if (op == "s2-split") {
      map_out(s2_part_split(h, A, parse_list(set1), opts));
    } else if (op == "s2-conjugate") {
      auto g = handle("part-swap");
      map_out(s2_conjugate_parts(g, A, opts));
    } else {
      const PartialAuto p(Level::Base, parse_pairs(target));
      const auto w = factor_via_conjugates(h, p, max_word, opts);
      out = to_json(w.report);
      ok = w.report.all_pass();
    }
    emit(out);
    if (!ok) result = kCheckFailed;
  });

  // catalog
  auto* cat = app.add_subcommand("catalog", "the flow catalogue");
  cat->require_subcommand(1);
  std::string entry;
  std::size_t ev_samples = 20;
  auto* list = cat->add_subcommand("list", "entry names");
  list->callback([&] { emit(catalog_names()); });
  auto* show = cat->add_subcommand("show", "one entry");
  show->add_option("name", entry)->required();
  show->callback([&] { emit(to_json(get_entry(entry))); });
  auto* ev = cat->add_subcommand("evidence", "run the finite-stage evidence of an entry");
  ev->add_option("name", entry)->required();
  ev->add_option("--seed", o.seed);
  ev->add_option("--samples", ev_samples);
  ev->callback([&] {
    const auto r = run_evidence(get_entry(entry), o.seed, ev_samples);
    emit(to_json(r));
    if (!r.pass()) result = kCheckFailed;
  });
  for (auto* c : {list, show, ev})
    c->add_option("--format", o.format)->check(CLI::IsMember({"json"}));

  // verify
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  std::string suite = "all";
  int criterion = 0;
  ver->add_option("--suite", suite)->check(CLI::IsMember({"all"}));
  ver->add_option("--criterion", criterion, "run one criterion (1-9)")
      ->check(CLI::Range(0, criterion_count()));
  add_common(ver, o, false, {"json", "text"});
  ver->callback([&] {
    const auto rs = run_suite(o.seed, criterion);
    bool all = true;
    for (const auto& r : rs) all = all && r.pass;
    if (o.format == "text") {
      for (const auto& r : rs) std::cout << summary_line(r) << "\n";
    } else {
      emit(to_json(rs, o.seed));
    }
    if (!all) result = kCheckFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    emit({{"verdict", "fail"}, {"error", e.what()}});
    return kCheckFailed;
  }
  return result;
}
