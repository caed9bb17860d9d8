// Copyright 2025-2026 The ringswap developers
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

#include <fstream>

#include <json.hpp>

#include "ringswap/core.hpp"
#include "ringswap/cycle_geometry.hpp"
#include "ringswap/cycle_solver.hpp"
#include "ringswap/swap_dynamics.hpp"

namespace ringswap {

using json = nlohmann::json;

namespace detail {

inline int from_label(const json& j, bool one_indexed, const char* what) {
  if (!j.is_number_integer())
    throw MalformedInstance(std::string(what) + " must be an integer");
  return j.get<int>() - (one_indexed ? 1 : 0);
}

inline int to_label(int v, bool one_indexed) {
  return v + (one_indexed ? 1 : 0);
}

}  // namespace detail

/// Instance files: {"n": int, "topology": "cycle" | {"edges": [[i,j],...]},
/// "preferences": [[obj,...],...], "initial": [obj,...], "target": [obj,...]},
/// arrays ordered by agent index. Labels are 0-indexed unless one_indexed.
inline Instance instance_from_json(const json& j, bool one_indexed = false) {
  if (!j.is_object()) throw MalformedInstance("instance must be a JSON object");
  for (const char* key : {"n", "topology", "preferences", "initial", "target"})
    if (!j.contains(key))
      throw MalformedInstance(std::string("missing field \"") + key + "\"");
  Instance inst;
  inst.n = j.at("n").get<int>();
  if (inst.n <= 0) throw MalformedInstance("n must be positive");
  const json& topo = j.at("topology");
  if (topo.is_string() && topo.get<std::string>() == "cycle") {
    inst.topology = CycleTopology{};
  } else if (topo.is_object() && topo.contains("edges")) {
    GeneralTopology gt;
    for (const json& e : topo.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw MalformedInstance("edges must be pairs");
      gt.edges.emplace_back(detail::from_label(e[0], one_indexed, "edge"),
                            detail::from_label(e[1], one_indexed, "edge"));
    }
    inst.topology = std::move(gt);
  } else {
    throw MalformedInstance("topology must be \"cycle\" or {\"edges\": ...}");
  }

  auto read_assignment = [&](const char* key) {
    const json& arr = j.at(key);
    if (!arr.is_array() || static_cast<int>(arr.size()) != inst.n)
      throw MalformedInstance(std::string(key) + " must list n objects");
    std::vector<ObjectId> v;
    for (const json& x : arr)
      v.push_back(detail::from_label(x, one_indexed, key));
    return Assignment(std::move(v));
  };

  const json& prefs = j.at("preferences");
  if (!prefs.is_array() || static_cast<int>(prefs.size()) != inst.n)
    throw MalformedInstance("preferences must list n agent lists");
  std::vector<std::vector<ObjectId>> lists;
  for (const json& lj : prefs) {
    if (!lj.is_array()) throw MalformedInstance("preference list must be an array");
    std::vector<ObjectId> list;
    for (const json& x : lj)
      list.push_back(detail::from_label(x, one_indexed, "preference"));
    lists.push_back(std::move(list));
  }
  inst.prefs = PreferenceProfile(std::move(lists), inst.n);
  inst.initial = read_assignment("initial");
  inst.target = read_assignment("target");
  validate_instance(inst);
  return inst;
}

inline json instance_to_json(const Instance& inst, bool one_indexed = false) {
  json j;
  j["n"] = inst.n;
  if (inst.is_cycle()) {
    j["topology"] = "cycle";
  } else {
    json edges = json::array();
    for (auto [a, b] : std::get<GeneralTopology>(inst.topology).edges)
      edges.push_back({detail::to_label(a, one_indexed),
                       detail::to_label(b, one_indexed)});
    j["topology"] = {{"edges", edges}};
  }
  json prefs = json::array();
  for (AgentId i = 0; i < inst.n; ++i) {
    json list = json::array();
    for (ObjectId x : inst.prefs.list(i))
      list.push_back(detail::to_label(x, one_indexed));
    prefs.push_back(list);
  }
  j["preferences"] = prefs;
  json initial = json::array(), target = json::array();
  for (AgentId i = 0; i < inst.n; ++i) {
    initial.push_back(detail::to_label(inst.initial.object_at(i), one_indexed));
    target.push_back(detail::to_label(inst.target.object_at(i), one_indexed));
  }
  j["initial"] = initial;
  j["target"] = target;
  return j;
}

/// Reachable-object files: an instance without "target", plus "agent" and
/// "object".
inline ROInstance ro_from_json(const json& j, bool one_indexed = false) {
  json base = j;
  base["target"] = base.at("initial");  // placeholder for shared parsing
  Instance inst = instance_from_json(base, one_indexed);
  ROInstance ro;
  ro.n = inst.n;
  ro.topology = inst.topology;
  ro.prefs = inst.prefs;
  ro.initial = inst.initial;
  if (!j.contains("agent") || !j.contains("object"))
    throw MalformedInstance("reachable-object input needs agent and object");
  ro.agent = detail::from_label(j.at("agent"), one_indexed, "agent");
  ro.object = detail::from_label(j.at("object"), one_indexed, "object");
  if (ro.agent < 0 || ro.agent >= ro.n || ro.object < 0 || ro.object >= ro.n)
    throw MalformedInstance("agent or object out of range");
  return ro;
}

inline json trace_to_json(const SwapTrace& trace, bool one_indexed = false) {
  json arr = json::array();
  for (const Swap& s : trace.swaps)
    arr.push_back({{"a", detail::to_label(s.a, one_indexed)},
                   {"b", detail::to_label(s.b, one_indexed)},
                   {"oa", detail::to_label(s.oa, one_indexed)},
                   {"ob", detail::to_label(s.ob, one_indexed)}});
  return arr;
}

inline std::vector<Swap> swaps_from_json(const json& j,
                                         bool one_indexed = false) {
  std::vector<Swap> swaps;
  for (const json& sj : j)
    swaps.push_back(Swap{detail::from_label(sj.at("a"), one_indexed, "a"),
                         detail::from_label(sj.at("b"), one_indexed, "b"),
                         detail::from_label(sj.at("oa"), one_indexed, "oa"),
                         detail::from_label(sj.at("ob"), one_indexed, "ob")});
  return swaps;
}

inline json solve_result_to_json(const SolveResult& res, int n,
                                 bool one_indexed = false) {
  json j;
  j["answer"] = res.yes ? "yes" : "no";
  if (res.first_swap_edge) {
    EdgeId e = *res.first_swap_edge;
    j["first_swap_edge"] = {detail::to_label(e, one_indexed),
                            detail::to_label(cw_next(e, n), one_indexed)};
  } else {
    j["first_swap_edge"] = nullptr;
  }
  if (res.selection) {
    json sel = json::array();
    for (uint8_t b : *res.selection) sel.push_back(static_cast<int>(b));
    j["selection"] = sel;
  } else {
    j["selection"] = nullptr;
  }
  j["trace"] = res.trace ? trace_to_json(*res.trace, one_indexed)
                         : json(nullptr);
  j["guesses_examined"] = res.guesses_examined;
  return j;
}

/// Candidate-table dump backing the inspect command.
inline json candidate_table_to_json(const Instance& inst,
                                    const CandidateTable& table,
                                    bool one_indexed = false) {
  json objects = json::array();
  for (ObjectId p = 0; p < inst.n; ++p) {
    json entry;
    entry["object"] = detail::to_label(p, one_indexed);
    entry["initial_agent"] = detail::to_label(inst.initial.holder_of(p),
                                              one_indexed);
    entry["target_agent"] = detail::to_label(inst.target.holder_of(p),
                                             one_indexed);
    json edges = json::array();
    for (EdgeId e = 0; e < inst.n; ++e) {
      if (table.direction(p, e) < 0) continue;
      json ej;
      ej["edge"] = {detail::to_label(e, one_indexed),
                    detail::to_label(cw_next(e, inst.n), one_indexed)};
      ej["direction"] = static_cast<int>(table.direction(p, e));
      json cands = json::array();
      for (ObjectId q : table.candidates(p, e))
        cands.push_back(detail::to_label(q, one_indexed));
      ej["candidates"] = cands;
      edges.push_back(ej);
    }
    entry["edges"] = edges;
    objects.push_back(entry);
  }
  return json{{"objects", objects}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

}  // namespace ringswap
