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

#include <unordered_map>

#include "ringswap/cycle_geometry.hpp"
#include "ringswap/swap_dynamics.hpp"

namespace ringswap {

struct OracleOptions {
  int cap = 8;              // refuse larger instances unless overridden
  bool allow_large = false;
};

struct OracleAnswer {
  bool reachable = false;
  std::optional<SwapTrace> trace;  // shortest witness, RA mode only
  size_t states_explored = 0;
};

namespace detail {

// Packed permutation key, 4 bits per agent. The oracle is a ground-truth
// search for toy sizes; 16 agents is far beyond anything it should visit.
inline uint64_t pack_state(const std::vector<ObjectId>& at) {
  uint64_t key = 0;
  for (size_t i = 0; i < at.size(); ++i)
    key |= static_cast<uint64_t>(at[i]) << (4 * i);
  return key;
}

inline void check_cap(int n, const OracleOptions& opts) {
  if (n > 16)
    throw InstanceTooLarge("oracle state packing supports at most 16 agents");
  if (!opts.allow_large && n > opts.cap)
    throw InstanceTooLarge("instance exceeds the oracle cap of " +
                           std::to_string(opts.cap));
}

// Edge list of the topology, as agent pairs.
inline std::vector<std::pair<AgentId, AgentId>> topology_edges(
    const Instance& inst) {
  if (!inst.is_cycle()) return std::get<GeneralTopology>(inst.topology).edges;
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (AgentId i = 0; i < inst.n; ++i) edges.emplace_back(i, cw_next(i, inst.n));
  return edges;
}

}  // namespace detail

/// Breadth-first exploration of the reconfiguration graph from sigma_0 over
/// rational swaps. Yes iff sigma is visited; the returned trace is shortest.
inline OracleAnswer oracle_reachable_assignment(const Instance& raw,
                                                const OracleOptions& opts = {}) {
  detail::check_cap(raw.n, opts);
  Instance inst = apply_rule_1(raw);
  const int n = inst.n;
  auto edges = detail::topology_edges(inst);

  OracleAnswer ans;
  std::vector<ObjectId> start(inst.initial.objects());
  uint64_t goal = detail::pack_state(inst.target.objects());
  // parent state and the swap taken, for witness reconstruction
  std::unordered_map<uint64_t, std::pair<uint64_t, Swap>> parent;
  std::vector<uint64_t> frontier{detail::pack_state(start)};
  parent.emplace(frontier.front(), std::make_pair(frontier.front(), Swap{}));

  auto unpack = [n](uint64_t key) {
    std::vector<ObjectId> at(n);
    for (int i = 0; i < n; ++i) at[i] = static_cast<int>((key >> (4 * i)) & 15);
    return at;
  };

  bool found = frontier.front() == goal;
  while (!frontier.empty() && !found) {
    std::vector<uint64_t> next;
    for (uint64_t key : frontier) {
      std::vector<ObjectId> at = unpack(key);
      Assignment state(at);
      for (auto [i, j] : edges) {
        if (!is_rational_swap(state, i, j, inst)) continue;
        std::swap(at[i], at[j]);
        uint64_t nk = detail::pack_state(at);
        if (!parent.count(nk)) {
          parent.emplace(nk, std::make_pair(key, Swap{i, j, at[j], at[i]}));
          next.push_back(nk);
          if (nk == goal) {
            found = true;
          }
        }
        std::swap(at[i], at[j]);
        if (found) break;
      }
      if (found) break;
    }
    if (parent.size() > 4000000)
      throw InstanceTooLarge("oracle exceeded its state budget");
    frontier = std::move(next);
  }
  ans.states_explored = parent.size();
  if (!parent.count(goal)) return ans;

  ans.reachable = true;
  std::vector<Swap> swaps;
  for (uint64_t key = goal; ; ) {
    auto [prev, swap] = parent.at(key);
    if (prev == key) break;
    swaps.push_back(swap);
    key = prev;
  }
  std::reverse(swaps.begin(), swaps.end());
  ans.trace = SwapTrace{std::move(swaps), inst.initial, inst.target};
  return ans;
}

/// Reachable-object search: Yes iff some reachable state assigns the queried
/// object to the queried agent. No Rule 1 (there is no target assignment).
inline OracleAnswer oracle_reachable_object(const ROInstance& ro,
                                            const OracleOptions& opts = {}) {
  detail::check_cap(ro.n, opts);
  Instance inst;
  inst.n = ro.n;
  inst.topology = ro.topology;
  inst.prefs = ro.prefs;
  inst.initial = ro.initial;
  inst.target = ro.initial;  // unused by the search below
  auto edges = detail::topology_edges(inst);

  OracleAnswer ans;
  std::vector<ObjectId> start(inst.initial.objects());
  std::unordered_map<uint64_t, uint8_t> seen;
  std::vector<uint64_t> frontier{detail::pack_state(start)};
  seen.emplace(frontier.front(), 1);

  auto unpack = [n = inst.n](uint64_t key) {
    std::vector<ObjectId> at(n);
    for (int i = 0; i < n; ++i) at[i] = static_cast<int>((key >> (4 * i)) & 15);
    return at;
  };
  auto satisfied = [&](const std::vector<ObjectId>& at) {
    return at[ro.agent] == ro.object;
  };

  if (satisfied(start)) {
    ans.reachable = true;
    ans.states_explored = 1;
    return ans;
  }
  while (!frontier.empty() && !ans.reachable) {
    std::vector<uint64_t> next;
    for (uint64_t key : frontier) {
      std::vector<ObjectId> at = unpack(key);
      Assignment state(at);
      for (auto [i, j] : edges) {
        if (!is_rational_swap(state, i, j, inst)) continue;
        std::swap(at[i], at[j]);
        uint64_t nk = detail::pack_state(at);
        if (!seen.count(nk)) {
          seen.emplace(nk, 1);
          next.push_back(nk);
          if (satisfied(at)) ans.reachable = true;
        }
        std::swap(at[i], at[j]);
        if (ans.reachable) break;
      }
      if (ans.reachable) break;
    }
    frontier = std::move(next);
  }
  ans.states_explored = seen.size();
  return ans;
}

/// All selections Greedy Swap succeeds on; ground truth for the
/// characterization tests. Exponential in n.
inline std::vector<Selection> enumerate_valid_selections(const Instance& raw,
                                                         int cap = 14) {
  if (raw.n > cap)
    throw InstanceTooLarge("selection enumeration capped at n = " +
                           std::to_string(cap));
  Instance inst = apply_rule_1(raw);
  std::vector<Selection> out;
  for (uint64_t bits = 0; bits < (uint64_t{1} << inst.n); ++bits) {
    Selection gamma(inst.n);
    for (int p = 0; p < inst.n; ++p) gamma[p] = (bits >> p) & 1;
    if (greedy_swap(inst, gamma).yields) out.push_back(std::move(gamma));
  }
  return out;
}

}  // namespace ringswap
