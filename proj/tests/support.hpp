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

#include <map>
#include <set>

#include "ringswap/ringswap.hpp"

namespace ringswap::testing {

inline Instance make_cycle_instance(int n,
                                    std::vector<std::vector<ObjectId>> lists,
                                    std::vector<ObjectId> initial,
                                    std::vector<ObjectId> target) {
  Instance inst;
  inst.n = n;
  inst.topology = CycleTopology{};
  inst.prefs = PreferenceProfile(std::move(lists), n);
  inst.initial = Assignment(std::move(initial));
  inst.target = Assignment(std::move(target));
  validate_instance(inst);
  return inst;
}

/// Triangle: agent 0 wants x2, agent 1 wants x3, agent 2 wants x1; everyone
/// starts on their own object. Yes via two swaps.
inline Instance fig1() {
  return make_cycle_instance(3, {{1, 0}, {2, 1}, {0, 1, 2}}, {0, 1, 2},
                             {1, 2, 0});
}

/// fig1 with agent 2's list truncated so x2 cannot route through it: a No.
inline Instance fig1_truncated() {
  return make_cycle_instance(3, {{1, 0}, {2, 1}, {0, 2}}, {0, 1, 2},
                             {1, 2, 0});
}

/// Square example with candidate lists C(x1,e) = {x2,x3}, C(x1,f) = {x4}.
inline Instance fig3() {
  return make_cycle_instance(
      4, {{2, 1, 0}, {0, 2, 3, 1}, {3, 0, 2}, {1, 2, 3}}, {0, 1, 2, 3},
      {2, 0, 3, 1});
}

/// Regression fixture: two clockwise objects where the naive shield witness
/// (q's own destination agent = p's start) fires although the selection
/// (1,1,0,0) yields the target.
inline Instance shield_witness_regression() {
  // agents 0..3; p=obj0 spans the whole cycle, q=obj2 ends at p's start.
  return make_cycle_instance(4,
                             {{2, 1, 0},        // agent 0: q > r1 > p
                              {3, 0, 1},        // agent 1: r2 > p > r1
                              {1, 0, 3, 2},     // agent 2: r1 > p > r2 > q
                              {0, 1, 2, 3}},    // agent 3: p > r1 > q > r2
                             {0, 1, 2, 3}, {2, 3, 1, 0});
}

inline Selection selection_from_bits(uint64_t bits, int n) {
  Selection gamma(n);
  for (int p = 0; p < n; ++p) gamma[p] = (bits >> p) & 1;
  return gamma;
}

/// Ground truth for "gamma yields sigma": exhaustive search over rational
/// swap sequences in which each object only ever moves in its assigned
/// direction. Independent of the greedy loop.
inline bool yields_by_search(const Instance& inst, const Selection& gamma) {
  const int n = inst.n;
  if (inst.initial == inst.target) return true;
  std::set<std::vector<ObjectId>> seen;
  std::vector<std::vector<ObjectId>> frontier{inst.initial.objects()};
  seen.insert(frontier.front());
  const std::vector<ObjectId> goal = inst.target.objects();
  while (!frontier.empty()) {
    std::vector<std::vector<ObjectId>> next;
    for (const auto& at : frontier) {
      Assignment state(at);
      for (AgentId i = 0; i < n; ++i) {
        AgentId j = cw_next(i, n);
        // the swap moves at[i] clockwise and at[j] counter-clockwise
        if (gamma[at[i]] != 1 || gamma[at[j]] != 0) continue;
        if (!is_rational_swap(state, i, j, inst)) continue;
        auto moved = at;
        std::swap(moved[i], moved[j]);
        if (moved == goal) return true;
        if (seen.insert(moved).second) next.push_back(moved);
      }
    }
    frontier = std::move(next);
  }
  return false;
}

/// Brute-force 2-SAT ground truth.
inline std::optional<std::vector<uint8_t>> brute_force_sat(
    const TwoSatFormula& f) {
  const int n = f.variables();
  for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
    std::vector<uint8_t> a(n);
    for (int v = 0; v < n; ++v) a[v] = (bits >> v) & 1;
    if (satisfies(f, a)) return a;
  }
  return std::nullopt;
}

/// All selections of an instance satisfying a predicate, as a set of bit
/// vectors (for set-equality assertions).
template <typename Pred>
inline std::set<std::vector<uint8_t>> selections_where(int n, Pred pred) {
  std::set<std::vector<uint8_t>> out;
  for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
    Selection gamma = selection_from_bits(bits, n);
    if (pred(gamma)) out.insert(gamma);
  }
  return out;
}

}  // namespace ringswap::testing
