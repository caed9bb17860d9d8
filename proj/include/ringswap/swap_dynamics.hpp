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

#include <functional>
#include <optional>

#include "ringswap/core.hpp"

namespace ringswap {

struct Swap {
  AgentId a = 0;
  AgentId b = 0;
  ObjectId oa = 0;  // held by a before the swap
  ObjectId ob = 0;  // held by b before the swap

  friend bool operator==(const Swap&, const Swap&) = default;
};

struct SwapTrace {
  std::vector<Swap> swaps;
  Assignment start;
  Assignment end;
};

/// True iff {i, j} is a topology edge and each agent strictly prefers the
/// other's current object over its own.
inline bool is_rational_swap(const Assignment& state, AgentId i, AgentId j,
                             const Instance& inst) {
  if (i == j || !inst.adjacent(i, j)) return false;
  ObjectId oi = state.object_at(i), oj = state.object_at(j);
  return inst.prefs.prefers(i, oj, oi) && inst.prefs.prefers(j, oi, oj);
}

/// Swap position on a cycle: p moves clockwise, q counter-clockwise, q sits on
/// the clockwise neighbor of p's holder, and neither object has arrived.
inline bool in_swap_position(const Assignment& state, ObjectId p, ObjectId q,
                             const Selection& gamma, const Instance& inst) {
  if (!inst.is_cycle()) throw TopologyMismatch("swap positions need a cycle");
  if (gamma[p] != 1 || gamma[q] != 0) return false;
  AgentId i = state.holder_of(p);
  AgentId j = cw_next(i, inst.n);
  if (state.object_at(j) != q) return false;
  return inst.target.object_at(i) != p && inst.target.object_at(j) != q;
}

enum class GreedyFailure {
  kAllSameDirection,
  kIrrationalMeeting,
  kStalledShortOfTarget,
};

struct GreedyResult {
  bool yields = false;
  std::optional<SwapTrace> trace;             // set when yields
  std::optional<GreedyFailure> failure;       // set when !yields
  std::optional<Swap> failing_pair;           // the irrational meeting, if any

  explicit operator bool() const { return yields; }
};

/// Tie-break hook: given the agents currently holding a clockwise object in
/// swap position (sorted ascending), returns the holder to swap next.
using SwapPicker = std::function<AgentId(const std::vector<AgentId>&)>;

/// Runs the greedy swap loop for a fixed selection: repeatedly swaps any pair
/// in swap position, failing on an irrational meeting. On loop exit the state
/// must equal the target or the selection does not yield it.
inline GreedyResult greedy_swap_with_policy(const Instance& inst,
                                            const Selection& gamma,
                                            const SwapPicker& pick) {
  if (!inst.is_cycle()) throw TopologyMismatch("greedy swap needs a cycle");
  const int n = inst.n;
  GreedyResult res;
  if (inst.initial == inst.target) {
    res.yields = true;
    res.trace = SwapTrace{{}, inst.initial, inst.target};
    return res;
  }
  bool all0 = true, all1 = true;
  for (ObjectId p = 0; p < n; ++p) (gamma[p] ? all0 : all1) = false;
  if (all0 || all1) {
    res.failure = GreedyFailure::kAllSameDirection;
    return res;
  }

  std::vector<ObjectId> at(inst.initial.objects());
  std::vector<Swap> swaps;
  std::vector<AgentId> candidates;

  const long long max_swaps = static_cast<long long>(n) * n;
  while (true) {
    candidates.clear();
    for (AgentId i = 0; i < n; ++i) {
      ObjectId p = at[i];
      if (gamma[p] != 1 || inst.target.object_at(i) == p) continue;
      AgentId j = cw_next(i, n);
      ObjectId q = at[j];
      if (gamma[q] != 0 || inst.target.object_at(j) == q) continue;
      candidates.push_back(i);
    }
    if (candidates.empty()) break;
    AgentId i = pick(candidates);
    AgentId j = cw_next(i, n);
    ObjectId p = at[i], q = at[j];
    if (!(inst.prefs.prefers(i, q, p) && inst.prefs.prefers(j, p, q))) {
      res.failure = GreedyFailure::kIrrationalMeeting;
      res.failing_pair = Swap{i, j, p, q};
      return res;
    }
    swaps.push_back(Swap{i, j, p, q});
    at[i] = q;
    at[j] = p;
    if (static_cast<long long>(swaps.size()) > max_swaps)
      throw std::logic_error("greedy swap exceeded the swap bound");
  }

  if (Assignment(at) == inst.target) {
    res.yields = true;
    res.trace = SwapTrace{std::move(swaps), inst.initial, inst.target};
  } else {
    res.failure = GreedyFailure::kStalledShortOfTarget;
  }
  return res;
}

/// Default deterministic tie-break: smallest holder index of the clockwise
/// object. Correctness is order-invariant; this pins the produced trace.
inline GreedyResult greedy_swap(const Instance& inst, const Selection& gamma) {
  return greedy_swap_with_policy(
      inst, gamma, [](const std::vector<AgentId>& c) { return c.front(); });
}

/// Independent witness checker: replays the trace from sigma_0, requiring
/// every step rational, and compares the final state with sigma.
inline bool verify_trace(const Instance& inst, const SwapTrace& trace) {
  if (!(trace.start == inst.initial)) return false;
  std::vector<ObjectId> at(trace.start.objects());
  for (const Swap& s : trace.swaps) {
    if (s.a < 0 || s.a >= inst.n || s.b < 0 || s.b >= inst.n) return false;
    if (at[s.a] != s.oa || at[s.b] != s.ob) return false;
    if (!is_rational_swap(Assignment(at), s.a, s.b, inst)) return false;
    std::swap(at[s.a], at[s.b]);
  }
  return Assignment(at) == inst.target && trace.end == inst.target;
}

}  // namespace ringswap
