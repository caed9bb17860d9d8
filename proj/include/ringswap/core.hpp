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

#include <algorithm>
#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ringswap {

using AgentId = int;
using ObjectId = int;
// Edge e of the cycle joins agents e and (e+1) mod n.
using EdgeId = int;

// Direction bits per object: 1 = clockwise, 0 = counter-clockwise.
using Selection = std::vector<uint8_t>;

struct MalformedInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TopologyMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotDivisible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InstanceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAClique : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int cw_distance(AgentId from, AgentId to, int n) {
  int d = (to - from) % n;
  return d < 0 ? d + n : d;
}

inline int ccw_distance(AgentId from, AgentId to, int n) {
  return cw_distance(to, from, n);
}

inline AgentId cw_next(AgentId a, int n) { return a + 1 == n ? 0 : a + 1; }
inline AgentId cw_prev(AgentId a, int n) { return a == 0 ? n - 1 : a - 1; }

/// Clockwise agent sequence from a to b, both inclusive; length 1 when a == b.
inline std::vector<AgentId> cycseq(AgentId a, AgentId b, int n) {
  if (n < 3) throw std::invalid_argument("cycseq: cycle needs n >= 3");
  std::vector<AgentId> seq;
  seq.reserve(cw_distance(a, b, n) + 1);
  AgentId v = a;
  seq.push_back(v);
  while (v != b) {
    v = cw_next(v, n);
    seq.push_back(v);
  }
  return seq;
}

/// Strict preference lists, one per agent, most-preferred first.
///
/// An object absent from an agent's list is never accepted by that agent and
/// an agent holding an unlisted object never trades it away: prefers(i, a, b)
/// holds only when b is ranked and a is ranked strictly above it.
class PreferenceProfile {
 public:
  static constexpr int kUnranked = INT_MAX / 2;

  PreferenceProfile() = default;

  PreferenceProfile(std::vector<std::vector<ObjectId>> lists, int n_objects)
      : lists_(std::move(lists)), n_objects_(n_objects) {
    rank_.assign(static_cast<size_t>(lists_.size()) * n_objects_, kUnranked);
    for (size_t i = 0; i < lists_.size(); ++i) {
      if (lists_[i].empty())
        throw MalformedInstance("agent " + std::to_string(i) +
                                " has an empty preference list");
      for (size_t r = 0; r < lists_[i].size(); ++r) {
        ObjectId x = lists_[i][r];
        if (x < 0 || x >= n_objects_)
          throw MalformedInstance("agent " + std::to_string(i) +
                                  " ranks out-of-range object " +
                                  std::to_string(x));
        int& slot = rank_[i * n_objects_ + x];
        if (slot != kUnranked)
          throw MalformedInstance("agent " + std::to_string(i) +
                                  " ranks object " + std::to_string(x) +
                                  " twice");
        slot = static_cast<int>(r);
      }
    }
  }

  int agents() const { return static_cast<int>(lists_.size()); }
  int objects() const { return n_objects_; }

  const std::vector<ObjectId>& list(AgentId i) const { return lists_[i]; }
  const std::vector<std::vector<ObjectId>>& lists() const { return lists_; }

  int rank(AgentId i, ObjectId x) const {
    return rank_[static_cast<size_t>(i) * n_objects_ + x];
  }
  bool ranks(AgentId i, ObjectId x) const { return rank(i, x) != kUnranked; }

  /// Strictly prefers a over b; requires b ranked (see class comment).
  bool prefers(AgentId i, ObjectId a, ObjectId b) const {
    int rb = rank(i, b);
    return rb != kUnranked && rank(i, a) < rb;
  }

 private:
  std::vector<std::vector<ObjectId>> lists_;
  int n_objects_ = 0;
  std::vector<int> rank_;  // agents x objects
};

/// A bijection agents -> objects with O(1) inverse lookup.
class Assignment {
 public:
  Assignment() = default;

  explicit Assignment(std::vector<ObjectId> holdings)
      : to_object_(std::move(holdings)) {
    int n = static_cast<int>(to_object_.size());
    to_agent_.assign(n, -1);
    for (AgentId i = 0; i < n; ++i) {
      ObjectId x = to_object_[i];
      if (x < 0 || x >= n)
        throw MalformedInstance("assignment maps agent " + std::to_string(i) +
                                " to out-of-range object " + std::to_string(x));
      if (to_agent_[x] != -1)
        throw MalformedInstance("assignment is not a bijection: object " +
                                std::to_string(x) + " held twice");
      to_agent_[x] = i;
    }
  }

  int size() const { return static_cast<int>(to_object_.size()); }
  ObjectId object_at(AgentId i) const { return to_object_[i]; }
  AgentId holder_of(ObjectId x) const { return to_agent_[x]; }
  const std::vector<ObjectId>& objects() const { return to_object_; }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.to_object_ == b.to_object_;
  }

 private:
  std::vector<ObjectId> to_object_;
  std::vector<AgentId> to_agent_;
};

struct CycleTopology {};

struct GeneralTopology {
  // Simple undirected edges, endpoints in [0, n).
  std::vector<std::pair<AgentId, AgentId>> edges;
};

using Topology = std::variant<CycleTopology, GeneralTopology>;

struct Instance {
  int n = 0;
  Topology topology;
  PreferenceProfile prefs;
  Assignment initial;  // sigma_0
  Assignment target;   // sigma

  bool is_cycle() const {
    return std::holds_alternative<CycleTopology>(topology);
  }

  bool adjacent(AgentId i, AgentId j) const {
    if (i == j) return false;
    if (is_cycle()) return j == cw_next(i, n) || j == cw_prev(i, n);
    const auto& edges = std::get<GeneralTopology>(topology).edges;
    for (auto [a, b] : edges)
      if ((a == i && b == j) || (a == j && b == i)) return true;
    return false;
  }
};

/// Reachable-object query: no target assignment, instead an (agent, object)
/// pair to reach.
struct ROInstance {
  int n = 0;
  Topology topology;
  PreferenceProfile prefs;
  Assignment initial;
  AgentId agent = 0;
  ObjectId object = 0;
};

inline void validate_instance(const Instance& inst) {
  if (inst.is_cycle() && inst.n < 3)
    throw MalformedInstance("cycle instances need n >= 3");
  if (inst.n <= 0) throw MalformedInstance("instance needs n >= 1");
  if (inst.prefs.agents() != inst.n || inst.prefs.objects() != inst.n ||
      inst.initial.size() != inst.n || inst.target.size() != inst.n)
    throw MalformedInstance("component sizes disagree with n");
  if (!inst.is_cycle()) {
    const auto& edges = std::get<GeneralTopology>(inst.topology).edges;
    for (auto [a, b] : edges) {
      if (a == b) throw MalformedInstance("self-loop in topology");
      if (a < 0 || a >= inst.n || b < 0 || b >= inst.n)
        throw MalformedInstance("edge endpoint out of range");
    }
  }
}

inline bool is_clique(const Instance& inst) {
  if (inst.is_cycle()) return inst.n == 3;
  std::vector<uint8_t> seen(static_cast<size_t>(inst.n) * inst.n, 0);
  int count = 0;
  const auto& edges = std::get<GeneralTopology>(inst.topology).edges;
  for (auto [a, b] : edges) {
    size_t k1 = static_cast<size_t>(a) * inst.n + b;
    size_t k2 = static_cast<size_t>(b) * inst.n + a;
    if (seen[k1]) continue;
    seen[k1] = seen[k2] = 1;
    ++count;
  }
  return count == inst.n * (inst.n - 1) / 2;
}

/// Removes, for every agent, all objects it prefers strictly over its target
/// object. Idempotent. Throws MalformedInstance when some agent's target is
/// missing from its list.
inline Instance apply_rule_1(const Instance& inst) {
  std::vector<std::vector<ObjectId>> lists;
  lists.reserve(inst.n);
  for (AgentId i = 0; i < inst.n; ++i) {
    ObjectId t = inst.target.object_at(i);
    if (!inst.prefs.ranks(i, t))
      throw MalformedInstance("agent " + std::to_string(i) +
                              " does not rank its target object " +
                              std::to_string(t));
    int rt = inst.prefs.rank(i, t);
    const auto& full = inst.prefs.list(i);
    lists.emplace_back(full.begin() + rt, full.end());
  }
  Instance out = inst;
  out.prefs = PreferenceProfile(std::move(lists), inst.n);
  return out;
}

/// After Rule 1, a reachable instance needs every agent to weakly prefer its
/// target over its initial object; otherwise the answer is No outright.
inline bool targets_weakly_preferred(const Instance& inst) {
  for (AgentId i = 0; i < inst.n; ++i) {
    ObjectId init = inst.initial.object_at(i);
    if (init != inst.target.object_at(i) && !inst.prefs.ranks(i, init))
      return false;
  }
  return true;
}

}  // namespace ringswap
