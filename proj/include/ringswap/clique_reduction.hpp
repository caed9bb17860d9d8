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

#include "ringswap/core.hpp"

namespace ringswap {

namespace detail {

inline bool topology_is_clique(int n, const Topology& topo) {
  if (std::holds_alternative<CycleTopology>(topo)) return n == 3;
  const auto& edges = std::get<GeneralTopology>(topo).edges;
  std::vector<uint8_t> seen(static_cast<size_t>(n) * n, 0);
  int count = 0;
  for (auto [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= n || b >= n) return false;
    size_t k = static_cast<size_t>(std::min(a, b)) * n + std::max(a, b);
    if (seen[k]) continue;
    seen[k] = 1;
    ++count;
  }
  return count == n * (n - 1) / 2;
}

}  // namespace detail

/// Reachable Object on a clique reduced to Reachable Assignment on a clique:
/// every agent gets a copy; copies start with primed objects and finish among
/// themselves once the original instance has routed the queried object.
///
/// Output layout for input size n: agents 0..n-1 are the originals, agent
/// n+j is the copy of agent j; object n+k is the primed copy of object k.
/// The copy holding primed object n+k wants original k back, except the copy
/// of the queried agent (which only wants the queried object) and the copy
/// holding the queried object's prime (which wants the queried agent's
/// initial object). Remaining acceptances follow a fixed descending cyclic
/// order so the copies can always finish from any holding of unprimed
/// objects; the target assigns every agent its most preferred object.
inline Instance reduce_ro_to_ra(const ROInstance& ro) {
  const int n = ro.n;
  if (!detail::topology_is_clique(n, ro.topology))
    throw NotAClique("the reduction needs a clique input");
  if (ro.agent < 0 || ro.agent >= n || ro.object < 0 || ro.object >= n)
    throw MalformedInstance("queried agent or object out of range");

  const ObjectId wanted = ro.object;              // x_l
  const ObjectId agent_initial = ro.initial.object_at(ro.agent);
  const AgentId copy_of_agent = n + ro.agent;     // i'
  const AgentId wanted_prime_holder =
      n + ro.initial.holder_of(wanted);           // l' (holds prime of x_l)

  Instance out;
  out.n = 2 * n;
  GeneralTopology topo;
  for (AgentId a = 0; a < 2 * n; ++a)
    for (AgentId b = a + 1; b < 2 * n; ++b) topo.edges.emplace_back(a, b);
  out.topology = std::move(topo);

  std::vector<std::vector<ObjectId>> lists(2 * n);
  std::vector<ObjectId> initial(2 * n), target(2 * n);
  for (AgentId j = 0; j < n; ++j) {
    ObjectId held = ro.initial.object_at(j);
    initial[j] = held;
    initial[n + j] = n + held;
    // Originals keep their lists, topped by their copy's primed object.
    lists[j].push_back(n + held);
    for (ObjectId x : ro.prefs.list(j)) lists[j].push_back(x);
    target[j] = n + held;

    AgentId copy = n + j;
    if (copy == copy_of_agent) {
      lists[copy] = {wanted, n + held};
      target[copy] = wanted;
      continue;
    }
    // Head: the original of the held prime; for the copy holding the queried
    // object's prime, the queried agent's initial object instead.
    ObjectId head = copy == wanted_prime_holder ? agent_initial : held;
    lists[copy].push_back(head);
    // Descending cyclic completion over the other unprimed objects, skipping
    // the queried object (only the queried agent's copy accepts it).
    for (int step = 1; step < n; ++step) {
      ObjectId x = (head - step + n) % n;
      if (x == wanted || x == head) continue;
      lists[copy].push_back(x);
    }
    lists[copy].push_back(n + held);
    target[copy] = head;
  }

  out.prefs = PreferenceProfile(std::move(lists), 2 * n);
  out.initial = Assignment(std::move(initial));
  out.target = Assignment(std::move(target));
  validate_instance(out);
  return out;
}

}  // namespace ringswap
