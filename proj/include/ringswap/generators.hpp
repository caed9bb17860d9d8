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

/// splitmix64; self-contained so generated instances are byte-stable across
/// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = (0ULL - bound) % bound;
    while (true) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

 private:
  uint64_t state_;
};

/// Random cycle instance: random bijections plus random strict sublists that
/// always rank the agent's target and initial objects, Rule-1 normalized.
/// Yes/no mix is whatever falls out.
inline Instance generate_random_instance(int n, uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.n = n;
  inst.topology = CycleTopology{};

  std::vector<ObjectId> initial(n), target(n);
  for (int i = 0; i < n; ++i) initial[i] = target[i] = i;
  rng.shuffle(initial);
  rng.shuffle(target);

  std::vector<std::vector<ObjectId>> lists(n);
  std::vector<ObjectId> pool(n);
  for (int x = 0; x < n; ++x) pool[x] = x;
  for (AgentId i = 0; i < n; ++i) {
    rng.shuffle(pool);
    auto& list = lists[i];
    for (ObjectId x : pool) {
      if (x == target[i] || x == initial[i] || rng.chance(0.5))
        list.push_back(x);
    }
  }
  inst.prefs = PreferenceProfile(std::move(lists), n);
  inst.initial = Assignment(std::move(initial));
  inst.target = Assignment(std::move(target));
  return apply_rule_1(inst);
}

/// Yes-guaranteed cycle instance: runs a random forward walk of rational
/// swaps, growing preference lists on demand (a new object is only inserted
/// directly above the holder's current object, which keeps the final object
/// at the head after Rule 1); the end state is declared the target, so the
/// walk itself is the witness.
inline Instance generate_yes_instance(int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<ObjectId> initial(n);
  for (int i = 0; i < n; ++i) initial[i] = i;
  rng.shuffle(initial);

  std::vector<std::vector<ObjectId>> lists(n);
  std::vector<ObjectId> at(initial);
  for (AgentId i = 0; i < n; ++i) lists[i] = {at[i]};

  auto rank_of = [&](AgentId i, ObjectId x) -> int {
    for (size_t r = 0; r < lists[i].size(); ++r)
      if (lists[i][r] == x) return static_cast<int>(r);
    return -1;
  };
  // Whether agent i would accept x over its current object, inserting x into
  // its list directly above the current object when the coin allows.
  auto accepts = [&](AgentId i, ObjectId x) {
    int rx = rank_of(i, x);
    int rcur = rank_of(i, at[i]);
    if (rx >= 0) return rx < rcur;
    if (!rng.chance(0.6)) return false;
    lists[i].insert(lists[i].begin() + rcur, x);
    return true;
  };

  int steps = 2 * n + rng.range(0, 2 * n);
  for (int s = 0; s < steps; ++s) {
    AgentId i = rng.range(0, n - 1);
    AgentId j = cw_next(i, n);
    // Evaluate both sides; list growth only sticks when the swap happens, so
    // snapshot and roll back a one-sided acceptance.
    auto saved_i = lists[i];
    auto saved_j = lists[j];
    bool ok = accepts(i, at[j]);
    if (ok && !accepts(j, at[i])) {
      lists[i] = std::move(saved_i);
      lists[j] = std::move(saved_j);
      ok = false;
    } else if (!ok) {
      lists[i] = std::move(saved_i);
    }
    if (ok) std::swap(at[i], at[j]);
  }

  Instance inst;
  inst.n = n;
  inst.topology = CycleTopology{};
  inst.prefs = PreferenceProfile(std::move(lists), n);
  inst.initial = Assignment(std::move(initial));
  inst.target = Assignment(std::move(at));
  return apply_rule_1(inst);
}

/// Random clique reachable-object instance; lists always rank the held
/// object.
inline ROInstance generate_random_clique_ro(int n, uint64_t seed) {
  Rng rng(seed);
  ROInstance ro;
  ro.n = n;
  GeneralTopology topo;
  for (AgentId a = 0; a < n; ++a)
    for (AgentId b = a + 1; b < n; ++b) topo.edges.emplace_back(a, b);
  ro.topology = std::move(topo);

  std::vector<ObjectId> initial(n);
  for (int i = 0; i < n; ++i) initial[i] = i;
  rng.shuffle(initial);
  std::vector<std::vector<ObjectId>> lists(n);
  std::vector<ObjectId> pool(n);
  for (int x = 0; x < n; ++x) pool[x] = x;
  for (AgentId i = 0; i < n; ++i) {
    rng.shuffle(pool);
    for (ObjectId x : pool)
      if (x == initial[i] || rng.chance(0.55)) lists[i].push_back(x);
  }
  ro.prefs = PreferenceProfile(std::move(lists), n);
  ro.initial = Assignment(std::move(initial));
  ro.agent = rng.range(0, n - 1);
  ro.object = rng.range(0, n - 1);
  return ro;
}

}  // namespace ringswap
