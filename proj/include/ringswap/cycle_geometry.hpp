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

#include <array>
#include <cassert>

#include "ringswap/core.hpp"

namespace ringswap {

/// A path on the cycle in clockwise representation: agents start, start+1,
/// ..., start+len (mod n); len edges, len+1 agents. len == 0 is a single
/// agent.
struct ArcPath {
  AgentId start = 0;
  int len = 0;

  bool contains_agent(AgentId v, int n) const {
    return cw_distance(start, v, n) <= len;
  }
  bool contains_edge(EdgeId e, int n) const {
    return cw_distance(start, e, n) < len;
  }
  /// Arc containment: every agent of other lies on this arc.
  bool contains_arc(const ArcPath& other, int n) const {
    return cw_distance(start, other.start, n) + other.len <= len;
  }
  AgentId last(int n) const { return (start + len) % n; }

  friend bool operator==(const ArcPath&, const ArcPath&) = default;
};

/// The agents that hold object p in any direction-respecting sequence: from
/// p's initial agent to its target agent, walking in direction dir.
inline ArcPath object_path(const Instance& inst, ObjectId p, int dir) {
  AgentId i = inst.initial.holder_of(p);
  AgentId j = inst.target.holder_of(p);
  if (dir == 1) return {i, cw_distance(i, j, inst.n)};
  return {j, cw_distance(j, i, inst.n)};
}

/// Geometry of one object pair under opposed directions: the connected
/// components of the two paths' intersection, and per component the unique
/// preference-admissible swap edge when there is exactly one.
struct PairGeometry {
  int ncomps = 0;
  std::array<ArcPath, 2> comps{};
  // Unique swap edge per component; -1 when the component has zero or more
  // than one admissible edge (a defect: the combination cannot yield sigma).
  std::array<EdgeId, 2> swap_edge{-1, -1};
  bool defect = false;

  bool compatible() const { return !defect; }
};

/// Components plus admissible swap edges for (p moving dir_p, q moving
/// 1-dir_p). Two circular arcs intersect in at most two components.
inline PairGeometry analyze_pair(const Instance& inst, ObjectId p, ObjectId q,
                                 int dir_p) {
  const int n = inst.n;
  PairGeometry out;
  ArcPath ap = object_path(inst, p, dir_p);
  ArcPath aq = object_path(inst, q, 1 - dir_p);
  ObjectId cw_obj = dir_p == 1 ? p : q;
  ObjectId ccw_obj = dir_p == 1 ? q : p;

  auto shared_agent = [&](AgentId v) {
    return ap.contains_agent(v, n) && aq.contains_agent(v, n);
  };
  auto shared_edge = [&](EdgeId e) {
    return ap.contains_edge(e, n) && aq.contains_edge(e, n);
  };

  for (AgentId v = 0; v < n; ++v) {
    if (!shared_agent(v) || shared_edge(cw_prev(v, n))) continue;
    // v starts a component; extend along shared edges.
    ArcPath comp{v, 0};
    while (comp.len < n - 1 && shared_edge((v + comp.len) % n)) ++comp.len;
    if (out.ncomps == 2) throw std::logic_error("pair with >2 components");
    int admissible = 0;
    EdgeId found = -1;
    for (int k = 0; k < comp.len; ++k) {
      EdgeId e = (v + k) % n;
      AgentId a = e, b = cw_next(e, n);
      if (inst.prefs.prefers(a, ccw_obj, cw_obj) &&
          inst.prefs.prefers(b, cw_obj, ccw_obj)) {
        ++admissible;
        found = e;
      }
    }
    out.comps[out.ncomps] = comp;
    if (admissible == 1) {
      out.swap_edge[out.ncomps] = found;
    } else {
      out.defect = true;
    }
    ++out.ncomps;
  }
  return out;
}

/// The shared paths of p and q for a selection assigning p dir_p and q the
/// opposite direction. Spec-facing wrapper; throws when directions agree.
inline std::vector<ArcPath> shared_paths(ObjectId p, ObjectId q,
                                         const Selection& gamma,
                                         const Instance& inst) {
  if (gamma[p] == gamma[q])
    throw std::invalid_argument("shared paths need opposed directions");
  PairGeometry g = analyze_pair(inst, p, q, gamma[p]);
  return {g.comps.begin(), g.comps.begin() + g.ncomps};
}

/// Edges over which p and q can be swapped when p moves in dir_p: per shared
/// path, the unique admissible edge. Defective shared paths contribute none.
inline std::vector<EdgeId> swap_edges(ObjectId p, ObjectId q, int dir_p,
                                      const Instance& inst) {
  PairGeometry g = analyze_pair(inst, p, q, dir_p);
  std::vector<EdgeId> out;
  for (int k = 0; k < g.ncomps; ++k)
    if (g.swap_edge[k] >= 0) out.push_back(g.swap_edge[k]);
  return out;
}

/// Opposite pairs: some opposed direction assignment produces more than one
/// shared path.
inline bool is_opposite(ObjectId p, ObjectId q, const Instance& inst) {
  if (p == q) return false;
  return analyze_pair(inst, p, q, 1).ncomps > 1 ||
         analyze_pair(inst, p, q, 0).ncomps > 1;
}

/// Shield: with both objects assigned direction dir, q permanently blocks p
/// from reaching its target. Requires a shared agent that q reaches no later
/// than p does (at or beyond q's start along p's travel) and that prefers q
/// over p. Stationary q can block; stationary p needs no protection.
inline bool shields(ObjectId q, ObjectId p, int dir, const Instance& inst) {
  const int n = inst.n;
  if (p == q) return false;
  AgentId sp = inst.initial.holder_of(p), jp = inst.target.holder_of(p);
  if (sp == jp) return false;  // p stationary
  AgentId sq = inst.initial.holder_of(q);
  auto pos = [&](AgentId from, AgentId to) {
    return dir == 1 ? cw_distance(from, to, n) : ccw_distance(from, to, n);
  };
  if (pos(sp, sq) >= pos(sp, jp)) return false;  // q not before p's target
  ArcPath pp = object_path(inst, p, dir);
  ArcPath pq = object_path(inst, q, dir);
  for (int k = 0; k <= pq.len; ++k) {
    AgentId z = (pq.start + k) % n;
    if (!pp.contains_agent(z, n)) continue;
    // q must reach z before p: z lies at or beyond q's start along p's travel.
    if (pos(sp, z) < pos(sp, sq)) continue;
    if (inst.prefs.prefers(z, q, p)) return true;
  }
  return false;
}

/// Compatibility of an opposed pair: every shared path carries exactly one
/// admissible swap edge.
inline bool compatible(ObjectId p, ObjectId q, int dir_p,
                       const Instance& inst) {
  return analyze_pair(inst, p, q, dir_p).compatible();
}

/// Candidate lists C(p,e) plus the direction d(p,e) in which edge e lies on
/// p's path. Stationary objects have no entries (direction -1 everywhere).
struct CandidateTable {
  int n = 0;
  std::vector<int8_t> d;  // [p*n + e]
  std::vector<std::vector<std::vector<ObjectId>>> lists;  // [p][e]

  int8_t direction(ObjectId p, EdgeId e) const {
    return d[static_cast<size_t>(p) * n + e];
  }
  const std::vector<ObjectId>& candidates(ObjectId p, EdgeId e) const {
    return lists[p][e];
  }
};

inline CandidateTable build_candidate_table(const Instance& inst) {
  const int n = inst.n;
  CandidateTable t;
  t.n = n;
  t.d.assign(static_cast<size_t>(n) * n, -1);
  t.lists.assign(n, std::vector<std::vector<ObjectId>>(n));
  for (ObjectId p = 0; p < n; ++p) {
    if (inst.initial.holder_of(p) == inst.target.holder_of(p)) continue;
    ArcPath cw = object_path(inst, p, 1);
    for (EdgeId e = 0; e < n; ++e)
      t.d[static_cast<size_t>(p) * n + e] = cw.contains_edge(e, n) ? 1 : 0;
    for (int dir = 0; dir < 2; ++dir) {
      for (ObjectId q = 0; q < n; ++q) {
        if (q == p) continue;
        PairGeometry g = analyze_pair(inst, p, q, dir);
        for (int k = 0; k < g.ncomps; ++k)
          if (g.swap_edge[k] >= 0) t.lists[p][g.swap_edge[k]].push_back(q);
      }
    }
    for (EdgeId e = 0; e < n; ++e)
      std::sort(t.lists[p][e].begin(), t.lists[p][e].end());
  }
  return t;
}

/// Candidate-list size under a selection: the opposed-candidate count when e
/// lies on p's selected path, 1 otherwise.
inline int f_gamma(ObjectId p, EdgeId e, const Selection& gamma,
                   const CandidateTable& table) {
  if (table.direction(p, e) != static_cast<int8_t>(gamma[p])) return 1;
  int count = 0;
  for (ObjectId q : table.candidates(p, e))
    if (gamma[q] != gamma[p]) ++count;
  return count;
}

/// Count of clockwise movers forced by the path-length balance: every valid
/// selection moves exactly clockwise_count objects clockwise, counting
/// stationary objects as clockwise.
struct DirectionBalance {
  long long total_clockwise_distance = 0;  // Y
  bool feasible = false;                   // n divides Y
  int clockwise_count = 0;                 // n - Y/n, when feasible
};

inline DirectionBalance direction_balance(const Instance& inst) {
  DirectionBalance b;
  for (ObjectId p = 0; p < inst.n; ++p)
    b.total_clockwise_distance += cw_distance(
        inst.initial.holder_of(p), inst.target.holder_of(p), inst.n);
  b.feasible = b.total_clockwise_distance % inst.n == 0;
  if (b.feasible)
    b.clockwise_count =
        inst.n - static_cast<int>(b.total_clockwise_distance / inst.n);
  return b;
}

/// Spec-facing theta; throws when no selection can balance the path lengths.
inline int theta(const Instance& inst) {
  DirectionBalance b = direction_balance(inst);
  if (!b.feasible)
    throw NotDivisible("cycle length does not divide the distance sum");
  return b.clockwise_count;
}

/// Per-instance precomputation shared by validity checks and the solver:
/// candidate table, pairwise geometry for both direction combinations, and
/// shield / compatibility / opposite lookups.
class CycleGeometry {
 public:
  explicit CycleGeometry(const Instance& inst) : inst_(&inst), n_(inst.n) {
    if (!inst.is_cycle())
      throw TopologyMismatch("cycle geometry needs a cycle instance");
    stationary_.assign(n_, 0);
    for (ObjectId p = 0; p < n_; ++p)
      stationary_[p] =
          inst.initial.holder_of(p) == inst.target.holder_of(p) ? 1 : 0;
    pair_[0].resize(static_cast<size_t>(n_) * n_);
    pair_[1].resize(static_cast<size_t>(n_) * n_);
    shield_[0].assign(static_cast<size_t>(n_) * n_, 0);
    shield_[1].assign(static_cast<size_t>(n_) * n_, 0);
    opposite_.assign(static_cast<size_t>(n_) * n_, 0);
    for (ObjectId p = 0; p < n_; ++p) {
      for (ObjectId q = 0; q < n_; ++q) {
        if (p == q) continue;
        for (int dir = 0; dir < 2; ++dir)
          pair_[dir][key(p, q)] = analyze_pair(inst, p, q, dir);
        for (int dir = 0; dir < 2; ++dir)
          shield_[dir][key(p, q)] = shields(q, p, dir, inst) ? 1 : 0;
        opposite_[key(p, q)] =
            (pair_[0][key(p, q)].ncomps > 1 || pair_[1][key(p, q)].ncomps > 1)
                ? 1
                : 0;
      }
    }
    table_ = build_candidate_table(inst);
    balance_ = direction_balance(inst);
  }

  const Instance& instance() const { return *inst_; }
  int n() const { return n_; }
  const CandidateTable& table() const { return table_; }
  const DirectionBalance& balance() const { return balance_; }

  bool stationary(ObjectId p) const { return stationary_[p] != 0; }
  int moving_count() const {
    int c = 0;
    for (ObjectId p = 0; p < n_; ++p)
      if (!stationary_[p]) ++c;
    return c;
  }

  const PairGeometry& pair(ObjectId p, ObjectId q, int dir_p) const {
    return pair_[dir_p][key(p, q)];
  }
  bool shield(ObjectId q, ObjectId p, int dir) const {
    return shield_[dir][key(p, q)] != 0;
  }
  bool pair_compatible(ObjectId p, ObjectId q, int dir_p) const {
    return !pair_[dir_p][key(p, q)].defect;
  }
  bool opposite(ObjectId p, ObjectId q) const {
    return opposite_[key(p, q)] != 0;
  }

  AgentId start_of(ObjectId p) const { return inst_->initial.holder_of(p); }
  AgentId target_of(ObjectId p) const { return inst_->target.holder_of(p); }
  ArcPath path(ObjectId p, int dir) const {
    return object_path(*inst_, p, dir);
  }

  bool is_exact(const Selection& gamma) const {
    for (ObjectId p = 0; p < n_; ++p) {
      if (stationary_[p]) continue;
      ArcPath path = object_path(*inst_, p, gamma[p]);
      AgentId s = path.start;
      for (int k = 0; k < path.len; ++k) {
        EdgeId e = (s + k) % n_;
        int count = 0;
        for (ObjectId q : table_.candidates(p, e))
          if (gamma[q] != gamma[p]) ++count;
        if (count != 1) return false;
      }
    }
    return true;
  }

  bool is_harmonic(const Selection& gamma) const {
    for (ObjectId p = 0; p < n_; ++p) {
      for (ObjectId q = 0; q < n_; ++q) {
        if (p == q) continue;
        if (gamma[p] == gamma[q]) {
          if (!stationary_[p] && shield_[gamma[p]][key(p, q)]) return false;
        } else if (p < q) {
          if (pair_[gamma[p]][key(p, q)].defect) return false;
        }
      }
    }
    return true;
  }

  bool is_valid(const Selection& gamma) const {
    return is_exact(gamma) && is_harmonic(gamma);
  }

 private:
  size_t key(ObjectId p, ObjectId q) const {
    return static_cast<size_t>(p) * n_ + q;
  }

  const Instance* inst_;
  int n_;
  std::vector<uint8_t> stationary_;
  std::array<std::vector<PairGeometry>, 2> pair_;    // [dir_p][p*n+q]
  std::array<std::vector<uint8_t>, 2> shield_;       // [dir][p*n+q]: q shields p
  std::vector<uint8_t> opposite_;
  CandidateTable table_;
  DirectionBalance balance_;
};

/// Valid selections are exactly those Greedy Swap succeeds on: exact (one
/// opposed candidate per on-path edge) and harmonic (no shields, full
/// compatibility).
inline bool is_valid(const Selection& gamma, const Instance& inst,
                     const CandidateTable& table) {
  const int n = inst.n;
  for (ObjectId p = 0; p < n; ++p) {
    if (inst.initial.holder_of(p) == inst.target.holder_of(p)) continue;
    ArcPath path = object_path(inst, p, gamma[p]);
    for (int k = 0; k < path.len; ++k) {
      EdgeId e = (path.start + k) % n;
      int count = 0;
      for (ObjectId q : table.candidates(p, e))
        if (gamma[q] != gamma[p]) ++count;
      if (count != 1) return false;
    }
  }
  for (ObjectId p = 0; p < n; ++p) {
    bool p_moves = inst.initial.holder_of(p) != inst.target.holder_of(p);
    for (ObjectId q = 0; q < n; ++q) {
      if (p == q) continue;
      if (gamma[p] == gamma[q]) {
        if (p_moves && shields(q, p, gamma[p], inst)) return false;
      } else if (p < q) {
        if (!compatible(p, q, gamma[p], inst)) return false;
      }
    }
  }
  return true;
}

}  // namespace ringswap
