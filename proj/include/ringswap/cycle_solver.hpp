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

#include <atomic>
#include <thread>

#include "ringswap/cycle_geometry.hpp"
#include "ringswap/swap_dynamics.hpp"
#include "ringswap/two_sat.hpp"

namespace ringswap {

/// Fixing the first-swap edge {i, i+1} forces sigma_0(i) clockwise and
/// sigma_0(i+1) counter-clockwise in every selection that realizes it.
struct Guess {
  ObjectId cw_object = -1;
  ObjectId ccw_object = -1;
  EdgeId edge = -1;

  ObjectId directed(int dir) const { return dir == 1 ? cw_object : ccw_object; }
  bool guessed(ObjectId p) const { return p == cw_object || p == ccw_object; }
  int direction_of(ObjectId p) const { return p == cw_object ? 1 : 0; }
};

/// Shared per-instance state for the guess loop: the Rule-1 instance, its
/// geometry, the harmony clauses (guess-independent), and the direction
/// balance.
class SolverContext {
 public:
  explicit SolverContext(const Instance& raw)
      : inst_(apply_rule_1(raw)), geom_(inst_) {
    targets_ok_ = targets_weakly_preferred(inst_);
    moving_cw_budget_ =
        geom_.balance().feasible
            ? geom_.balance().clockwise_count - (inst_.n - geom_.moving_count())
            : 0;
    build_harmony_clauses();
  }

  SolverContext(const SolverContext&) = delete;
  SolverContext& operator=(const SolverContext&) = delete;

  const Instance& instance() const { return inst_; }
  const CycleGeometry& geom() const { return geom_; }
  bool targets_ok() const { return targets_ok_; }
  const DirectionBalance& balance() const { return geom_.balance(); }
  /// Clockwise movers in every valid selection, stationary objects excluded.
  int moving_clockwise() const { return moving_cw_budget_; }
  const std::vector<std::pair<Literal, Literal>>& harmony_clauses() const {
    return harmony_clauses_;
  }

  Guess guess_at(EdgeId e) const {
    return Guess{inst_.initial.object_at(e),
                 inst_.initial.object_at(cw_next(e, inst_.n)), e};
  }

  bool first_swap_rational(EdgeId e) const {
    AgentId i = e, j = cw_next(e, inst_.n);
    ObjectId x = inst_.initial.object_at(i), y = inst_.initial.object_at(j);
    return inst_.prefs.prefers(i, y, x) && inst_.prefs.prefers(j, x, y);
  }

 private:
  // One clause per shielding pair and per incompatible opposed combination;
  // satisfying assignments are exactly the harmonic selections.
  void build_harmony_clauses() {
    const int n = inst_.n;
    for (ObjectId p = 0; p < n; ++p) {
      for (ObjectId q = 0; q < n; ++q) {
        if (p == q) continue;
        for (int c = 0; c < 2; ++c) {
          if (!geom_.stationary(p) && geom_.shield(q, p, c)) {
            // forbid gamma(p) = gamma(q) = c
            harmony_clauses_.emplace_back(lit_equals(p, c).negated(),
                                          lit_equals(q, c).negated());
          }
        }
        if (p < q) {
          for (int c = 0; c < 2; ++c) {
            if (!geom_.pair_compatible(p, q, c)) {
              // forbid gamma(p) = c, gamma(q) = 1-c
              harmony_clauses_.emplace_back(lit_equals(p, c).negated(),
                                            lit_equals(q, 1 - c).negated());
            }
          }
        }
      }
    }
  }

  Instance inst_;
  CycleGeometry geom_;
  bool targets_ok_ = false;
  int moving_cw_budget_ = 0;
  std::vector<std::pair<Literal, Literal>> harmony_clauses_;
};

/// Per-guess decided directions (the five rules run to their fixpoint) plus
/// the partition bookkeeping the counting lemmas constrain.
struct DecidedState {
  Guess guess;
  int n = 0;
  bool wrong = false;
  std::string wrong_reason;
  // decided[d][p]: the rules force p toward direction d. Both set = wrong.
  std::array<std::vector<uint8_t>, 2> decided;
  // Candidate lists of the guessed objects along their guessed paths.
  struct ListSlot {
    ObjectId owner;
    EdgeId edge;
  };
  std::vector<ListSlot> guessed_lists;
  std::vector<uint8_t> in_U, in_D, in_O;
  int count_U = 0, count_D = 0, count_O = 0, count_CU = 0, count_CD = 0;
  // Prefix sums of "starts here, moving, decided clockwise" per agent.
  std::vector<int> cw_prefix;

  int decided_dir(ObjectId p) const {
    if (decided[0][p] && decided[1][p]) return 2;
    if (decided[1][p]) return 1;
    if (decided[0][p]) return 0;
    return -1;
  }

  /// Decided-clockwise movers whose start agent lies strictly inside the
  /// clockwise arc (a, b).
  int cw_decided_between(AgentId a, AgentId b) const {
    int gap = cw_distance(a, b, n);
    if (gap <= 1) return 0;
    AgentId lo = cw_next(a, n);
    AgentId hi = cw_prev(b, n);
    if (lo <= hi) return cw_prefix[hi + 1] - cw_prefix[lo];
    return cw_prefix[n] - cw_prefix[lo] + cw_prefix[hi + 1];
  }
};

inline DecidedState infer_decided(const SolverContext& ctx, const Guess& g) {
  const Instance& inst = ctx.instance();
  const CycleGeometry& geom = ctx.geom();
  const CandidateTable& table = geom.table();
  const int n = inst.n;
  DecidedState st;
  st.guess = g;
  st.n = n;
  st.decided[0].assign(n, 0);
  st.decided[1].assign(n, 0);
  st.decided[1][g.cw_object] = 1;
  st.decided[0][g.ccw_object] = 1;

  auto mark = [&](ObjectId p, int dir) -> bool {
    if (st.decided[dir][p]) return false;
    st.decided[dir][p] = 1;
    return true;
  };

  // Membership in the guessed objects' candidate lists along their paths.
  std::array<std::vector<uint8_t>, 2> in_lists_of;  // [dir of guessed][q]
  for (int c = 0; c < 2; ++c) {
    ObjectId gobj = g.directed(c);
    in_lists_of[c].assign(n, 0);
    for (ObjectId q = 0; q < n; ++q) {
      if (q == gobj || geom.stationary(q)) continue;
      const PairGeometry& pg = geom.pair(gobj, q, c);
      for (int k = 0; k < pg.ncomps; ++k)
        if (pg.swap_edge[k] >= 0) in_lists_of[c][q] = 1;
    }
  }

  ArcPath px = geom.path(g.cw_object, 1);
  ArcPath py = geom.path(g.ccw_object, 0);
  bool xy_opposite = geom.opposite(g.cw_object, g.ccw_object);

  for (ObjectId p = 0; p < n; ++p) {
    if (g.guessed(p) || geom.stationary(p)) continue;
    // Rule 1: objects opposite to a guessed object cannot share its direction.
    if (geom.opposite(p, g.cw_object)) mark(p, 0);
    if (geom.opposite(p, g.ccw_object)) mark(p, 1);
    // Rule 2: objects absent from a guessed object's candidate lists.
    for (int c = 0; c < 2; ++c) {
      ObjectId gobj = g.directed(c);
      if (in_lists_of[c][p]) continue;
      if (geom.pair(p, gobj, 1 - c).ncomps == 0) {
        // Disjoint when opposed, so sharing gobj's direction walls p in.
        mark(p, 1 - c);
      } else {
        // They would have to swap but no edge admits it.
        mark(p, c);
      }
    }
    // Rule 4: destination off both guessed paths (non-opposite guesses only).
    if (!xy_opposite && !px.contains_agent(geom.target_of(p), n) &&
        !py.contains_agent(geom.target_of(p), n)) {
      for (int c = 0; c < 2; ++c) {
        const ArcPath& pg_path = c == 1 ? px : py;
        if (pg_path.contains_agent(geom.start_of(p), n)) continue;
        if (geom.path(p, c).contains_arc(pg_path, n)) mark(p, 1 - c);
      }
    }
  }

  // 𝒞: the guessed objects' lists along their guessed directions.
  for (int c = 0; c < 2; ++c) {
    ObjectId gobj = g.directed(c);
    ArcPath path = c == 1 ? px : py;
    for (int k = 0; k < path.len; ++k)
      st.guessed_lists.push_back({gobj, (path.start + k) % n});
  }

  // Rules 3 and 5 feed on decided facts; saturate monotonically.
  std::array<std::vector<uint8_t>, 2> rule5_done;
  rule5_done[0].assign(n, 0);
  rule5_done[1].assign(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    // Rule 3: a candidate decided against a guessed list's direction forces
    // every other member of that list along it.
    for (const auto& slot : st.guessed_lists) {
      int d = g.direction_of(slot.owner);
      const auto& members = table.candidates(slot.owner, slot.edge);
      bool has_opposed = false;
      for (ObjectId q : members)
        if (st.decided[1 - d][q]) {
          has_opposed = true;
          break;
        }
      if (!has_opposed) continue;
      for (ObjectId q : members) {
        if (st.decided[1 - d][q]) continue;
        if (mark(q, d)) changed = true;
      }
    }
    // Rule 5: objects starting between a guessed object and a same-direction
    // decided object (whose opposed paths miss the other guessed object) are
    // decided once the shield table confirms the block.
    for (int c = 0; c < 2; ++c) {
      ObjectId gobj = g.directed(c);
      ObjectId other = g.directed(1 - c);
      for (ObjectId q = 0; q < n; ++q) {
        if (rule5_done[c][q] || g.guessed(q) || geom.stationary(q)) continue;
        if (!st.decided[c][q]) continue;
        if (geom.pair(q, other, c).ncomps != 0) continue;
        rule5_done[c][q] = 1;
        AgentId sg = geom.start_of(gobj), sq = geom.start_of(q);
        int span = c == 1 ? cw_distance(sg, sq, n) : ccw_distance(sg, sq, n);
        for (int k = 1; k < span; ++k) {
          AgentId v = c == 1 ? (sg + k) % n : (sg - k + n) % n;
          ObjectId r = inst.initial.object_at(v);
          if (g.guessed(r) || geom.stationary(r) || r == q) continue;
          if (geom.shield(q, r, c) && mark(r, 1 - c)) changed = true;
        }
      }
    }
  }

  for (ObjectId p = 0; p < n; ++p) {
    if (st.decided[0][p] && st.decided[1][p]) {
      st.wrong = true;
      st.wrong_reason = "object " + std::to_string(p) +
                        " decided in both directions";
      break;
    }
  }

  // Partition bookkeeping and the counting-lemma consistency checks; each
  // violated count certifies the guess wrong.
  st.in_U.assign(n, 0);
  st.in_D.assign(n, 0);
  st.in_O.assign(n, 0);
  if (!st.wrong) {
    for (ObjectId p = 0; p < n; ++p) {
      if (geom.stationary(p)) continue;
      if (st.decided_dir(p) == -1) {
        st.in_U[p] = 1;
        ++st.count_U;
      }
    }
    std::vector<int> u_occurrences(n, 0);
    for (const auto& slot : st.guessed_lists) {
      int d = g.direction_of(slot.owner);
      for (ObjectId q : table.candidates(slot.owner, slot.edge)) {
        if (st.in_U[q]) ++u_occurrences[q];
        int dq = st.decided_dir(q);
        if (dq == 1 - d) {
          if (!st.in_D[q]) {
            st.in_D[q] = 1;
            ++st.count_D;
          }
          if (geom.opposite(q, slot.owner) && !st.in_O[q]) {
            st.in_O[q] = 1;
            ++st.count_O;
          }
        }
      }
    }
    auto flag = [&](const std::string& why) {
      if (!st.wrong) {
        st.wrong = true;
        st.wrong_reason = why;
      }
    };
    for (const auto& slot : st.guessed_lists) {
      bool has_d = false;
      int undecided = 0;
      for (ObjectId q : table.candidates(slot.owner, slot.edge)) {
        if (st.in_D[q]) has_d = true;
        if (st.in_U[q]) ++undecided;
      }
      if (has_d && undecided >= 2)
        flag("a guessed list is in both partition classes");
      if (!has_d && undecided < 2)
        flag("a guessed list is in neither partition class");
      if (undecided != 0 && undecided != 2)
        flag("a guessed list has " + std::to_string(undecided) +
             " undecided members");
      if (has_d) ++st.count_CD;
      if (undecided >= 2) ++st.count_CU;
    }
    for (ObjectId q = 0; q < n; ++q)
      if (st.in_U[q] && u_occurrences[q] != 2)
        flag("undecided object " + std::to_string(q) + " sits in " +
             std::to_string(u_occurrences[q]) + " guessed lists");
    if (st.count_O > 0 && !xy_opposite)
      flag("opposed-twice candidates without opposite guessed objects");
    if (xy_opposite &&
        static_cast<int>(st.guessed_lists.size()) != n + st.count_O)
      flag("guessed list count off the opposite-guess balance");
    if (st.count_CD != st.count_D + st.count_O)
      flag("decided-list count disagrees with |D| + |O|");
    if (st.count_CU < st.count_U)
      flag("fewer undecided lists than undecided objects");
  }

  st.cw_prefix.assign(n + 1, 0);
  for (AgentId v = 0; v < n; ++v) {
    ObjectId p = inst.initial.object_at(v);
    int is_cw = (!geom.stationary(p) && st.decided[1][p] && !st.decided[0][p])
                    ? 1
                    : 0;
    st.cw_prefix[v + 1] = st.cw_prefix[v] + is_cw;
  }
  return st;
}

/// Meet simulation: where p and q cross in every valid selection respecting
/// the guess with gamma(q) != gamma(p) = d(p,e).
struct STuple {
  EdgeId meet_edge = -1;  // meet on the shared path containing e, -1 if none
  int side = 0;           // 1 when q starts closer to p than the guessed object
  bool successful = false;  // meet_edge == e
  bool computed = true;     // false: no sound count available, no inference
};

/// Fixed per-object counts backing the meet computation. Values are the
/// number of clockwise movers strictly inside the relevant start arcs,
/// recovered from unique swap edges with the guessed pair (or from decided
/// counts when the opposed paths are disjoint).
struct MeetRoutes {
  enum Kind : uint8_t { kValue, kVacuous, kSkip };
  struct Entry {
    Kind kind = kVacuous;
    int value = 0;
  };
  std::array<std::vector<Entry>, 2> toward_opposite;  // A: [c][p]
  std::array<std::vector<Entry>, 2> from_aligned;     // B: [c][q]
  int skipped = 0;
};

inline MeetRoutes build_meet_routes(const SolverContext& ctx,
                                    const DecidedState& st) {
  const Instance& inst = ctx.instance();
  const CycleGeometry& geom = ctx.geom();
  const Guess& g = st.guess;
  const int n = inst.n;
  const int cw_movers = ctx.moving_clockwise();
  MeetRoutes mr;
  for (int c = 0; c < 2; ++c) {
    ObjectId gobj = g.directed(c);
    ObjectId other = g.directed(1 - c);
    AgentId sg = geom.start_of(gobj);
    AgentId so = geom.start_of(other);
    mr.toward_opposite[c].assign(n, {});
    mr.from_aligned[c].assign(n, {});

    for (ObjectId q = 0; q < n; ++q) {
      if (q == gobj || geom.stationary(q)) continue;
      // B: movers between the same-direction guessed object and q, from the
      // unique swap edge of (gobj, q) inside their closing gap.
      AgentId sq = geom.start_of(q);
      const PairGeometry& pg = geom.pair(gobj, q, c);
      for (int k = 0; k < pg.ncomps; ++k) {
        EdgeId u = pg.swap_edge[k];
        if (u < 0) continue;
        bool in_gap = c == 1 ? cw_distance(sg, u, n) < cw_distance(sg, sq, n)
                             : cw_distance(sq, u, n) < cw_distance(sq, sg, n);
        if (!in_gap) continue;
        int value = c == 1 ? cw_distance(cw_next(u, n), sq, n)
                           : cw_distance(cw_next(u, n), sg, n);
        mr.from_aligned[c][q] = {MeetRoutes::kValue, value};
        break;
      }
    }

    for (ObjectId p = 0; p < n; ++p) {
      if (g.guessed(p) || geom.stationary(p)) continue;
      AgentId sp = geom.start_of(p);
      int dd = st.decided_dir(p);
      if (dd == 1 - c) continue;  // kVacuous: no selection pairs p with d = c
      const PairGeometry& pw = geom.pair(p, other, c);
      bool found = false;
      for (int k = 0; k < pw.ncomps; ++k) {
        EdgeId u = pw.swap_edge[k];
        if (u < 0) continue;
        bool in_gap = c == 1 ? cw_distance(sp, u, n) < cw_distance(sp, so, n)
                             : cw_distance(so, u, n) < cw_distance(so, sp, n);
        if (!in_gap) continue;
        int value = c == 1 ? cw_distance(cw_next(u, n), so, n)
                           : cw_distance(cw_next(u, n), sp, n);
        mr.toward_opposite[c][p] = {MeetRoutes::kValue, value};
        found = true;
        break;
      }
      if (found) continue;
      if (pw.ncomps == 0) {
        // Opposed paths disjoint: p is decided along c and everything between
        // the guessed object and p is decided, so count directly.
        AgentId a = c == 1 ? sg : sp;
        AgentId b = c == 1 ? sp : sg;
        bool all_decided = true;
        int gap = cw_distance(a, b, n);
        for (int k = 1; k < gap && all_decided; ++k) {
          ObjectId r = inst.initial.object_at((a + k) % n);
          if (!geom.stationary(r) && st.decided_dir(r) == -1)
            all_decided = false;
        }
        if (!all_decided) {
          mr.toward_opposite[c][p] = {MeetRoutes::kSkip, 0};
          ++mr.skipped;
          continue;
        }
        int t = st.cw_decided_between(a, b);
        int value = c == 1 ? cw_movers - 1 - t : cw_movers - t;
        mr.toward_opposite[c][p] = {MeetRoutes::kValue, value};
      }
      // else: shared paths exist but no usable edge; kVacuous.
    }
  }
  return mr;
}

/// S(p, e, q): the edge where p and q meet on e's shared path, for q in
/// C(p,e).
inline STuple meet_edge(const SolverContext& ctx, const DecidedState& st,
                        const MeetRoutes& mr, ObjectId p, EdgeId e,
                        ObjectId q) {
  const CycleGeometry& geom = ctx.geom();
  const Guess& g = st.guess;
  const int n = ctx.instance().n;
  const int c = geom.table().direction(p, e);
  const ObjectId gobj = g.directed(c);
  AgentId sp = geom.start_of(p), sq = geom.start_of(q);
  AgentId sg = geom.start_of(gobj);

  STuple out;
  auto pos = [&](AgentId from, AgentId to) {
    return c == 1 ? cw_distance(from, to, n) : ccw_distance(from, to, n);
  };
  out.side = pos(sp, sq) < pos(sp, sg) ? 1 : 0;

  const MeetRoutes::Entry* a = nullptr;
  const MeetRoutes::Entry* b = nullptr;
  long long m = -1;
  if (p == gobj) {
    b = &mr.from_aligned[c][q];
    if (b->kind == MeetRoutes::kValue) m = b->value;
  } else if (q == g.directed(1 - c)) {
    a = &mr.toward_opposite[c][p];
    if (a->kind == MeetRoutes::kValue) m = a->value;
  } else {
    a = &mr.toward_opposite[c][p];
    b = &mr.from_aligned[c][q];
    if (a->kind == MeetRoutes::kValue && b->kind == MeetRoutes::kValue) {
      AgentId lo = c == 1 ? sp : sq;
      AgentId hi = c == 1 ? sq : sp;
      bool inside = cw_distance(lo, sg, n) > 0 &&
                    cw_distance(lo, sg, n) < cw_distance(lo, hi, n);
      m = static_cast<long long>(a->value) + b->value -
          (inside ? 0 : ctx.moving_clockwise());
    }
  }
  if ((a && a->kind == MeetRoutes::kSkip) ||
      (b && b->kind == MeetRoutes::kSkip)) {
    out.computed = false;
    return out;
  }
  if (m < 0 || m > n - 2) return out;  // no consistent meeting: unsuccessful

  auto wrap = [n](long long v) {
    return static_cast<EdgeId>(((v % n) + n) % n);
  };
  EdgeId f1 = wrap((c == 1 ? sq : sp) - m - 1);
  EdgeId f2 = wrap(static_cast<long long>(f1) - ctx.moving_clockwise());
  const PairGeometry& pg = geom.pair(p, q, c);
  for (int k = 0; k < pg.ncomps; ++k) {
    if (!pg.comps[k].contains_edge(e, n)) continue;
    if (pg.comps[k].contains_edge(f1, n))
      out.meet_edge = f1;
    else if (pg.ncomps == 2 && pg.comps[k].contains_edge(f2, n))
      out.meet_edge = f2;
    break;
  }
  out.successful = out.meet_edge == e;
  return out;
}

/// Conditionally decided directions: facts of the form "when gamma(p) = c,
/// q is forced toward f", bit-packed per (c, p, q).
struct CondDecided {
  int n = 0;
  std::array<std::vector<uint8_t>, 2> facts;  // [c][p*n+q]: bit f set

  uint8_t get(int c, ObjectId p, ObjectId q) const {
    return facts[c][static_cast<size_t>(p) * n + q];
  }
  void add(int c, ObjectId p, ObjectId q, int f) {
    facts[c][static_cast<size_t>(p) * n + q] |= uint8_t{1} << f;
  }
};

/// Runs the three conditional rules (shield, unsuccessful meet, forced
/// remainder) over every candidate list. May certify the guess wrong when a
/// guessed list pins two members against its direction.
inline CondDecided infer_p_decided(const SolverContext& ctx, DecidedState& st,
                                   const MeetRoutes& mr) {
  const CycleGeometry& geom = ctx.geom();
  const CandidateTable& table = geom.table();
  const Guess& g = st.guess;
  const int n = ctx.instance().n;
  CondDecided cd;
  cd.n = n;
  cd.facts[0].assign(static_cast<size_t>(n) * n, 0);
  cd.facts[1].assign(static_cast<size_t>(n) * n, 0);

  for (ObjectId p = 0; p < n; ++p) {
    if (geom.stationary(p)) continue;
    for (int c = 0; c < 2; ++c) {
      if (g.guessed(p) && g.direction_of(p) != c) continue;
      ArcPath path = geom.path(p, c);
      for (int k = 0; k < path.len; ++k) {
        EdgeId e = (path.start + k) % n;
        for (ObjectId q : table.candidates(p, e)) {
          if (geom.shield(q, p, c)) cd.add(c, p, q, 1 - c);
          if (st.decided_dir(q) == -1) {
            STuple s = meet_edge(ctx, st, mr, p, e, q);
            if (s.computed && !s.successful) cd.add(c, p, q, c);
          }
        }
      }
      // Forced remainder per list, to a fixpoint across p's lists.
      bool changed = true;
      while (changed) {
        changed = false;
        for (int k = 0; k < path.len; ++k) {
          EdgeId e = (path.start + k) % n;
          const auto& members = table.candidates(p, e);
          int against = 0;
          for (ObjectId q : members) {
            int dq = st.decided_dir(q);
            if (dq == 1 - c || (cd.get(c, p, q) & (uint8_t{1} << (1 - c))))
              ++against;
          }
          if (against >= 2 && g.guessed(p)) {
            if (!st.wrong) {
              st.wrong = true;
              st.wrong_reason =
                  "two members of a guessed list pinned against it";
            }
          }
          if (against != 1) continue;
          for (ObjectId q : members) {
            int dq = st.decided_dir(q);
            bool is_against =
                dq == 1 - c || (cd.get(c, p, q) & (uint8_t{1} << (1 - c)));
            if (is_against) continue;
            if (dq == c || (cd.get(c, p, q) & (uint8_t{1} << c))) continue;
            cd.add(c, p, q, c);
            changed = true;
          }
        }
      }
    }
  }
  return cd;
}

/// Exactness clauses: per candidate list, either the owner cannot travel the
/// list's direction, or the members' decided / conditionally decided facts
/// pin the single opposed partner; guessed lists with undecided members pair
/// them exclusively or certify the guess wrong.
inline void append_exactness_clauses(const SolverContext& ctx,
                                     const DecidedState& st,
                                     const CondDecided& cd,
                                     TwoSatFormula& f) {
  const CycleGeometry& geom = ctx.geom();
  const CandidateTable& table = geom.table();
  const Guess& g = st.guess;
  const int n = ctx.instance().n;

  for (ObjectId p = 0; p < n; ++p) {
    if (geom.stationary(p)) continue;
    for (EdgeId e = 0; e < n; ++e) {
      int d = table.direction(p, e);
      if (g.guessed(p) && g.direction_of(p) != d) continue;
      const auto& members = table.candidates(p, e);
      int toward_opposed = 0, cond_free = 0;
      for (ObjectId q : members) {
        int dq = st.decided_dir(q);
        uint8_t eff = cd.get(d, p, q);
        if (dq == 0 || dq == 1) eff |= uint8_t{1} << dq;
        if (eff & (uint8_t{1} << (1 - d))) ++toward_opposed;
        if (eff == 0) ++cond_free;
      }
      if (toward_opposed != 1 && cond_free == 0) {
        f.add_unit(lit_equals(p, 1 - d));
        continue;
      }
      for (ObjectId q : members) {
        int dq = st.decided_dir(q);
        uint8_t bits = cd.get(d, p, q);
        for (int dir = 0; dir < 2; ++dir) {
          if (!(bits & (uint8_t{1} << dir)) || dq == dir) continue;
          f.add_clause(lit_equals(p, d).negated(), lit_equals(q, dir));
        }
      }
      if (g.guessed(p)) {
        ObjectId u0 = -1, u1 = -1;
        int undecided = 0;
        for (ObjectId q : members) {
          if (st.decided_dir(q) != -1) continue;
          ++undecided;
          (u0 == -1 ? u0 : u1) = q;
        }
        if (undecided == 2) {
          f.add_clause(pos(u0), pos(u1));
          f.add_clause(neg(u0), neg(u1));
        } else if (undecided != 0) {
          f.set_contradiction();
        }
      }
    }
  }
}

/// The full per-guess formula: harmony clauses, guess and decided units, and
/// the exactness clauses. Infeasible balance or a wrong guess collapses to
/// the contradiction marker.
inline TwoSatFormula build_guess_formula(const SolverContext& ctx,
                                         const DecidedState& st,
                                         const CondDecided& cd) {
  const int n = ctx.instance().n;
  TwoSatFormula f(n);
  if (!ctx.balance().feasible || st.wrong) {
    f.set_contradiction();
    return f;
  }
  for (const auto& [a, b] : ctx.harmony_clauses()) f.add_clause(a, b);
  for (ObjectId p = 0; p < n; ++p) {
    int dp = st.decided_dir(p);
    if (dp == 0 || dp == 1) f.add_unit(lit_equals(p, dp));
  }
  append_exactness_clauses(ctx, st, cd, f);
  return f;
}

struct GuessOutcome {
  Guess guess;
  bool rational = false;
  bool wrong = false;
  bool sat = false;
  bool yes = false;
  bool gate_failed = false;
  int skipped_meets = 0;
  Selection selection;
  std::optional<SwapTrace> trace;
  TwoSatFormula formula;
};

/// Decides First Swap Reachable Assignment for one edge: builds and solves
/// the guess formula, then re-runs the greedy loop on the decoded selection
/// as a verification gate before answering Yes.
inline GuessOutcome analyze_guess(const SolverContext& ctx, EdgeId e) {
  GuessOutcome out;
  out.guess = ctx.guess_at(e);
  out.rational = ctx.first_swap_rational(e);
  if (!out.rational) {
    out.formula = TwoSatFormula(ctx.instance().n);
    out.formula.set_contradiction();
    return out;
  }
  DecidedState st = infer_decided(ctx, out.guess);
  CondDecided cd;
  if (!st.wrong && ctx.balance().feasible) {
    MeetRoutes mr = build_meet_routes(ctx, st);
    out.skipped_meets = mr.skipped;
    cd = infer_p_decided(ctx, st, mr);
  }
  out.wrong = st.wrong;
  out.formula = build_guess_formula(ctx, st, cd);
  TwoSatSolution sol = solve(out.formula);
  out.sat = sol.sat;
  if (!sol.sat) return out;
  out.selection.assign(sol.model.begin(), sol.model.end());
  GreedyResult gate = greedy_swap(ctx.instance(), out.selection);
  if (!gate.yields) {
    // The theory says a satisfying model always decodes to a valid selection;
    // treat a gate failure as a loud internal alarm, never a Yes.
    out.gate_failed = true;
    return out;
  }
  out.yes = true;
  out.trace = std::move(gate.trace);
  return out;
}

struct SolveOptions {
  bool parallel = false;
  int threads = 0;  // 0: hardware concurrency
};

struct SolveResult {
  bool yes = false;
  std::optional<EdgeId> first_swap_edge;
  std::optional<Selection> selection;
  std::optional<SwapTrace> trace;
  int guesses_examined = 0;
  int gate_failures = 0;
};

/// Reachable Assignment on a cycle: Yes iff some edge admits a first swap
/// whose guess formula is satisfiable (verified by the greedy gate). Edges
/// are scanned in increasing order; the first Yes wins, also under the
/// parallel scan.
inline SolveResult solve(const Instance& raw, const SolveOptions& opts = {}) {
  if (!raw.is_cycle())
    throw TopologyMismatch("the cycle solver needs a cycle instance");
  validate_instance(raw);
  const int n = raw.n;
  SolveResult res;
  {
    // cheap outcomes first, before the cubic precomputation
    Instance pruned = apply_rule_1(raw);
    if (pruned.initial == pruned.target) {
      res.yes = true;
      res.selection = Selection(n, 1);
      res.trace = SwapTrace{{}, pruned.initial, pruned.target};
      return res;
    }
    if (!targets_weakly_preferred(pruned) ||
        !direction_balance(pruned).feasible)
      return res;
  }
  SolverContext ctx(raw);
  const Instance& inst = ctx.instance();

  // Slim per-edge records; the formulas are dropped as soon as each guess is
  // resolved so peak memory stays at one formula per worker.
  struct EdgeRecord {
    bool yes = false;
    bool gate_failed = false;
    Selection selection;
    std::optional<SwapTrace> trace;
  };
  std::vector<EdgeRecord> outcomes(n);
  auto run_edge = [&](EdgeId e) {
    GuessOutcome out = analyze_guess(ctx, e);
    outcomes[e] = EdgeRecord{out.yes, out.gate_failed,
                             std::move(out.selection), std::move(out.trace)};
  };

  int winner = n;
  if (!opts.parallel) {
    for (EdgeId e = 0; e < n; ++e) {
      run_edge(e);
      if (outcomes[e].yes) {
        winner = e;
        break;
      }
    }
  } else {
    int threads = opts.threads > 0
                      ? opts.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n));
    std::atomic<int> next{0};
    std::atomic<int> best{n};
    auto worker = [&]() {
      while (true) {
        int e = next.fetch_add(1);
        if (e >= n) return;
        if (e > best.load()) continue;
        run_edge(e);
        if (outcomes[e].yes) {
          int cur = best.load();
          while (e < cur && !best.compare_exchange_weak(cur, e)) {
          }
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    // An edge is only ever skipped past an already-found winner, so the
    // smallest Yes is never skipped and best is final.
    winner = best.load();
  }

  // Edges at or below the winner are always analyzed, also in parallel runs.
  int limit = winner < n ? winner : n - 1;
  for (EdgeId e = 0; e <= limit; ++e) {
    if (ctx.first_swap_rational(e)) ++res.guesses_examined;
    if (outcomes[e].gate_failed) ++res.gate_failures;
  }
  if (winner < n) {
    EdgeRecord& w = outcomes[winner];
    res.yes = true;
    res.first_swap_edge = winner;
    res.selection = std::move(w.selection);
    res.trace = std::move(w.trace);
  }
  return res;
}

}  // namespace ringswap
