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

#include <optional>
#include <sstream>
#include <vector>

#include "ringswap/core.hpp"

namespace ringswap {

struct Literal {
  int var = 0;
  bool positive = true;

  Literal negated() const { return {var, !positive}; }
  // 2*var for the positive literal, 2*var+1 for the negation.
  int node() const { return 2 * var + (positive ? 0 : 1); }

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(int var) { return {var, true}; }
inline Literal neg(int var) { return {var, false}; }

/// Variable assigned d reads as literal: positive iff d == 1.
inline Literal lit_equals(int var, int d) { return {var, d == 1}; }

class TwoSatFormula {
 public:
  TwoSatFormula() = default;
  explicit TwoSatFormula(int nvars) : nvars_(nvars) {}

  int variables() const { return nvars_; }
  const std::vector<std::pair<Literal, Literal>>& clauses() const {
    return clauses_;
  }
  const std::vector<Literal>& units() const { return units_; }
  bool contradiction() const { return contradiction_; }

  void add_clause(Literal a, Literal b) {
    check(a);
    check(b);
    clauses_.emplace_back(a, b);
  }

  /// Records a -> b as the clause (~a v b).
  void add_implication(Literal a, Literal b) { add_clause(a.negated(), b); }

  /// Unit clauses are kept binary by duplicating the literal.
  void add_unit(Literal a) {
    check(a);
    units_.push_back(a);
    clauses_.emplace_back(a, a);
  }

  /// The unsatisfiable marker clause.
  void set_contradiction() { contradiction_ = true; }

 private:
  void check(const Literal& l) const {
    if (l.var < 0 || l.var >= nvars_)
      throw std::out_of_range("literal variable out of range");
  }

  int nvars_ = 0;
  std::vector<std::pair<Literal, Literal>> clauses_;
  std::vector<Literal> units_;
  bool contradiction_ = false;
};

struct TwoSatSolution {
  bool sat = false;
  std::vector<uint8_t> model;  // per variable, when sat
};

/// SCC-based 2-SAT decision and model extraction. Linear in variables plus
/// clauses; deterministic for a fixed construction order.
inline TwoSatSolution solve(const TwoSatFormula& f) {
  TwoSatSolution out;
  if (f.contradiction()) return out;
  const int nodes = 2 * f.variables();
  std::vector<int> head(nodes + 1, 0);
  std::vector<int> targets(2 * f.clauses().size());
  for (const auto& [a, b] : f.clauses()) {
    ++head[a.negated().node() + 1];
    ++head[b.negated().node() + 1];
  }
  for (int v = 0; v < nodes; ++v) head[v + 1] += head[v];
  {
    std::vector<int> cursor(head.begin(), head.end() - 1);
    for (const auto& [a, b] : f.clauses()) {
      targets[cursor[a.negated().node()]++] = b.node();
      targets[cursor[b.negated().node()]++] = a.node();
    }
  }

  // Iterative Tarjan; component ids are assigned in completion order, so a
  // component can only reach components with smaller ids.
  std::vector<int> comp(nodes, -1), low(nodes, 0), idx(nodes, -1);
  std::vector<int> stack, frame_node, frame_edge;
  stack.reserve(nodes);
  int next_index = 0, next_comp = 0;
  std::vector<uint8_t> on_stack(nodes, 0);
  for (int root = 0; root < nodes; ++root) {
    if (idx[root] != -1) continue;
    frame_node.assign(1, root);
    frame_edge.assign(1, head[root]);
    idx[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frame_node.empty()) {
      int v = frame_node.back();
      int& e = frame_edge.back();
      if (e < head[v + 1]) {
        int w = targets[e++];
        if (idx[w] == -1) {
          idx[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frame_node.push_back(w);
          frame_edge.push_back(head[w]);
        } else if (on_stack[w] && idx[w] < low[v]) {
          low[v] = idx[w];
        }
      } else {
        if (low[v] == idx[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
        frame_node.pop_back();
        frame_edge.pop_back();
        if (!frame_node.empty()) {
          int parent = frame_node.back();
          if (low[v] < low[parent]) low[parent] = low[v];
        }
      }
    }
  }

  out.model.assign(f.variables(), 0);
  for (int x = 0; x < f.variables(); ++x) {
    if (comp[2 * x] == comp[2 * x + 1]) return {};
    // True iff the positive literal's component is closer to a sink.
    out.model[x] = comp[2 * x] < comp[2 * x + 1] ? 1 : 0;
  }
  out.sat = true;
  return out;
}

/// Clause-by-clause check of a full assignment, independent of solve().
inline bool satisfies(const TwoSatFormula& f,
                      const std::vector<uint8_t>& assignment) {
  if (f.contradiction()) return false;
  for (const auto& [a, b] : f.clauses()) {
    bool va = assignment[a.var] == (a.positive ? 1 : 0);
    bool vb = assignment[b.var] == (b.positive ? 1 : 0);
    if (!va && !vb) return false;
  }
  return true;
}

/// DIMACS text for external-solver cross-checks. The contradiction marker is
/// exported as a pair of conflicting unit clauses on variable 1.
inline std::string to_dimacs(const TwoSatFormula& f) {
  std::ostringstream os;
  int extra = f.contradiction() ? 2 : 0;
  os << "p cnf " << std::max(f.variables(), f.contradiction() ? 1 : 0) << ' '
     << f.clauses().size() + extra << '\n';
  auto emit = [&](const Literal& l) {
    os << (l.positive ? l.var + 1 : -(l.var + 1));
  };
  for (const auto& [a, b] : f.clauses()) {
    emit(a);
    os << ' ';
    emit(b);
    os << " 0\n";
  }
  if (f.contradiction()) os << "1 0\n-1 0\n";
  return os.str();
}

}  // namespace ringswap
