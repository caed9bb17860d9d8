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
//
// End-to-end acceptance checks. Each case prints one PASS/FAIL line so a run
// doubles as the release checklist.

#include <chrono>
#include <iostream>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ringswap;
using namespace ringswap::testing;

namespace {

struct Criterion {
  Criterion(int id_in, std::string label_in)
      : id(id_in), label(std::move(label_in)) {}

  int id;
  std::string label;
  bool ok = true;
  std::string detail;

  ~Criterion() {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": "
              << label << (detail.empty() ? "" : " — " + detail) << std::endl;
  }
};

double median_ms(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("criterion 1: figure-1 triangle reproduction") {
  Criterion c{1, "triangle solved with the published 2-swap trace in < 1 ms"};
  Instance tri = fig1();
  auto t0 = std::chrono::steady_clock::now();
  SolveResult res = solve(tri);
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  c.ok = res.yes && res.trace && res.trace->swaps.size() == 2 &&
         res.trace->swaps[0] == Swap{1, 2, 1, 2} &&
         res.trace->swaps[1] == Swap{2, 0, 1, 0} &&
         verify_trace(apply_rule_1(tri), *res.trace) && ms < 1.0;
  c.detail = "solved in " + std::to_string(ms) + " ms";
  REQUIRE(c.ok);
}

TEST_CASE("criterion 2: solver agrees with the oracle on 500+ instances") {
  Criterion c{2, "solve == exhaustive oracle on random cycles, 3 <= n <= 7"};
  auto t0 = std::chrono::steady_clock::now();
  int cases = 0, yes = 0, miss = 0;
  for (uint64_t seed = 0; cases < 520; ++seed) {
    int n = 3 + static_cast<int>(seed % 5);
    Instance inst = seed % 2 ? generate_yes_instance(n, seed + 10000)
                             : generate_random_instance(n, seed + 10000);
    bool got = solve(inst).yes;
    bool want = oracle_reachable_assignment(inst).reachable;
    if (got != want) {
      ++miss;
      if (c.detail.empty())
        c.detail = "first mismatch at seed " + std::to_string(seed);
    }
    yes += want;
    ++cases;
  }
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();
  c.ok = miss == 0 && secs < 120.0;
  if (c.detail.empty())
    c.detail = std::to_string(cases) + " instances (" + std::to_string(yes) +
               " yes) in " + std::to_string(secs) + " s";
  REQUIRE(c.ok);
}

TEST_CASE("criteria 3 and 5: characterization and direction balance") {
  Criterion c3{3, "greedy success == validity over all selections, n <= 10"};
  Criterion c5{5, "every successful selection moves exactly theta clockwise"};
  int instances = 0, gammas = 0;
  for (uint64_t seed = 0; instances < 55; ++seed) {
    int n = 3 + static_cast<int>(seed % 8);
    Instance inst = seed % 2 ? generate_yes_instance(n, seed + 20000)
                             : generate_random_instance(n, seed + 20000);
    CycleGeometry geom(inst);
    DirectionBalance balance = geom.balance();
    // Two bijections always balance: the infeasible branch is unreachable,
    // making the "zero successes when infeasible" half vacuous.
    if (!balance.feasible) {
      c5.ok = false;
      c5.detail = "balance infeasible on a well-formed instance";
    }
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
      Selection gamma = selection_from_bits(bits, n);
      bool greedy = greedy_swap(inst, gamma).yields;
      if (greedy != geom.is_valid(gamma)) {
        c3.ok = false;
        if (c3.detail.empty())
          c3.detail = "mismatch at seed " + std::to_string(seed) + " bits " +
                      std::to_string(bits);
      }
      ++gammas;
      if (!greedy) continue;
      int cw = 0;
      for (ObjectId p = 0; p < n; ++p)
        if (geom.stationary(p) || gamma[p]) ++cw;
      if (cw != balance.clockwise_count) {
        c5.ok = false;
        if (c5.detail.empty())
          c5.detail = "count off at seed " + std::to_string(seed);
      }
    }
    ++instances;
  }
  if (c3.detail.empty())
    c3.detail = std::to_string(instances) + " instances, " +
                std::to_string(gammas) + " selections";
  if (c5.detail.empty()) c5.detail = "balance held on every success";
  CHECK(c3.ok);
  CHECK(c5.ok);
  REQUIRE((c3.ok && c5.ok));
}

TEST_CASE("criterion 4: guess formulas decide exactly the valid selections") {
  Criterion c{4, "model set == valid selections respecting each guess, n <= 8"};
  int instances = 0, guesses = 0, discrepancies = 0;
  for (uint64_t seed = 0; instances < 160; ++seed) {
    int n = 3 + static_cast<int>(seed % 6);
    Instance raw = seed % 2 ? generate_yes_instance(n, seed + 30000)
                            : generate_random_instance(n, seed + 30000);
    SolverContext ctx(raw);
    const Instance& inst = ctx.instance();
    ++instances;
    if (inst.initial == inst.target) continue;
    for (EdgeId e = 0; e < n; ++e) {
      if (!ctx.first_swap_rational(e)) continue;
      ++guesses;
      GuessOutcome out = analyze_guess(ctx, e);
      auto expected = selections_where(n, [&](const Selection& gamma) {
        return gamma[out.guess.cw_object] == 1 &&
               gamma[out.guess.ccw_object] == 0 &&
               greedy_swap(inst, gamma).yields;
      });
      bool match;
      if (out.wrong) {
        match = expected.empty();
      } else {
        auto models = selections_where(n, [&](const Selection& gamma) {
          return satisfies(out.formula, gamma);
        });
        match = models == expected;
      }
      if (!match) {
        ++discrepancies;
        if (c.detail.empty())
          c.detail = "discrepancy at seed " + std::to_string(seed) + " edge " +
                     std::to_string(e);
      }
    }
  }
  c.ok = discrepancies == 0;
  if (c.detail.empty())
    c.detail = std::to_string(guesses) + " guesses across " +
               std::to_string(instances) + " instances";
  REQUIRE(c.ok);
}

TEST_CASE("criterion 6: candidate-list bound up to n = 500") {
  Criterion c{6, "sum of |C(p,e)| stays within 4n per object"};
  for (int n : {3, 5, 8, 16, 64, 200, 500}) {
    Instance inst = n % 2 ? generate_yes_instance(n, n)
                          : generate_random_instance(n, n);
    CandidateTable t = build_candidate_table(inst);
    for (ObjectId p = 0; p < n && c.ok; ++p) {
      size_t total = 0;
      for (EdgeId e = 0; e < n; ++e) total += t.candidates(p, e).size();
      if (total > static_cast<size_t>(4 * n)) {
        c.ok = false;
        c.detail = "object " + std::to_string(p) + " at n " +
                   std::to_string(n) + " holds " + std::to_string(total);
      }
    }
  }
  if (c.detail.empty()) c.detail = "checked n up to 500";
  REQUIRE(c.ok);
}

TEST_CASE("criterion 7: greedy verdicts independent of tie-breaking") {
  Criterion c{7, "20 random pick policies agree on 100 (instance, selection)"};
  Rng rng(777);
  int pairs = 0;
  while (pairs < 100 && c.ok) {
    int n = 3 + static_cast<int>(rng.below(6));
    uint64_t seed = rng.next();
    Instance inst = pairs % 2 ? generate_yes_instance(n, seed)
                              : generate_random_instance(n, seed);
    Selection gamma(n);
    for (int p = 0; p < n; ++p) gamma[p] = rng.below(2);
    bool base = greedy_swap(inst, gamma).yields;
    for (int policy = 0; policy < 20; ++policy) {
      uint64_t salt = rng.next();
      GreedyResult alt = greedy_swap_with_policy(
          inst, gamma, [salt](const std::vector<AgentId>& cand) {
            return cand[salt % cand.size()];
          });
      if (alt.yields != base) {
        c.ok = false;
        c.detail = "policy divergence at pair " + std::to_string(pairs);
        break;
      }
    }
    ++pairs;
  }
  if (c.detail.empty()) c.detail = "100 pairs x 20 policies";
  REQUIRE(c.ok);
}

TEST_CASE("criterion 8: two-sat engine against brute force") {
  Criterion c{8, "verdicts match exhaustive search on 1000 formulas"};
  Rng rng(4242);
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    int nvars = 2 + static_cast<int>(rng.below(11));
    int nclauses = static_cast<int>(rng.below(3 * nvars + 2));
    TwoSatFormula f(nvars);
    for (int k = 0; k < nclauses; ++k) {
      Literal a{static_cast<int>(rng.below(nvars)), rng.chance(0.5)};
      Literal b{static_cast<int>(rng.below(nvars)), rng.chance(0.5)};
      if (rng.chance(0.1))
        f.add_unit(a);
      else
        f.add_clause(a, b);
    }
    TwoSatSolution sol = solve(f);
    bool brute = brute_force_sat(f).has_value();
    if (sol.sat != brute || (sol.sat && !satisfies(f, sol.model))) {
      c.ok = false;
      c.detail = "trial " + std::to_string(trial);
    }
  }
  if (c.detail.empty()) c.detail = "1000 formulas, <= 12 variables";
  REQUIRE(c.ok);
}

TEST_CASE("criterion 9: clique reduction preserves the answer") {
  Criterion c{9, "oracle(RO) == oracle(reduce(RO)) on 200+ clique queries"};
  int cases = 0, yes = 0;
  for (uint64_t seed = 0; cases < 210 && c.ok; ++seed) {
    int n = 2 + static_cast<int>(seed % 3);
    ROInstance ro = generate_random_clique_ro(n, seed + 40000);
    Instance reduced = reduce_ro_to_ra(ro);
    if (reduced.n != 2 * n || !is_clique(reduced)) {
      c.ok = false;
      c.detail = "output shape broken at seed " + std::to_string(seed);
      break;
    }
    bool want = oracle_reachable_object(ro).reachable;
    bool got = oracle_reachable_assignment(reduced).reachable;
    if (want != got) {
      c.ok = false;
      c.detail = "answer flipped at seed " + std::to_string(seed);
      break;
    }
    yes += want;
    ++cases;
  }
  if (c.detail.empty())
    c.detail = std::to_string(cases) + " queries (" + std::to_string(yes) +
               " reachable)";
  REQUIRE(c.ok);
}

TEST_CASE("criterion 10: cubic-like scaling on yes-guaranteed instances") {
  Criterion c{10, "median solve at n=400 within 10x of n=200 and under 5 s"};
  std::vector<double> t200, t400;
  for (int trial = 0; trial < 5; ++trial) {
    for (int n : {200, 400}) {
      Instance inst = generate_yes_instance(n, 50000 + trial);
      auto t0 = std::chrono::steady_clock::now();
      SolveResult res = solve(inst);
      auto t1 = std::chrono::steady_clock::now();
      REQUIRE(res.yes);
      (n == 200 ? t200 : t400)
          .push_back(std::chrono::duration<double, std::milli>(t1 - t0)
                         .count());
    }
  }
  double m200 = median_ms(t200), m400 = median_ms(t400);
  c.ok = m400 <= 10.0 * m200 && m400 < 5000.0;
  c.detail = "median " + std::to_string(m200) + " ms at 200 vs " +
             std::to_string(m400) + " ms at 400";
  REQUIRE(c.ok);
}
