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

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ringswap;
using namespace ringswap::testing;

TEST_CASE("direct contradiction is unsat") {
  TwoSatFormula f(1);
  f.add_unit(pos(0));
  f.add_unit(neg(0));
  CHECK_FALSE(solve(f).sat);
}

TEST_CASE("empty formulas are sat with a deterministic model") {
  TwoSatFormula f(3);
  TwoSatSolution a = solve(f);
  TwoSatSolution b = solve(f);
  REQUIRE(a.sat);
  CHECK(a.model == b.model);
}

TEST_CASE("mutual implication with a disjunction forces both true") {
  TwoSatFormula f(2);
  f.add_implication(pos(0), pos(1));
  f.add_implication(pos(1), pos(0));
  f.add_clause(pos(0), pos(1));
  TwoSatSolution s = solve(f);
  REQUIRE(s.sat);
  CHECK(s.model == std::vector<uint8_t>{1, 1});
}

TEST_CASE("tautological implications never constrain") {
  TwoSatFormula f(2);
  f.add_implication(pos(0), pos(0));
  CHECK(solve(f).sat);
}

TEST_CASE("contradiction marker dominates") {
  TwoSatFormula f(2);
  f.add_clause(pos(0), pos(1));
  f.set_contradiction();
  CHECK_FALSE(solve(f).sat);
  CHECK_FALSE(satisfies(f, {1, 1}));
}

TEST_CASE("solver agrees with brute force on random formulas") {
  Rng rng(7);
  for (int trial = 0; trial < 1200; ++trial) {
    int nvars = 2 + static_cast<int>(rng.below(11));
    int nclauses = static_cast<int>(rng.below(3 * nvars + 2));
    TwoSatFormula f(nvars);
    for (int c = 0; c < nclauses; ++c) {
      Literal a{static_cast<int>(rng.below(nvars)), rng.chance(0.5)};
      Literal b{static_cast<int>(rng.below(nvars)), rng.chance(0.5)};
      if (rng.chance(0.1))
        f.add_unit(a);
      else
        f.add_clause(a, b);
    }
    auto brute = brute_force_sat(f);
    TwoSatSolution s = solve(f);
    INFO("trial " << trial);
    REQUIRE(s.sat == brute.has_value());
    if (s.sat) CHECK(satisfies(f, s.model));
  }
}

TEST_CASE("dimacs export keeps the clause count") {
  TwoSatFormula f(2);
  f.add_clause(pos(0), neg(1));
  f.add_unit(pos(1));
  std::string text = to_dimacs(f);
  CHECK(text.find("p cnf 2 2") == 0);
  CHECK(text.find("1 -2 0") != std::string::npos);
  CHECK(text.find("2 2 0") != std::string::npos);
}
