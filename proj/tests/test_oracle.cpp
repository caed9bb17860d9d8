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

TEST_CASE("oracle solves the triangle in two swaps") {
  OracleAnswer ans = oracle_reachable_assignment(fig1());
  REQUIRE(ans.reachable);
  REQUIRE(ans.trace);
  CHECK(ans.trace->swaps.size() == 2);
  CHECK(verify_trace(fig1(), *ans.trace));
}

TEST_CASE("oracle answers identity immediately") {
  Instance id = make_cycle_instance(3, {{0}, {1}, {2}}, {0, 1, 2}, {0, 1, 2});
  OracleAnswer ans = oracle_reachable_assignment(id);
  REQUIRE(ans.reachable);
  CHECK(ans.trace->swaps.empty());
}

TEST_CASE("truncating a list can cut the only route") {
  OracleAnswer ans = oracle_reachable_assignment(fig1_truncated());
  CHECK_FALSE(ans.reachable);
}

TEST_CASE("oracle enforces its cap") {
  Instance big = generate_yes_instance(9, 3);
  CHECK_THROWS_AS(oracle_reachable_assignment(big), InstanceTooLarge);
  OracleOptions opts;
  opts.allow_large = true;
  CHECK_NOTHROW(oracle_reachable_assignment(big, opts));
}

TEST_CASE("reachable object on the triangle") {
  Instance tri = fig1();
  ROInstance ro;
  ro.n = 3;
  ro.topology = tri.topology;
  ro.prefs = tri.prefs;
  ro.initial = tri.initial;
  SECTION("agent 0 can obtain x2") {
    ro.agent = 0;
    ro.object = 1;
    CHECK(oracle_reachable_object(ro).reachable);
  }
  SECTION("every agent trivially reaches its initial object") {
    for (AgentId i = 0; i < 3; ++i) {
      ro.agent = i;
      ro.object = tri.initial.object_at(i);
      CHECK(oracle_reachable_object(ro).reachable);
    }
  }
  SECTION("agent 1 never sees x1") {
    ro.agent = 1;
    ro.object = 0;
    CHECK_FALSE(oracle_reachable_object(ro).reachable);
  }
}

TEST_CASE("RA yes implies RO yes for each target pair") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    int n = 3 + static_cast<int>(seed % 4);
    Instance inst = generate_yes_instance(n, seed + 77);
    OracleAnswer ra = oracle_reachable_assignment(inst);
    REQUIRE(ra.reachable);
    // RO has no target assignment, hence no Rule 1; use the pruned lists
    // directly so the dynamics agree.
    Instance pruned = apply_rule_1(inst);
    for (AgentId i = 0; i < n; ++i) {
      ROInstance ro;
      ro.n = n;
      ro.topology = pruned.topology;
      ro.prefs = pruned.prefs;
      ro.initial = pruned.initial;
      ro.agent = i;
      ro.object = pruned.target.object_at(i);
      INFO("seed " << seed << " agent " << i);
      CHECK(oracle_reachable_object(ro).reachable);
    }
  }
}

TEST_CASE("oracle traces always verify") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    int n = 3 + static_cast<int>(seed % 5);
    Instance inst = seed % 2 ? generate_yes_instance(n, seed)
                             : generate_random_instance(n, seed);
    OracleAnswer ans = oracle_reachable_assignment(inst);
    if (ans.reachable) CHECK(verify_trace(apply_rule_1(inst), *ans.trace));
    CHECK(ans.states_explored <= 40320u);  // n! cap for n <= 8
  }
}

TEST_CASE("valid selections exist exactly on reachable instances") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    int n = 3 + static_cast<int>(seed % 4);
    Instance inst = seed % 2 ? generate_yes_instance(n, seed + 7)
                             : generate_random_instance(n, seed + 7);
    bool ra = oracle_reachable_assignment(inst).reachable;
    bool any_valid = !enumerate_valid_selections(inst).empty();
    INFO("seed " << seed);
    CHECK(ra == any_valid);
  }
}

TEST_CASE("selection enumeration on the published examples") {
  auto tri = enumerate_valid_selections(fig1());
  REQUIRE(tri.size() == 1);
  CHECK(tri[0] == Selection{0, 1, 0});
  auto sq = enumerate_valid_selections(fig3());
  CHECK(std::find(sq.begin(), sq.end(), Selection{1, 0, 1, 0}) != sq.end());
  SECTION("identity accepts all selections") {
    Instance id =
        make_cycle_instance(3, {{0}, {1}, {2}}, {0, 1, 2}, {0, 1, 2});
    CHECK(enumerate_valid_selections(id).size() == 8);
  }
}
