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

namespace {

ROInstance fig1_as_ro() {
  Instance tri = fig1();
  ROInstance ro;
  ro.n = 3;
  GeneralTopology gt;
  gt.edges = {{0, 1}, {1, 2}, {0, 2}};
  ro.topology = std::move(gt);
  ro.prefs = tri.prefs;
  ro.initial = tri.initial;
  ro.agent = 0;
  ro.object = 1;
  return ro;
}

}  // namespace

TEST_CASE("reduction output shape") {
  Instance out = reduce_ro_to_ra(fig1_as_ro());
  CHECK(out.n == 6);
  CHECK(is_clique(out));
  CHECK(out.initial.size() == 6);
  SECTION("targets head every list, so rule 1 is a no-op") {
    for (AgentId i = 0; i < out.n; ++i)
      CHECK(out.prefs.list(i).front() == out.target.object_at(i));
    Instance pruned = apply_rule_1(out);
    CHECK(pruned.prefs.lists() == out.prefs.lists());
  }
  SECTION("only the queried agent's copy accepts the queried object") {
    for (AgentId copy = 3; copy < 6; ++copy) {
      bool lists_wanted = out.prefs.ranks(copy, 1);
      CHECK(lists_wanted == (copy == 3));
    }
  }
}

TEST_CASE("reduction rejects non-cliques") {
  ROInstance ro = fig1_as_ro();
  GeneralTopology path;
  path.edges = {{0, 1}, {1, 2}};
  ro.topology = std::move(path);
  CHECK_THROWS_AS(reduce_ro_to_ra(ro), NotAClique);
}

TEST_CASE("reduction preserves the answer on random clique queries") {
  OracleOptions opts;
  opts.cap = 8;
  int yes = 0, no = 0;
  for (uint64_t seed = 0; seed < 120; ++seed) {
    int n = 2 + static_cast<int>(seed % 3);
    ROInstance ro = generate_random_clique_ro(n, seed + 5000);
    bool want = oracle_reachable_object(ro, opts).reachable;
    Instance reduced = reduce_ro_to_ra(ro);
    bool got = oracle_reachable_assignment(reduced, opts).reachable;
    INFO("seed " << seed << " n " << n << " agent " << ro.agent << " object "
                 << ro.object);
    REQUIRE(got == want);
    (want ? yes : no) += 1;
  }
  // the sweep must exercise both answers
  CHECK(yes > 10);
  CHECK(no > 10);
}
