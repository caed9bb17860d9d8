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

#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "ringswap/json_io.hpp"
#include "ringswap/ringswap.hpp"

namespace {

using namespace ringswap;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct GlobalFlags {
  bool one_indexed = false;
  std::string format = "json";
  uint64_t seed = 0;
  std::string emit_cnf;
};

Selection parse_selection(const std::string& text, int n) {
  Selection gamma;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c != '0' && c != '1')
      throw std::runtime_error("selection must be a list of 0/1 bits");
    gamma.push_back(c == '1');
  }
  if (static_cast<int>(gamma.size()) != n)
    throw std::runtime_error("selection must assign all " + std::to_string(n) +
                             " objects");
  return gamma;
}

void emit_formulas(const SolverContext& ctx, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (EdgeId e = 0; e < ctx.instance().n; ++e) {
    if (!ctx.first_swap_rational(e)) continue;
    GuessOutcome out = analyze_guess(ctx, e);
    std::ofstream f(dir + "/guess_" + std::to_string(e) + ".cnf");
    f << "c first swap at edge {" << e << "," << cw_next(e, ctx.instance().n)
      << "}\n"
      << to_dimacs(out.formula);
  }
}

int cmd_solve(const std::string& path, const GlobalFlags& flags) {
  Instance inst = instance_from_json(load_json_file(path), flags.one_indexed);
  if (!inst.is_cycle()) {
    std::cerr << "error: solve expects a cycle instance\n";
    return kExitError;
  }
  auto t0 = std::chrono::steady_clock::now();
  SolveResult res = solve(inst);
  auto t1 = std::chrono::steady_clock::now();
  if (!flags.emit_cnf.empty()) {
    SolverContext ctx(inst);
    emit_formulas(ctx, flags.emit_cnf);
  }
  json j = solve_result_to_json(res, inst.n, flags.one_indexed);
  if (flags.format == "text") {
    std::cout << (res.yes ? "yes" : "no");
    if (res.first_swap_edge)
      std::cout << " (first swap at edge {" << *res.first_swap_edge << ","
                << cw_next(*res.first_swap_edge, inst.n) << "}, "
                << res.trace->swaps.size() << " swaps)";
    std::cout << " in "
              << std::chrono::duration<double, std::milli>(t1 - t0).count()
              << " ms\n";
  } else {
    std::cout << j.dump(2) << '\n';
  }
  return res.yes ? kExitYes : kExitNo;
}

int cmd_oracle(const std::string& path, const std::string& mode, int cap,
               bool force, int agent, int object, const GlobalFlags& flags) {
  json j = load_json_file(path);
  OracleOptions opts;
  opts.cap = cap;
  opts.allow_large = force;
  bool reachable = false;
  json out;
  if (mode == "ra") {
    Instance inst = instance_from_json(j, flags.one_indexed);
    OracleAnswer ans = oracle_reachable_assignment(inst, opts);
    reachable = ans.reachable;
    out["answer"] = reachable ? "yes" : "no";
    out["states_explored"] = ans.states_explored;
    out["trace"] = ans.trace ? trace_to_json(*ans.trace, flags.one_indexed)
                             : json(nullptr);
  } else {
    if (agent >= 0) j["agent"] = agent;
    if (object >= 0) j["object"] = object;
    ROInstance ro = ro_from_json(j, flags.one_indexed);
    OracleAnswer ans = oracle_reachable_object(ro, opts);
    reachable = ans.reachable;
    out["answer"] = reachable ? "yes" : "no";
    out["states_explored"] = ans.states_explored;
  }
  std::cout << out.dump(2) << '\n';
  return reachable ? kExitYes : kExitNo;
}

int cmd_greedy(const std::string& path, const std::string& selection,
               const GlobalFlags& flags) {
  Instance inst = apply_rule_1(
      instance_from_json(load_json_file(path), flags.one_indexed));
  GreedyResult res = greedy_swap(inst, parse_selection(selection, inst.n));
  json out;
  out["yields"] = res.yields;
  if (res.yields) {
    out["trace"] = trace_to_json(*res.trace, flags.one_indexed);
  } else {
    switch (*res.failure) {
      case GreedyFailure::kAllSameDirection:
        out["reason"] = "all-same-direction";
        break;
      case GreedyFailure::kIrrationalMeeting:
        out["reason"] = "irrational-meeting";
        out["pair"] = {{"a", res.failing_pair->a},
                       {"b", res.failing_pair->b},
                       {"oa", res.failing_pair->oa},
                       {"ob", res.failing_pair->ob}};
        break;
      case GreedyFailure::kStalledShortOfTarget:
        out["reason"] = "stalled-short-of-target";
        break;
    }
  }
  std::cout << out.dump(2) << '\n';
  return res.yields ? kExitYes : kExitNo;
}

int cmd_verify(const std::string& path, const std::string& trace_path,
               const GlobalFlags& flags) {
  Instance inst = apply_rule_1(
      instance_from_json(load_json_file(path), flags.one_indexed));
  SwapTrace trace{swaps_from_json(load_json_file(trace_path),
                                  flags.one_indexed),
                  inst.initial, inst.target};
  bool ok = verify_trace(inst, trace);
  std::cout << (ok ? "valid\n" : "invalid\n");
  return ok ? kExitYes : kExitNo;
}

int cmd_inspect(const std::string& path, const GlobalFlags& flags) {
  Instance inst = apply_rule_1(
      instance_from_json(load_json_file(path), flags.one_indexed));
  CandidateTable table = build_candidate_table(inst);
  json j = candidate_table_to_json(inst, table, flags.one_indexed);
  DirectionBalance b = direction_balance(inst);
  j["clockwise_count"] = b.feasible ? json(b.clockwise_count) : json(nullptr);
  std::cout << j.dump(2) << '\n';
  return kExitYes;
}

int cmd_gen(int n, const std::string& mode, const GlobalFlags& flags) {
  Instance inst = mode == "random"
                      ? generate_random_instance(n, flags.seed)
                      : generate_yes_instance(n, flags.seed);
  std::cout << instance_to_json(inst, flags.one_indexed).dump(2) << '\n';
  return kExitYes;
}

int cmd_reduce(const std::string& path, const GlobalFlags& flags) {
  ROInstance ro = ro_from_json(load_json_file(path), flags.one_indexed);
  Instance out = reduce_ro_to_ra(ro);
  std::cout << instance_to_json(out, flags.one_indexed).dump(2) << '\n';
  return kExitYes;
}

int cmd_bench(const std::string& sizes_text, int trials,
              const GlobalFlags& flags) {
  std::vector<int> sizes;
  size_t pos = 0;
  while (pos < sizes_text.size()) {
    size_t comma = sizes_text.find(',', pos);
    if (comma == std::string::npos) comma = sizes_text.size();
    sizes.push_back(std::stoi(sizes_text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  std::cout << "size,mode,median_ms,p90_ms\n";
  for (int n : sizes) {
    for (const char* mode : {"yes-guaranteed", "random"}) {
      std::vector<double> ms;
      for (int t = 0; t < trials; ++t) {
        uint64_t seed = flags.seed + 7919 * t + n;
        Instance inst = std::string(mode) == "random"
                            ? generate_random_instance(n, seed)
                            : generate_yes_instance(n, seed);
        auto t0 = std::chrono::steady_clock::now();
        solve(inst);
        auto t1 = std::chrono::steady_clock::now();
        ms.push_back(
            std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      std::sort(ms.begin(), ms.end());
      double median = ms[ms.size() / 2];
      double p90 = ms[std::min(ms.size() - 1,
                               static_cast<size_t>(ms.size() * 9 / 10))];
      std::cout << n << ',' << mode << ',' << median << ',' << p90 << '\n';
    }
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachable-assignment toolkit for cycle trading networks"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_flag("--one-indexed", flags.one_indexed,
               "read and write 1-indexed agent/object labels");
  app.add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", flags.seed, "generator seed");
  app.add_option("--emit-cnf", flags.emit_cnf,
                 "dump per-guess DIMACS formulas into this directory");

  std::string path, trace_path, selection, mode = "ra", gen_mode = "random";
  std::string sizes = "100,200,400";
  int cap = 8, agent = -1, object = -1, n = 8, trials = 5;
  bool force = false;

  auto* solve_cmd = app.add_subcommand("solve", "decide reachability");
  solve_cmd->add_option("instance", path)->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive ground truth");
  oracle_cmd->add_option("instance", path)->required();
  oracle_cmd->add_option("--mode", mode)->check(CLI::IsMember({"ra", "ro"}));
  oracle_cmd->add_option("--cap", cap);
  oracle_cmd->add_flag("--force", force, "ignore the size cap");
  oracle_cmd->add_option("--agent", agent);
  oracle_cmd->add_option("--object", object);

  auto* greedy_cmd = app.add_subcommand("greedy", "run one selection");
  greedy_cmd->add_option("instance", path)->required();
  greedy_cmd->add_option("--selection", selection,
                         "direction bits, e.g. 0,1,0")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check a swap trace");
  verify_cmd->add_option("instance", path)->required();
  verify_cmd->add_option("--trace", trace_path)->required();

  auto* inspect_cmd = app.add_subcommand("inspect", "dump candidate lists");
  inspect_cmd->add_option("instance", path)->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--n", n)->check(CLI::Range(3, 100000));
  gen_cmd->add_option("--mode", gen_mode)
      ->check(CLI::IsMember({"random", "yes-guaranteed"}));

  auto* reduce_cmd =
      app.add_subcommand("reduce", "reachable-object to reachable-assignment");
  reduce_cmd->add_option("instance", path)->required();

  auto* bench_cmd = app.add_subcommand("bench", "timing table");
  bench_cmd->add_option("--sizes", sizes);
  bench_cmd->add_option("--trials", trials)->check(CLI::Range(1, 1000));

  // global flags may follow the subcommand
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
    if (solve_cmd->parsed()) return cmd_solve(path, flags);
    if (oracle_cmd->parsed())
      return cmd_oracle(path, mode, cap, force, agent, object, flags);
    if (greedy_cmd->parsed()) return cmd_greedy(path, selection, flags);
    if (verify_cmd->parsed()) return cmd_verify(path, trace_path, flags);
    if (inspect_cmd->parsed()) return cmd_inspect(path, flags);
    if (gen_cmd->parsed()) return cmd_gen(n, gen_mode, flags);
    if (reduce_cmd->parsed()) return cmd_reduce(path, flags);
    if (bench_cmd->parsed()) return cmd_bench(sizes, trials, flags);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitYes : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
