#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eisp/errors.hpp"
#include "eisp/harness.hpp"
#include "eisp/milp.hpp"
#include "eisp/planner.hpp"
#include "eisp/world.hpp"

namespace {

using eisp::Cell;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  eisp::require(out.good(), "cannot open output file " + path);
  out << text;
}

std::vector<eisp::BenchCase> parse_bench_cases(const std::vector<std::string>& specs) {
  std::vector<eisp::BenchCase> cases;
  for (const std::string& s : specs) {
    auto x = s.find('x');
    auto colon = s.find(':');
    eisp::require(x != std::string::npos && colon != std::string::npos && x < colon,
                  "bench case must look like 4x4:11, got " + s);
    int a = std::stoi(s.substr(0, x));
    int b = std::stoi(s.substr(x + 1, colon - x - 1));
    int e = std::stoi(s.substr(colon + 1));
    eisp::require(a == b, "bench grids are square, got " + s);
    cases.push_back({a, e});
  }
  return cases;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Energy-constrained exploration planner with incremental symbolic perception"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, details_path, dump_dir, stats_path;
  std::optional<uint64_t> seed_flag;
  bool verify = false;
  bool pruned_dot = false;
  int cases = 10;
  int case_id = 1;
  int threads = 1;
  std::vector<std::string> bench_specs;

  CLI::App* run = app.add_subcommand("run", "One online planning run; writes a JSONL trace");
  run->add_option("--scenario", scenario_path, "Scenario document")->required();
  run->add_option("--seed", seed_flag, "Override the scenario seed");
  run->add_option("--out", out_path, "Trace output path (default stdout)");
  run->add_option("--dump-rewards", dump_dir, "Write per-step reward grids to this directory");
  run->add_option("--stats", stats_path, "Per-step solver statistics CSV (wall times included)");
  run->add_flag("--verify", verify, "Cross-check every step against the enumeration oracle");
  uint64_t verify_limit = 2000000;
  run->add_option("--verify-limit", verify_limit,
                  "Path-count guard for --verify (default 2e6)");

  CLI::App* baseline = app.add_subcommand("baseline", "Full-information optimum for a scenario");
  baseline->add_option("--scenario", scenario_path, "Scenario document")->required();
  baseline->add_option("--out", out_path, "Output path (default stdout)");

  CLI::App* regret = app.add_subcommand("regret", "Batch regret evaluation against the baseline");
  regret->add_option("--scenario", scenario_path, "Scenario template with placement \"random\"")
      ->required();
  regret->add_option("--cases", cases, "Number of generated instances");
  regret->add_option("--seed", seed_flag, "Batch seed (default: template seed)");
  regret->add_option("--case-id", case_id, "Case label for the summary row");
  regret->add_option("--out", out_path, "Summary CSV path (default stdout)");
  regret->add_option("--details", details_path, "Optional per-instance CSV path");

  CLI::App* bench = app.add_subcommand("bench", "First-iteration model sizes and solve times");
  bench->add_option("--case", bench_specs, "Grid and exploration energy, e.g. 6x6:16");
  bench->add_option("--threads", threads, "Solver threads (times become non-reproducible)");
  bench->add_option("--out", out_path, "CSV output path (default stdout)");

  CLI::App* export_lp = app.add_subcommand("export-lp", "Write the first-step model in LP format");
  export_lp->add_option("--scenario", scenario_path, "Scenario document")->required();
  export_lp->add_option("--seed", seed_flag, "Override the scenario seed");
  export_lp->add_option("--out", out_path, "LP output path (default stdout)");

  CLI::App* export_dot = app.add_subcommand("export-dot", "Write the product DAG in dot format");
  export_dot->add_option("--scenario", scenario_path, "Scenario document")->required();
  export_dot->add_option("--seed", seed_flag, "Override the scenario seed");
  export_dot->add_option("--out", out_path, "Dot output path (default stdout)");
  export_dot->add_flag("--pruned", pruned_dot, "Prune to goal-reaching states first");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    eisp::Scenario scenario = eisp::load_scenario_file(scenario_path);
    uint64_t seed = seed_flag.value_or(scenario.seed());
    eisp::RunOptions options;
    options.dump_rewards_dir = dump_dir;
    options.verify = verify;
    options.verify_max_paths = verify_limit;
    eisp::EispRun planner_run(scenario, seed, options);
    planner_run.run();
    write_output(out_path, planner_run.trace().to_jsonl(scenario));
    if (!stats_path.empty()) write_output(stats_path, eisp::step_stats_csv(planner_run.step_stats()));
  } else if (baseline->parsed()) {
    eisp::Scenario scenario = eisp::load_scenario_file(scenario_path);
    eisp::BaselineResult result = eisp::full_info_baseline(scenario);
    nlohmann::json doc;
    doc["reward"] = result.reward.to_string();
    doc["optimal"] = result.optimal;
    nlohmann::json path = nlohmann::json::array();
    for (Cell c : result.path) path.push_back(nlohmann::json::array({c.row, c.col}));
    doc["path"] = path;
    nlohmann::json serviced = nlohmann::json::array();
    for (Cell c : result.serviced) serviced.push_back(nlohmann::json::array({c.row, c.col}));
    doc["serviced"] = serviced;
    write_output(out_path, doc.dump() + "\n");
  } else if (regret->parsed()) {
    eisp::Scenario scenario = eisp::load_scenario_file(scenario_path);
    uint64_t seed = seed_flag.value_or(scenario.seed());
    eisp::RegretReport report = eisp::evaluate_regret(scenario, cases, seed, case_id);
    write_output(out_path, report.summary_csv());
    if (!details_path.empty()) write_output(details_path, report.details_csv());
  } else if (bench->parsed()) {
    std::vector<eisp::BenchCase> bench_cases = parse_bench_cases(bench_specs);
    if (bench_cases.empty()) bench_cases = {{4, 11}, {5, 13}, {6, 16}};
    eisp::BenchReport report = eisp::run_bench(bench_cases, threads);
    write_output(out_path, report.to_csv());
  } else if (export_lp->parsed()) {
    eisp::Scenario scenario = eisp::load_scenario_file(scenario_path);
    uint64_t seed = seed_flag.value_or(scenario.seed());
    eisp::FirstStep fs = eisp::prepare_first_step(scenario, seed);
    eisp::MilpModel model = eisp::build_model(fs.pruned, scenario.grid().init(), fs.field,
                                              scenario.lambda(), scenario.sensing_range());
    write_output(out_path, model.export_lp());
  } else if (export_dot->parsed()) {
    eisp::Scenario scenario = eisp::load_scenario_file(scenario_path);
    uint64_t seed = seed_flag.value_or(scenario.seed());
    eisp::EnergyAllocation alloc = eisp::allocation_for_run(scenario, seed);
    eisp::ProductGraph graph = eisp::construct_product_dag(scenario.grid(), alloc.exploration);
    if (pruned_dot)
      graph = eisp::prune(graph, eisp::ProductNode{scenario.grid().init(), alloc.exploration});
    write_output(out_path, graph.to_dot(scenario.grid()));
  }
  return eisp::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const eisp::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eisp::kExitValidation;
  } catch (const eisp::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return eisp::kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return eisp::kExitInvariant;
  }
}
