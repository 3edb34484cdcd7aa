#include "eisp/planner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "eisp/errors.hpp"
#include "json.hpp"

namespace eisp {

using nlohmann::json;

namespace {

constexpr uint64_t kAllocationStream = 1;

json cell_json(Cell c) { return json::array({c.row, c.col}); }

void dump_field(const RewardField& field, const GridTs& grid, const std::string& dir, int step) {
  std::filesystem::create_directories(dir);
  char name[32];
  std::snprintf(name, sizeof(name), "rewards_step_%04d.csv", step);
  std::ofstream out(std::filesystem::path(dir) / name);
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      if (c > 0) out << ",";
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", field.at(grid, Cell{r, c}).to_double());
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace

EnergyAllocation allocation_for_run(const Scenario& scenario, uint64_t seed) {
  Rng rng(derive_seed(seed, kAllocationStream));
  return sample_energy_budget(scenario, rng);
}

EispRun::EispRun(const Scenario& scenario, uint64_t seed, RunOptions options)
    : scenario_(scenario),
      options_(std::move(options)),
      knowledge_(scenario.grid(), scenario.refinement()) {
  require(scenario.placement_mode() == PlacementMode::kExplicit,
          "running requires an explicit target placement (generate scenarios first)");

  trace_.allocation = allocation_for_run(scenario, seed);
  trace_.scenario_hash = scenario.content_hash();
  trace_.seed = seed;

  product_ = construct_product_dag(scenario.grid(), trace_.allocation.exploration);

  position_ = scenario.grid().init();
  motion_energy_ = trace_.allocation.exploration;
  servicing_energy_ = trace_.allocation.servicing;
  trace_.serviced_reward = Rational(0);
  trace_.events.push_back(MoveEvent{position_, motion_energy_});
}

int EispRun::remaining_target_bound() const {
  int rem = trace_.allocation.target_bound - serviced_count_;
  return rem > 0 ? rem : 0;
}

void EispRun::step() {
  invariant(!done_, "step called after the goal was reached");
  const GridTs& grid = scenario_.grid();

  visited_.insert(grid.index_of(position_));

  // Observe everything in range, then fold into the tracking state.
  std::map<Cell, SymbolId> observations;
  auto rings = sensing_neighborhood(grid, position_, scenario_.sensing_range());
  for (const auto& ring : rings)
    for (Cell c : ring) observations[c] = scenario_.observe(position_, c);
  KnowledgeEvent ke{position_, knowledge_.update(position_, observations)};
  trace_.events.push_back(std::move(ke));

  // Target servicing. The distance-0 observation is the ground truth.
  SymbolId truth = knowledge_.at(position_);
  invariant(scenario_.refinement().layer(truth) == 0, "current cell not resolved to ground truth");
  bool serviced_here = serviced_cells_.count(grid.index_of(position_)) > 0;
  int cost = scenario_.servicing_energy(truth);
  if (scenario_.is_target(truth) && !serviced_here && cost <= servicing_energy_) {
    servicing_energy_ -= cost;
    const Rational& reward = scenario_.target_reward(truth);
    trace_.serviced_reward += reward;
    serviced_cells_.insert(grid.index_of(position_));
    ++serviced_count_;
    trace_.events.push_back(ServiceEvent{position_, truth, reward, servicing_energy_});
  } else {
    trace_.events.push_back(NoServiceEvent{position_, truth});
  }

  RewardField field =
      compute_reward_field(knowledge_, visited_, remaining_target_bound(), scenario_);
  if (!options_.dump_rewards_dir.empty())
    dump_field(field, grid, options_.dump_rewards_dir, step_index_);

  ProductGraph pruned = prune(product_, ProductNode{position_, motion_energy_});
  MilpModel model =
      build_model(pruned, position_, field, scenario_.lambda(), scenario_.sensing_range());
  MilpSolution solution = solve(model, options_.solver);
  invariant(solution.stats.optimal, "solver hit its node limit mid-run");

  if (options_.verify) {
    MilpSolution reference = oracle_solve(pruned, position_, field, scenario_.lambda(),
                                          scenario_.sensing_range(), options_.verify_max_paths);
    invariant(std::abs(solution.objective - reference.objective) <= 1e-9,
              "solver and enumeration oracle disagree at step " + std::to_string(step_index_));
  }

  trace_.events.push_back(PlanEvent{solution.grid_path, solution.objective,
                                    solution.stats.nodes_explored,
                                    solution.stats.bound_evaluations, pruned.num_nodes(),
                                    pruned.num_edges()});
  step_stats_.push_back(StepStats{step_index_, pruned.num_nodes(), pruned.num_edges(),
                                  model.counts().binaries(), model.counts().continuous(),
                                  solution.stats.nodes_explored, solution.stats.wall_ms});

  invariant(solution.grid_path.size() >= 2, "plan does not leave the current cell");
  Cell next = solution.grid_path[1];
  motion_energy_ -= grid.weight(position_, next);
  invariant(motion_energy_ >= 0, "motion energy went negative");
  position_ = next;
  ++step_index_;
  trace_.events.push_back(MoveEvent{position_, motion_energy_});

  last_field_ = std::move(field);

  if (position_ == grid.goal()) {
    done_ = true;
    trace_.final_servicing_energy = servicing_energy_;
    trace_.final_motion_energy = motion_energy_;
    trace_.steps = step_index_;
  }
}

Trace run_eisp(const Scenario& scenario, uint64_t seed, const RunOptions& options) {
  EispRun run(scenario, seed, options);
  run.run();
  return run.trace();
}

std::string step_stats_csv(const std::vector<StepStats>& stats) {
  std::ostringstream out;
  out << "step,product_nodes,product_edges,binary,continuous,bb_nodes,wall_ms\n";
  for (const StepStats& s : stats) {
    char wall[40];
    std::snprintf(wall, sizeof(wall), "%.3f", s.wall_ms);
    out << s.step << "," << s.product_nodes << "," << s.product_edges << "," << s.binary_vars
        << "," << s.continuous_vars << "," << s.bb_nodes << "," << wall << "\n";
  }
  return out.str();
}

FirstStep prepare_first_step(const Scenario& scenario, uint64_t seed) {
  require(scenario.placement_mode() == PlacementMode::kExplicit,
          "model preparation requires an explicit target placement");
  const GridTs& grid = scenario.grid();

  FirstStep fs;
  fs.allocation = allocation_for_run(scenario, seed);

  KnowledgeMap knowledge(grid, scenario.refinement());
  std::map<Cell, SymbolId> observations;
  auto rings = sensing_neighborhood(grid, grid.init(), scenario.sensing_range());
  for (const auto& ring : rings)
    for (Cell c : ring) observations[c] = scenario.observe(grid.init(), c);
  knowledge.update(grid.init(), observations);

  int remaining = fs.allocation.target_bound;
  SymbolId truth = knowledge.at(grid.init());
  if (scenario.is_target(truth) && scenario.servicing_energy(truth) <= fs.allocation.servicing)
    remaining = std::max(remaining - 1, 0);

  std::set<int> visited{grid.index_of(grid.init())};
  fs.field = compute_reward_field(knowledge, visited, remaining, scenario);

  ProductGraph raw = construct_product_dag(grid, fs.allocation.exploration);
  fs.pruned = prune(raw, ProductNode{grid.init(), fs.allocation.exploration});
  return fs;
}

std::string Trace::to_jsonl(const Scenario& scenario) const {
  const Refinement& refinement = scenario.refinement();
  std::ostringstream out;

  char hash_hex[20];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(scenario_hash));

  json header;
  header["kind"] = "header";
  header["scenario"] = hash_hex;
  header["seed"] = seed;
  json freq;
  for (const auto& [sym, f] : allocation.frequencies) freq[refinement.name_of(sym)] = f;
  header["allocation"] = {{"E", allocation.total},
                          {"E_kappa", allocation.servicing},
                          {"E_epsilon", allocation.exploration},
                          {"N", allocation.target_bound},
                          {"frequencies", freq}};
  out << header.dump() << "\n";

  for (const TraceEvent& event : events) {
    json e;
    if (const auto* move = std::get_if<MoveEvent>(&event)) {
      e["kind"] = "move";
      e["cell"] = cell_json(move->cell);
      e["motion_energy"] = move->motion_energy_after;
    } else if (const auto* know = std::get_if<KnowledgeEvent>(&event)) {
      e["kind"] = "knowledge";
      e["robot"] = cell_json(know->robot);
      json updates = json::array();
      for (const TrackingUpdate& u : know->updates) {
        json j;
        j["cell"] = cell_json(u.cell);
        j["before"] = refinement.name_of(u.before);
        j["after"] = refinement.name_of(u.after);
        j["distance"] = u.distance;
        updates.push_back(j);
      }
      e["updates"] = updates;
    } else if (const auto* service = std::get_if<ServiceEvent>(&event)) {
      e["kind"] = "service";
      e["cell"] = cell_json(service->cell);
      e["symbol"] = refinement.name_of(service->symbol);
      e["reward"] = service->reward.to_string();
      e["servicing_energy"] = service->servicing_energy_after;
    } else if (const auto* noservice = std::get_if<NoServiceEvent>(&event)) {
      e["kind"] = "no_service";
      e["cell"] = cell_json(noservice->cell);
      e["symbol"] = refinement.name_of(noservice->symbol);
    } else if (const auto* plan = std::get_if<PlanEvent>(&event)) {
      e["kind"] = "plan";
      json path = json::array();
      for (Cell c : plan->path) path.push_back(cell_json(c));
      e["path"] = path;
      e["objective"] = plan->objective;
      e["bb_nodes"] = plan->bb_nodes;
      e["bound_evals"] = plan->bound_evaluations;
      e["product_nodes"] = plan->product_nodes;
      e["product_edges"] = plan->product_edges;
    }
    out << e.dump() << "\n";
  }

  json footer;
  footer["kind"] = "footer";
  footer["serviced_reward"] = serviced_reward.to_string();
  footer["servicing_energy"] = final_servicing_energy;
  footer["motion_energy"] = final_motion_energy;
  footer["steps"] = steps;
  out << footer.dump() << "\n";
  return out.str();
}

}  // namespace eisp
