#include "eisp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "eisp/budget.hpp"
#include "eisp/errors.hpp"
#include "eisp/milp.hpp"
#include "eisp/rng.hpp"

namespace eisp {

namespace {

constexpr uint64_t kCaseStream = 0x10000;
constexpr int kBaselineMaskLimit = 16;

std::string fixed3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<Scenario> generate_scenarios(const Scenario& scenario_template, int cases,
                                         uint64_t seed) {
  require(scenario_template.placement_mode() == PlacementMode::kRandom,
          "scenario generation requires placement \"random\"");
  require(cases >= 1, "at least one case required");

  const GridTs& grid = scenario_template.grid();
  double p = scenario_template.distribution_p().to_double();
  int free_cells = grid.num_cells() - 2;  // init and goal stay empty

  std::vector<Scenario> out;
  out.reserve(cases);
  for (int i = 0; i < cases; ++i) {
    uint64_t case_seed = derive_seed(seed, kCaseStream + static_cast<uint64_t>(i));
    for (uint64_t attempt = 0;; ++attempt) {
      invariant(attempt < 1000, "scenario generation keeps drawing too many targets");
      Rng rng(derive_seed(case_seed, attempt));

      std::vector<int> counts;
      int total = 0;
      for (size_t t = 0; t < scenario_template.targets().size(); ++t) {
        int c = rng.next_geometric(p);
        counts.push_back(c);
        total += c;
      }
      if (total > free_cells) continue;  // redraw with the next substream

      std::vector<Cell> cells;
      for (int idx = 0; idx < grid.num_cells(); ++idx) {
        Cell c = grid.cell_at(idx);
        if (c == grid.init() || c == grid.goal()) continue;
        cells.push_back(c);
      }
      rng.shuffle(cells);

      std::vector<std::pair<Cell, SymbolId>> placement;
      int next = 0;
      for (size_t t = 0; t < scenario_template.targets().size(); ++t)
        for (int k = 0; k < counts[t]; ++k)
          placement.push_back({cells[next++], scenario_template.targets()[t]});
      std::sort(placement.begin(), placement.end());

      out.push_back(scenario_template.with_placement(placement, case_seed));
      break;
    }
  }
  return out;
}

BaselineResult full_info_baseline(const Scenario& scenario) {
  const GridTs& grid = scenario.grid();
  const std::vector<SymbolId>& labeling = scenario.revealed_labeling();

  std::vector<int> planted;  // cell indices holding targets
  for (int i = 0; i < grid.num_cells(); ++i)
    if (scenario.is_target(labeling[i])) planted.push_back(i);

  BaselineResult result;
  result.reward = Rational(0);
  int budget = scenario.energy_budget();
  int cells = grid.num_cells();

  // Search-budget guard: shrink the serviced-set dimension until the value
  // table fits; a truncated search is flagged non-optimal.
  while (static_cast<int>(planted.size()) > kBaselineMaskLimit ||
         static_cast<size_t>(cells) * (budget + 1) * (1ULL << planted.size()) > (32ULL << 20)) {
    planted.pop_back();
    result.optimal = false;
  }
  int nu = static_cast<int>(planted.size());

  std::vector<Rational> reward_values;
  for (SymbolId t : scenario.targets()) reward_values.push_back(scenario.target_reward(t));
  Rational scale = Rational::denominator_lcm(reward_values);
  size_t masks = 1ULL << nu;
  std::vector<long long> value(static_cast<size_t>(cells) * (budget + 1) * masks, -1);
  constexpr long long kUnset = -1;
  constexpr long long kInfeasible = -2;

  std::vector<long long> scaled_reward(nu);
  std::vector<int> service_cost(nu);
  for (int b = 0; b < nu; ++b) {
    scaled_reward[b] = (scenario.target_reward(labeling[planted[b]]) * scale).to_int64();
    service_cost[b] = scenario.servicing_energy(labeling[planted[b]]);
  }
  std::vector<int> bit_of_cell(cells, -1);
  for (int b = 0; b < nu; ++b) bit_of_cell[planted[b]] = b;

  auto key = [&](int cell, int e, size_t mask) {
    return (static_cast<size_t>(cell) * (budget + 1) + e) * masks + mask;
  };

  // Exhaustive best-reward-to-goal over (cell, energy left, serviced mask).
  // Every option strictly decreases energy, so plain recursion terminates.
  std::function<long long(int, int, size_t)> best = [&](int cell, int e, size_t mask) -> long long {
    long long& memo = value[key(cell, e, mask)];
    if (memo != kUnset) return memo;
    long long v = cell == grid.index_of(grid.goal()) ? 0 : kInfeasible;
    int bit = bit_of_cell[cell];
    if (bit >= 0 && !(mask & (1ULL << bit)) && service_cost[bit] <= e) {
      long long rest = best(cell, e - service_cost[bit], mask | (1ULL << bit));
      if (rest != kInfeasible) v = std::max(v, scaled_reward[bit] + rest);
    }
    Cell c = grid.cell_at(cell);
    for (Cell n : grid.neighbors(c)) {
      int w = grid.weight(c, n);
      if (w > e) continue;
      long long rest = best(grid.index_of(n), e - w, mask);
      if (rest != kInfeasible) v = std::max(v, rest);
    }
    memo = v;
    return v;
  };

  long long opt = best(grid.index_of(grid.init()), budget, 0);
  invariant(opt != kInfeasible, "full-information baseline found no path within budget");

  // Reconstruct one optimal walk: service first, then lowest-index neighbor.
  int cell = grid.index_of(grid.init());
  int e = budget;
  size_t mask = 0;
  long long remaining = opt;
  result.path.push_back(grid.cell_at(cell));
  while (!(cell == grid.index_of(grid.goal()) && remaining == 0)) {
    int bit = bit_of_cell[cell];
    if (bit >= 0 && !(mask & (1ULL << bit)) && service_cost[bit] <= e) {
      long long rest = best(cell, e - service_cost[bit], mask | (1ULL << bit));
      if (rest != kInfeasible && scaled_reward[bit] + rest == remaining) {
        result.serviced.push_back(grid.cell_at(cell));
        e -= service_cost[bit];
        mask |= 1ULL << bit;
        remaining -= scaled_reward[bit];
        continue;
      }
    }
    bool moved = false;
    Cell c = grid.cell_at(cell);
    for (Cell n : grid.neighbors(c)) {
      int w = grid.weight(c, n);
      if (w > e) continue;
      long long rest = best(grid.index_of(n), e - w, mask);
      if (rest == remaining) {
        cell = grid.index_of(n);
        e -= w;
        result.path.push_back(n);
        moved = true;
        break;
      }
    }
    invariant(moved, "baseline path reconstruction got stuck");
  }

  result.reward = Rational(opt) / scale;
  return result;
}

double RegretReport::mean_targets_present() const {
  double sum = 0;
  for (const auto& i : instances) sum += i.targets_present;
  return instances.empty() ? 0 : sum / instances.size();
}
double RegretReport::mean_fi_serviced() const {
  double sum = 0;
  for (const auto& i : instances) sum += i.fi_serviced;
  return instances.empty() ? 0 : sum / instances.size();
}
double RegretReport::mean_nii_serviced() const {
  double sum = 0;
  for (const auto& i : instances) sum += i.nii_serviced;
  return instances.empty() ? 0 : sum / instances.size();
}
double RegretReport::mean_regret() const {
  double sum = 0;
  for (const auto& i : instances) sum += i.regret.to_double();
  return instances.empty() ? 0 : sum / instances.size();
}

std::string RegretReport::summary_csv() const {
  std::ostringstream out;
  out << "case,grid_size,E,targets_present,targets_serviced_fi,targets_serviced_nii,mean_regret\n";
  out << case_id << "," << grid_width << "x" << grid_height << "," << energy_budget << ","
      << fixed3(mean_targets_present()) << "," << fixed3(mean_fi_serviced()) << ","
      << fixed3(mean_nii_serviced()) << "," << fixed3(mean_regret()) << "\n";
  return out.str();
}

std::string RegretReport::details_csv() const {
  std::ostringstream out;
  out << "instance,seed,targets_present,fi_reward,fi_serviced,fi_optimal,nii_reward,"
         "nii_serviced,regret\n";
  for (const auto& i : instances) {
    out << i.index << "," << i.scenario_seed << "," << i.targets_present << ","
        << i.fi_reward.to_string() << "," << i.fi_serviced << "," << (i.fi_optimal ? 1 : 0) << ","
        << i.nii_reward.to_string() << "," << i.nii_serviced << "," << i.regret.to_string()
        << "\n";
  }
  return out.str();
}

RegretReport evaluate_regret(const Scenario& scenario_template, int cases, uint64_t seed,
                             int case_id) {
  std::vector<Scenario> scenarios = generate_scenarios(scenario_template, cases, seed);

  RegretReport report;
  report.case_id = case_id;
  report.grid_width = scenario_template.grid().width();
  report.grid_height = scenario_template.grid().height();
  report.energy_budget = scenario_template.energy_budget();
  report.instances.resize(cases);

  std::vector<std::string> failures(cases);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < cases; ++i) {
    try {
      const Scenario& instance = scenarios[i];
      RegretInstance& row = report.instances[i];
      row.index = i;
      row.scenario_seed = instance.seed();
      for (SymbolId sym : instance.revealed_labeling())
        if (instance.is_target(sym)) ++row.targets_present;

      BaselineResult fi = full_info_baseline(instance);
      row.fi_reward = fi.reward;
      row.fi_serviced = static_cast<int>(fi.serviced.size());
      row.fi_optimal = fi.optimal;

      Trace trace = run_eisp(instance, instance.seed());
      row.nii_reward = trace.serviced_reward;
      for (const TraceEvent& e : trace.events)
        if (std::holds_alternative<ServiceEvent>(e)) ++row.nii_serviced;

      row.regret = row.fi_reward - row.nii_reward;
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  }
  for (int i = 0; i < cases; ++i)
    if (!failures[i].empty())
      throw InvariantError("regret instance " + std::to_string(i) + " failed: " + failures[i]);
  return report;
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "grid_size,E_epsilon,product_edges,product_nodes,pruned_edges,continuous,binary,"
         "bb_nodes,objective,build_s,solve_s\n";
  for (const BenchRow& r : rows) {
    out << r.grid_size << "x" << r.grid_size << "," << r.exploration_energy << ","
        << r.product_edges << "," << r.product_nodes << "," << r.pruned_edges << ","
        << r.continuous_vars << "," << r.binary_vars << "," << r.bb_nodes << ","
        << g17(r.objective) << "," << fixed3(r.build_s) << "," << fixed3(r.solve_s) << "\n";
  }
  return out.str();
}

BenchReport run_bench(const std::vector<BenchCase>& cases, int threads) {
  BenchReport report;
  for (const BenchCase& bc : cases) {
    require(bc.grid_size >= 2, "bench grid must be at least 2x2");
    int n = bc.grid_size;
    GridTs grid(n, n, Cell{0, 0}, Cell{n - 1, n - 2});
    require(bc.exploration_energy >= grid.shortest_path_energy(grid.init(), grid.goal()),
            "bench exploration energy cannot reach the goal");

    auto t0 = std::chrono::steady_clock::now();
    ProductGraph raw = construct_product_dag(grid, bc.exploration_energy);
    ProductGraph pruned = prune(raw, ProductNode{grid.init(), bc.exploration_energy});

    // First-iteration pricing: nothing observed yet, so every cell carries
    // the uniform unobserved prior (target mass at case-study scale).
    RewardField field;
    field.value.assign(grid.num_cells(), Rational(7LL * (bc.exploration_energy / 2),
                                                  static_cast<long long>(n) * n));
    field.tag.assign(grid.num_cells(), RewardCase::kUnobserved);

    MilpModel model = build_model(pruned, grid.init(), field, Rational(1, 2), 2);
    auto t1 = std::chrono::steady_clock::now();

    SolveConfig config;
    config.threads = threads;
    MilpSolution solution = solve(model, config);
    auto t2 = std::chrono::steady_clock::now();

    BenchRow row;
    row.grid_size = n;
    row.exploration_energy = bc.exploration_energy;
    row.product_edges = raw.num_edges();
    row.product_nodes = raw.num_nodes();
    row.pruned_edges = pruned.num_edges();
    row.continuous_vars = model.counts().continuous();
    row.binary_vars = model.counts().binaries();
    row.bb_nodes = solution.stats.nodes_explored;
    row.objective = solution.objective;
    row.build_s = std::chrono::duration<double>(t1 - t0).count();
    row.solve_s = std::chrono::duration<double>(t2 - t1).count();
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace eisp
