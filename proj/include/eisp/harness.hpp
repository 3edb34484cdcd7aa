#ifndef EISP_HARNESS_HPP
#define EISP_HARNESS_HPP

#include <string>
#include <vector>

#include "eisp/planner.hpp"
#include "eisp/world.hpp"

namespace eisp {

// Per-case random scenario instantiation: target counts drawn from the
// configured geometric distribution, locations by shuffling the non-terminal
// cells. Every instance gets its own derived seed; the same instance is used
// for full-information and no-initial-information evaluation.
std::vector<Scenario> generate_scenarios(const Scenario& scenario_template, int cases,
                                         uint64_t seed);

struct BaselineResult {
  Rational reward;
  std::vector<Cell> path;
  std::vector<Cell> serviced;  // planted target cells collected
  bool optimal = true;
};

// Exact full-information optimum: maximizes collected target reward over
// walks ending at the goal, spending motion plus servicing energy from the
// undivided budget. Exhaustive search over (cell, energy, serviced mask);
// more than 16 planted targets trips the search budget and the result is
// flagged non-optimal (the mask is truncated to the first 16 planted cells).
BaselineResult full_info_baseline(const Scenario& scenario);

struct RegretInstance {
  int index = 0;
  uint64_t scenario_seed = 0;
  int targets_present = 0;
  Rational fi_reward;
  int fi_serviced = 0;
  bool fi_optimal = true;
  Rational nii_reward;  // serviced-target rewards only
  int nii_serviced = 0;
  Rational regret;
};

struct RegretReport {
  int case_id = 1;
  int grid_width = 0;
  int grid_height = 0;
  int energy_budget = 0;
  std::vector<RegretInstance> instances;

  double mean_targets_present() const;
  double mean_fi_serviced() const;
  double mean_nii_serviced() const;
  double mean_regret() const;

  std::string summary_csv() const;  // Table-I-shaped single row
  std::string details_csv() const;  // one row per instance
};

// Generates `cases` instances from the template, runs the full-information
// baseline and the online planner on each, and reports per-instance regret
// (FI reward minus NII serviced reward). Instances run in parallel; the
// report is assembled in case order.
RegretReport evaluate_regret(const Scenario& scenario_template, int cases, uint64_t seed,
                             int case_id = 1);

struct BenchCase {
  int grid_size = 0;
  int exploration_energy = 0;
};

struct BenchRow {
  int grid_size = 0;
  int exploration_energy = 0;
  int product_edges = 0;   // raw construction, before pruning
  int product_nodes = 0;
  int pruned_edges = 0;
  int continuous_vars = 0;
  int binary_vars = 0;
  long long bb_nodes = 0;
  double objective = 0.0;
  double build_s = 0.0;
  double solve_s = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  // Columns follow the runtime-performance table shape; time columns are
  // excluded from reproducibility comparisons.
  std::string to_csv() const;
};

// First-iteration cost of the step model per grid size: build the product
// from corner (0,0) to (n-1,n-2), price every cell with the uniform
// unobserved prior, build the model and solve it once.
BenchReport run_bench(const std::vector<BenchCase>& cases, int threads = 1);

}  // namespace eisp

#endif  // EISP_HARNESS_HPP
