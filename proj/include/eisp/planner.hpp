#ifndef EISP_PLANNER_HPP
#define EISP_PLANNER_HPP

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "eisp/budget.hpp"
#include "eisp/milp.hpp"
#include "eisp/product.hpp"
#include "eisp/reward.hpp"
#include "eisp/tracking.hpp"

namespace eisp {

struct MoveEvent {
  Cell cell;
  int motion_energy_after = 0;
};

struct KnowledgeEvent {
  Cell robot;
  std::vector<TrackingUpdate> updates;
};

struct ServiceEvent {
  Cell cell;
  SymbolId symbol = kNoSymbol;
  Rational reward;
  int servicing_energy_after = 0;
};

struct NoServiceEvent {
  Cell cell;
  SymbolId symbol = kNoSymbol;
};

struct PlanEvent {
  std::vector<Cell> path;  // projection, current cell first, goal last
  double objective = 0.0;
  long long bb_nodes = 0;
  long long bound_evaluations = 0;
  int product_nodes = 0;  // pruned model sizes
  int product_edges = 0;
};

using TraceEvent = std::variant<MoveEvent, KnowledgeEvent, ServiceEvent, NoServiceEvent, PlanEvent>;

// Time-stamped record of one run. Wall-clock solver times are deliberately
// not recorded here so that traces are byte-reproducible.
struct Trace {
  uint64_t scenario_hash = 0;
  uint64_t seed = 0;
  EnergyAllocation allocation;
  std::vector<TraceEvent> events;

  Rational serviced_reward;
  int final_servicing_energy = 0;
  int final_motion_energy = 0;
  int steps = 0;

  std::string to_jsonl(const Scenario& scenario) const;
};

struct RunOptions {
  std::string dump_rewards_dir;  // when set, one CSV grid per step
  bool verify = false;           // per-step oracle cross-check (small instances)
  uint64_t verify_max_paths = 2000000;
  SolveConfig solver;
};

// Per-step solver record (model sizes, search effort, wall time). Kept
// outside the Trace because wall times are not reproducible.
struct StepStats {
  int step = 0;
  int product_nodes = 0;
  int product_edges = 0;
  int binary_vars = 0;
  int continuous_vars = 0;
  long long bb_nodes = 0;
  double wall_ms = 0.0;
};

std::string step_stats_csv(const std::vector<StepStats>& stats);

// One receding-horizon run: observe, track, service, reprice, replan, take
// the first edge; repeats until the goal cell.
class EispRun {
 public:
  EispRun(const Scenario& scenario, uint64_t seed, RunOptions options = {});

  bool done() const { return done_; }
  void step();  // throws InvariantError once done
  void run() {
    while (!done_) step();
  }

  const Trace& trace() const { return trace_; }
  const std::vector<StepStats>& step_stats() const { return step_stats_; }
  Cell position() const { return position_; }
  int motion_energy() const { return motion_energy_; }
  int servicing_energy() const { return servicing_energy_; }
  int remaining_target_bound() const;
  const KnowledgeMap& knowledge() const { return knowledge_; }
  const std::optional<RewardField>& last_field() const { return last_field_; }

 private:
  const Scenario& scenario_;
  RunOptions options_;
  ProductGraph product_;
  KnowledgeMap knowledge_;
  Trace trace_;

  Cell position_;
  int motion_energy_ = 0;
  int servicing_energy_ = 0;
  std::set<int> visited_;
  std::set<int> serviced_cells_;
  int serviced_count_ = 0;
  int step_index_ = 0;
  bool done_ = false;
  std::optional<RewardField> last_field_;
  std::vector<StepStats> step_stats_;
};

Trace run_eisp(const Scenario& scenario, uint64_t seed, const RunOptions& options = {});

// The offline allocation a run with this seed starts from (the allocation
// sampler draws from its own derived stream).
EnergyAllocation allocation_for_run(const Scenario& scenario, uint64_t seed);

// Everything the first planning step sees, before solving: the offline
// allocation, the graph pruned at the start node, and the priced field after
// the initial observation batch (and servicing, if the start cell holds an
// affordable target). Feeds export-lp and model inspection.
struct FirstStep {
  EnergyAllocation allocation;
  ProductGraph pruned;
  RewardField field;
};

FirstStep prepare_first_step(const Scenario& scenario, uint64_t seed);

}  // namespace eisp

#endif  // EISP_PLANNER_HPP
