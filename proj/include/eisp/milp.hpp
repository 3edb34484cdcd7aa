#ifndef EISP_MILP_HPP
#define EISP_MILP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "eisp/product.hpp"
#include "eisp/reward.hpp"

namespace eisp {

struct MilpConstraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  char sense = 'L';                           // 'L' <=, 'G' >=, 'E' ==
  double rhs = 0.0;
};

struct VariableCounts {
  int edge_flow = 0;   // zeta: product edges plus one per final->sink edge
  int node_visit = 0;  // z: product nodes plus the sink
  int cell_visit = 0;  // y: one per grid cell, continuous in [0,1]
  int observer = 0;    // sigma: per cell, its in-range observers plus a null option
  int collected = 0;   // t: one per grid cell, free

  int binaries() const { return edge_flow + node_visit + observer; }
  int continuous() const { return cell_visit + collected; }
  int total() const { return binaries() + continuous(); }
};

// The step MILP over a pruned product graph: flow conservation picks one
// source-to-sink path, z/y link product nodes to grid cells, and the
// max-over-observers objective is linearized with per-cell selection binaries
// sigma (one-hot over in-range observers plus a null option, sigma <= y).
// Cells with a negative reward additionally require a real observer whenever
// any in-range cell is visited, so the visited-cell penalty cannot be opted
// out of. The specialized solver below works directly on the path structure;
// the algebraic model is kept for export, counting and external cross-checks.
class MilpModel {
 public:
  MilpModel(const ProductGraph& graph, Cell current, const RewardField& field,
            const Rational& lambda, int range);

  const ProductGraph& graph() const { return *graph_; }
  const GridTs& grid() const { return *grid_; }
  int range() const { return range_; }
  Cell current() const { return current_; }

  const VariableCounts& counts() const { return counts_; }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<MilpConstraint>& constraints() const { return constraints_; }

  // lambda^d * field(observed) as a double, 0 beyond the sensing range.
  double rho(Cell observer, Cell observed) const;
  double field_value(int cell_index) const { return field_[cell_index]; }
  bool field_negative(int cell_index) const { return negative_[cell_index]; }

  // Deterministic LP-format text (byte-stable for a fixed model).
  std::string export_lp() const;

  const std::string& variable_name(int index) const { return var_names_[index]; }

 private:
  void build_variables();
  void build_constraints();

  const ProductGraph* graph_;
  const GridTs* grid_;
  Cell current_;
  int range_;
  std::vector<double> field_;                  // per cell, from the rational field
  std::vector<bool> negative_;
  std::vector<std::vector<double>> rho_pow_;   // lambda^d * field, per cell per distance

  VariableCounts counts_;
  std::vector<std::string> var_names_;
  std::vector<MilpConstraint> constraints_;

  // Variable index maps.
  std::vector<int> zeta_base_;                 // per node: first zeta index of its out-edges
  std::vector<int> zeta_sink_;                 // per final (by position in finals())
  int z_base_ = 0;
  int y_base_ = 0;
  std::vector<int> sigma_base_;                // per cell: first sigma index (observers then null)
  std::vector<std::vector<int>> observers_;    // per cell: in-range cell indices, sorted
  int t_base_ = 0;
};

MilpModel build_model(const ProductGraph& pruned_graph, Cell current, const RewardField& field,
                      const Rational& lambda, int range);

struct SolveConfig {
  int threads = 1;              // > 1 evaluates independent subtrees in parallel
  long long node_limit = -1;    // < 0: unlimited; exceeding it truncates the search
  double time_limit_ms = 0.0;   // > 0: annotates hit_time_limit, never truncates
  bool validate_bounds = false; // debug: disable pruning, check bound admissibility
};

struct SolverStats {
  long long nodes_explored = 0;
  long long bound_evaluations = 0;
  double wall_ms = 0.0;
  bool optimal = true;          // false only when the node limit truncated
  bool hit_time_limit = false;  // annotation; the result is still exact
};

struct MilpSolution {
  double objective = 0.0;
  std::vector<int> product_path;              // node indices, source .. final
  std::vector<std::pair<int, int>> edges;     // selected edges incl. (final, sink())
  std::vector<Cell> grid_path;                // projection onto the grid
  SolverStats stats;
};

// Exact optimum by depth-first branch and bound over path prefixes in the
// DAG. The bound at a prefix is the collected value so far plus, per cell,
// the best rho still reachable from the frontier (backward DP, computed once
// per model). Children are explored best-bound-first with node-index
// tie-breaks; among equal-objective optima the lexicographically smallest
// product path wins, which makes the result independent of exploration order
// and hence identical for the serial and parallel variants.
MilpSolution solve(const MilpModel& model, const SolveConfig& config = {});

// Enumerates every source-to-sink path and scores its projection with
// path_collected_reward (exact arithmetic). Independent of the solver;
// used by tests and --verify. Throws ValidationError when the path count
// exceeds max_paths.
MilpSolution oracle_solve(const ProductGraph& graph, Cell current, const RewardField& field,
                          const Rational& lambda, int range, uint64_t max_paths = 2000000);

}  // namespace eisp

#endif  // EISP_MILP_HPP
