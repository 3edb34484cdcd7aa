#ifndef EISP_WORLD_HPP
#define EISP_WORLD_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eisp/rational.hpp"

#include "json.hpp"

namespace eisp {

struct Cell {
  int row = 0;
  int col = 0;

  bool operator==(const Cell& o) const { return row == o.row && col == o.col; }
  bool operator!=(const Cell& o) const { return !(*this == o); }
  bool operator<(const Cell& o) const { return row != o.row ? row < o.row : col < o.col; }
};

inline int manhattan(Cell a, Cell b) {
  return (a.row > b.row ? a.row - b.row : b.row - a.row) +
         (a.col > b.col ? a.col - b.col : b.col - a.col);
}

using SymbolId = int;
inline constexpr SymbolId kNoSymbol = -1;

// Layered symbol refinement. Layer 0 holds the ground-truth symbols; layer d
// holds what can be observed from Manhattan distance d; the root stands for
// "no observation yet" and sits one layer above the top. The parent relation
// must form a tree rooted at the root symbol (DAG refinements are rejected at
// load so that observation stays deterministic).
class Refinement {
 public:
  Refinement() = default;

  // layers[d] lists the symbol names of layer d (d = 0 is ground truth).
  // parents maps each symbol to its parent name ("ROOT" for the top layer).
  // priors maps each non-leaf symbol (and "ROOT") to its child distribution.
  Refinement(std::vector<std::vector<std::string>> layers,
             const std::map<std::string, std::string>& parents,
             const std::map<std::string, std::map<std::string, std::string>>& priors,
             const std::string& empty_symbol);

  int depth() const { return depth_; }  // = D; the root sits at layer D+1
  int num_symbols() const { return static_cast<int>(names_.size()); }

  SymbolId root() const { return root_; }
  SymbolId empty_symbol() const { return empty_; }
  SymbolId id_of(const std::string& name) const;
  const std::string& name_of(SymbolId s) const;

  // Root reports depth()+1 so that layer order matches knowledge coarseness.
  int layer(SymbolId s) const;
  SymbolId parent(SymbolId s) const { return parent_[s]; }
  const std::vector<SymbolId>& children(SymbolId s) const { return children_[s]; }
  const std::vector<SymbolId>& layer_symbols(int d) const { return layers_[d]; }

  // Prior probability that symbol `from` refines into its child `to`.
  const Rational& edge_prior(SymbolId to) const { return parent_prior_[to]; }

  // Unique layer-d ancestor of a ground-truth symbol (d <= depth()).
  SymbolId ancestor_at_layer(SymbolId ground, int d) const;

  // a is a descendant of b (or equal) in the refinement tree.
  bool is_descendant(SymbolId a, SymbolId b) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> layer_;                  // per symbol; root_ has depth()+1
  std::vector<SymbolId> parent_;            // root_ -> kNoSymbol
  std::vector<Rational> parent_prior_;      // p_parent(s)(s)
  std::vector<std::vector<SymbolId>> children_;
  std::vector<std::vector<SymbolId>> layers_;
  std::map<std::string, SymbolId> by_name_;
  SymbolId root_ = kNoSymbol;
  SymbolId empty_ = kNoSymbol;
  int depth_ = 0;
};

// Grid transition system: 4-connected rectangular grid with positive integer
// transition energies (symmetric) and distinguished init/goal cells.
class GridTs {
 public:
  GridTs() = default;
  GridTs(int width, int height, Cell init, Cell goal);

  int width() const { return width_; }
  int height() const { return height_; }
  int num_cells() const { return width_ * height_; }
  Cell init() const { return init_; }
  Cell goal() const { return goal_; }

  bool contains(Cell c) const {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }
  int index_of(Cell c) const { return c.row * width_ + c.col; }
  Cell cell_at(int index) const { return Cell{index / width_, index % width_}; }

  // In-grid 4-neighbors, ordered N, W, E, S (row-major scan order).
  std::vector<Cell> neighbors(Cell c) const;

  int weight(Cell a, Cell b) const;              // adjacent cells only
  void set_weight(Cell a, Cell b, int w);        // symmetric

  bool unit_weights() const { return weights_.empty(); }
  const std::map<std::pair<int, int>, int>& explicit_weights() const { return weights_; }

  // Minimum transition energy from `from` to `to` (Dijkstra; equals the
  // Manhattan distance under unit weights).
  int shortest_path_energy(Cell from, Cell to) const;

 private:
  int width_ = 0;
  int height_ = 0;
  Cell init_;
  Cell goal_;
  std::map<std::pair<int, int>, int> weights_;  // key: (min index, max index); absent = 1
};

// Cells grouped by exact Manhattan distance d = 0..D from x.
std::vector<std::vector<Cell>> sensing_neighborhood(const GridTs& grid, Cell x, int range);

enum class PlacementMode { kExplicit, kRandom };

// Immutable world description. The hidden labeling is private: planner-side
// code only reaches it through observe(), which degrades resolution with
// distance. Full-information evaluation uses revealed_labeling().
class Scenario {
 public:
  static Scenario from_document(const nlohmann::json& doc);

  const GridTs& grid() const { return grid_; }
  const Refinement& refinement() const { return refinement_; }
  int sensing_range() const { return sensing_range_; }
  int energy_budget() const { return energy_budget_; }
  uint64_t seed() const { return seed_; }
  PlacementMode placement_mode() const { return placement_mode_; }

  const std::vector<SymbolId>& targets() const { return targets_; }
  bool is_target(SymbolId s) const;
  const std::map<SymbolId, Rational>& target_rewards() const { return rewards_; }
  const Rational& target_reward(SymbolId s) const;
  int servicing_energy(SymbolId s) const;  // 0 for non-targets
  int min_target_energy() const;
  Rational total_target_reward() const;

  const Rational& lambda() const { return lambda_; }
  const Rational& exploration_reward() const { return exploration_reward_; }
  const Rational& distribution_p() const { return distribution_p_; }

  // Layer-d ancestor of the hidden symbol of target_cell, d = ||robot-cell||_1.
  // Throws InvariantError when the cell is outside the sensing range.
  SymbolId observe(Cell robot, Cell target_cell) const;

  // Full hidden labeling, indexed by cell index. Only for the
  // full-information baseline and the scenario generator.
  const std::vector<SymbolId>& revealed_labeling() const { return hidden_; }

  // Canonical (key-sorted) document; loading it reproduces this scenario.
  nlohmann::json to_document() const;
  std::string canonical_text() const;
  uint64_t content_hash() const;  // FNV-1a of canonical_text()

  // Copy of this scenario with an explicit placement and fresh seed
  // (used by the random-scenario generator).
  Scenario with_placement(const std::vector<std::pair<Cell, SymbolId>>& placement,
                          uint64_t seed) const;

 private:
  Scenario() = default;

  GridTs grid_;
  Refinement refinement_;
  int sensing_range_ = 0;
  int energy_budget_ = 0;
  uint64_t seed_ = 0;
  PlacementMode placement_mode_ = PlacementMode::kExplicit;

  std::vector<SymbolId> targets_;            // sorted
  std::map<SymbolId, Rational> rewards_;
  std::map<SymbolId, int> energies_;         // layer-0 symbols; 0 when absent
  Rational lambda_;
  Rational exploration_reward_;
  Rational distribution_p_;

  std::vector<SymbolId> hidden_;             // per cell index; empty symbol default
};

Scenario load_scenario(const nlohmann::json& doc);
Scenario load_scenario_file(const std::string& path);

}  // namespace eisp

#endif  // EISP_WORLD_HPP
