#ifndef EISP_TRACKING_HPP
#define EISP_TRACKING_HPP

#include <map>
#include <vector>

#include "eisp/world.hpp"

namespace eisp {

struct TrackingUpdate {
  Cell cell;
  SymbolId before = kNoSymbol;
  SymbolId after = kNoSymbol;
  int distance = 0;
};

// Per-cell state of the symbolic tracking MDPs: the finest symbol observed so
// far for each cell, starting at the root ("never observed"). All per-cell
// MDPs share the refinement structure, so one symbol per cell is the whole
// state.
class KnowledgeMap {
 public:
  KnowledgeMap(const GridTs& grid, const Refinement& refinement);

  SymbolId at(Cell c) const { return state_[grid_->index_of(c)]; }
  bool observed(Cell c) const { return at(c) != refinement_->root(); }
  int num_observed() const { return num_observed_; }

  // Applies one observation batch. Strictly finer observations replace the
  // current symbol; coarser or equal ones are self-loops. Returns the strict
  // updates in cell order.
  std::vector<TrackingUpdate> update(Cell robot, const std::map<Cell, SymbolId>& observations);

 private:
  const GridTs* grid_;
  const Refinement* refinement_;
  std::vector<SymbolId> state_;
  int num_observed_ = 0;
};

// Targets that can still appear below knowledge state m: {t : t descendant of m}.
std::vector<SymbolId> targets_below(const Refinement& refinement, SymbolId m,
                                    const std::vector<SymbolId>& targets);

// Probability of reaching ground-truth symbol `leaf` from knowledge state m:
// sum over directed refinement paths of the product of edge priors. Written
// as a generic path sum; on a tree this is the single chain product.
Rational prob_of_target(const Refinement& refinement, SymbolId m, SymbolId leaf);

// Expected target reward for a cell in knowledge state m:
// sum of prob_of_target(m, t) * reward(t) over targets below m.
Rational expected_target_reward(const Refinement& refinement, SymbolId m,
                                const std::vector<SymbolId>& targets,
                                const std::map<SymbolId, Rational>& rewards);

}  // namespace eisp

#endif  // EISP_TRACKING_HPP
