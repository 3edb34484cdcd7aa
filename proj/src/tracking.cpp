#include "eisp/tracking.hpp"

#include <algorithm>

#include "eisp/errors.hpp"

namespace eisp {

KnowledgeMap::KnowledgeMap(const GridTs& grid, const Refinement& refinement)
    : grid_(&grid), refinement_(&refinement) {
  state_.assign(grid.num_cells(), refinement.root());
}

std::vector<TrackingUpdate> KnowledgeMap::update(Cell robot,
                                                 const std::map<Cell, SymbolId>& observations) {
  std::vector<TrackingUpdate> updates;
  for (const auto& [cell, obs] : observations) {
    int u = manhattan(robot, cell);
    invariant(refinement_->layer(obs) == u, "observation layer does not match its distance");
    SymbolId& m = state_[grid_->index_of(cell)];
    if (u >= refinement_->layer(m)) continue;  // self-loop: nothing new
    invariant(refinement_->is_descendant(obs, m),
              "observation of " + refinement_->name_of(obs) + " for cell in state " +
                  refinement_->name_of(m) + " is not a refinement");
    if (m == refinement_->root()) ++num_observed_;
    updates.push_back(TrackingUpdate{cell, m, obs, u});
    m = obs;
  }
  return updates;
}

std::vector<SymbolId> targets_below(const Refinement& refinement, SymbolId m,
                                    const std::vector<SymbolId>& targets) {
  std::vector<SymbolId> below;
  for (SymbolId t : targets)
    if (refinement.is_descendant(t, m)) below.push_back(t);
  return below;
}

namespace {

Rational path_sum(const Refinement& refinement, SymbolId from, SymbolId leaf) {
  if (from == leaf) return Rational(1);
  Rational sum(0);
  for (SymbolId c : refinement.children(from)) {
    if (!refinement.is_descendant(leaf, c)) continue;
    sum += refinement.edge_prior(c) * path_sum(refinement, c, leaf);
  }
  return sum;
}

}  // namespace

Rational prob_of_target(const Refinement& refinement, SymbolId m, SymbolId leaf) {
  invariant(refinement.layer(leaf) == 0, "prob_of_target expects a ground-truth symbol");
  if (!refinement.is_descendant(leaf, m)) return Rational(0);
  return path_sum(refinement, m, leaf);
}

Rational expected_target_reward(const Refinement& refinement, SymbolId m,
                                const std::vector<SymbolId>& targets,
                                const std::map<SymbolId, Rational>& rewards) {
  Rational sum(0);
  for (SymbolId t : targets_below(refinement, m, targets)) {
    auto it = rewards.find(t);
    invariant(it != rewards.end(), "target without a reward entry");
    sum += prob_of_target(refinement, m, t) * it->second;
  }
  return sum;
}

}  // namespace eisp
