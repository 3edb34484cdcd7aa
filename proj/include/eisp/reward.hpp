#ifndef EISP_REWARD_HPP
#define EISP_REWARD_HPP

#include <set>
#include <vector>

#include "eisp/tracking.hpp"
#include "eisp/world.hpp"

namespace eisp {

enum class RewardCase { kExpected, kVisited, kExplored, kUnobserved };

// One planning step's per-cell reward values, exact. The solver materializes
// doubles from these once per step.
struct RewardField {
  std::vector<Rational> value;   // by cell index
  std::vector<RewardCase> tag;

  const Rational& at(const GridTs& grid, Cell c) const { return value[grid.index_of(c)]; }
};

// Case order (first match wins): visited -> -1; observed with targets below
// -> expected target reward; observed empty of targets -> exploration bonus;
// unobserved -> remaining-capacity mass spread uniformly over unobserved
// cells.
RewardField compute_reward_field(const KnowledgeMap& knowledge, const std::set<int>& visited,
                                 int remaining_target_bound, const Scenario& scenario);

// lambda^d * field(observed) within range, 0 beyond. Note the discount decays
// with distance: closer observation never collects less of a positive reward.
Rational observation_reward(const RewardField& field, const GridTs& grid, Cell observer,
                            Cell observed, const Rational& lambda, int range);

// Total reward a path collects: every cell contributes the max over the path
// cells that see it (unseen cells contribute nothing).
Rational path_collected_reward(const RewardField& field, const GridTs& grid,
                               const std::vector<Cell>& path, const Rational& lambda, int range);

}  // namespace eisp

#endif  // EISP_REWARD_HPP
