#include "eisp/reward.hpp"

#include "eisp/errors.hpp"

namespace eisp {

RewardField compute_reward_field(const KnowledgeMap& knowledge, const std::set<int>& visited,
                                 int remaining_target_bound, const Scenario& scenario) {
  const GridTs& grid = scenario.grid();
  const Refinement& refinement = scenario.refinement();
  invariant(remaining_target_bound >= 0, "negative remaining target bound");

  RewardField field;
  field.value.assign(grid.num_cells(), Rational(0));
  field.tag.assign(grid.num_cells(), RewardCase::kUnobserved);

  int unobserved = grid.num_cells() - knowledge.num_observed();
  Rational uniform(0);
  if (unobserved > 0) {
    uniform = Rational(remaining_target_bound) * scenario.total_target_reward() /
              Rational(static_cast<long long>(unobserved) *
                       static_cast<long long>(scenario.targets().size()));
  }

  for (int i = 0; i < grid.num_cells(); ++i) {
    Cell c = grid.cell_at(i);
    SymbolId m = knowledge.at(c);
    if (visited.count(i) > 0) {
      field.value[i] = Rational(-1);
      field.tag[i] = RewardCase::kVisited;
    } else if (m == refinement.root()) {
      field.value[i] = uniform;
      field.tag[i] = RewardCase::kUnobserved;
    } else if (!targets_below(refinement, m, scenario.targets()).empty()) {
      field.value[i] = expected_target_reward(refinement, m, scenario.targets(),
                                              scenario.target_rewards());
      field.tag[i] = RewardCase::kExpected;
    } else {
      field.value[i] = scenario.exploration_reward();
      field.tag[i] = RewardCase::kExplored;
    }
  }
  return field;
}

Rational observation_reward(const RewardField& field, const GridTs& grid, Cell observer,
                            Cell observed, const Rational& lambda, int range) {
  int d = manhattan(observer, observed);
  if (d > range) return Rational(0);
  return lambda.pow(d) * field.at(grid, observed);
}

Rational path_collected_reward(const RewardField& field, const GridTs& grid,
                               const std::vector<Cell>& path, const Rational& lambda, int range) {
  std::vector<bool> seen(grid.num_cells(), false);
  std::vector<Rational> best(grid.num_cells(), Rational(0));
  for (size_t k = 0; k + 1 < path.size(); ++k)
    invariant(manhattan(path[k], path[k + 1]) == 1, "path with non-adjacent consecutive cells");
  for (Cell x : path) {
    for (int dr = -range; dr <= range; ++dr) {
      int rem = range - (dr < 0 ? -dr : dr);
      for (int dc = -rem; dc <= rem; ++dc) {
        Cell c{x.row + dr, x.col + dc};
        if (!grid.contains(c)) continue;
        Rational r = observation_reward(field, grid, x, c, lambda, range);
        int i = grid.index_of(c);
        if (!seen[i] || r > best[i]) {
          seen[i] = true;
          best[i] = r;
        }
      }
    }
  }
  Rational total(0);
  for (int i = 0; i < grid.num_cells(); ++i)
    if (seen[i]) total += best[i];
  return total;
}

}  // namespace eisp
