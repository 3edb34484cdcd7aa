#include "eisp/budget.hpp"

#include "eisp/errors.hpp"

namespace eisp {

EnergyAllocation allocate_energy(const Scenario& scenario,
                                 const std::function<int(SymbolId)>& draw) {
  const GridTs& grid = scenario.grid();
  int goal_energy = grid.shortest_path_energy(grid.init(), grid.goal());
  int total = scenario.energy_budget();
  if (total <= goal_energy)
    throw ValidationError("budget " + std::to_string(total) +
                          " leaves no slack over the minimum goal energy " +
                          std::to_string(goal_energy));

  EnergyAllocation alloc;
  alloc.total = total;
  // The all-zero draw always satisfies the guard, so the loop terminates.
  int servicing = total;
  while (servicing >= total - goal_energy) {
    servicing = 0;
    alloc.frequencies.clear();
    for (SymbolId t : scenario.targets()) {
      int f = draw(t);
      invariant(f >= 0, "negative target frequency draw");
      alloc.frequencies[t] = f;
      servicing += f * scenario.servicing_energy(t);
    }
  }
  alloc.servicing = servicing;
  alloc.exploration = total - servicing;
  alloc.target_bound = servicing / scenario.min_target_energy();
  return alloc;
}

EnergyAllocation sample_energy_budget(const Scenario& scenario, Rng& rng) {
  double p = scenario.distribution_p().to_double();
  return allocate_energy(scenario, [&](SymbolId) { return rng.next_geometric(p); });
}

int global_target_bound(int energy_budget, const Scenario& scenario) {
  invariant(energy_budget >= 0, "negative energy budget");
  return energy_budget / scenario.min_target_energy();
}

}  // namespace eisp
