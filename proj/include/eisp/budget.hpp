#ifndef EISP_BUDGET_HPP
#define EISP_BUDGET_HPP

#include <functional>
#include <map>
#include <vector>

#include "eisp/rng.hpp"
#include "eisp/world.hpp"

namespace eisp {

// Offline split of the budget: E = servicing energy + exploration energy.
struct EnergyAllocation {
  int total = 0;            // E
  int servicing = 0;        // E_kappa
  int exploration = 0;      // E_epsilon
  int target_bound = 0;     // N = floor(E_kappa / min servicing energy)
  std::map<SymbolId, int> frequencies;  // accepted draw, per target
};

// Core of the allocation loop, with the frequency draw injected so tests can
// script exact draws. draw(t) returns the frequency for target t.
EnergyAllocation allocate_energy(const Scenario& scenario,
                                 const std::function<int(SymbolId)>& draw);

// Draws target frequencies from the configured geometric distribution until
// the servicing energy fits under E - E_goal. Deterministic given the rng
// state; throws ValidationError when E <= E_goal.
EnergyAllocation sample_energy_budget(const Scenario& scenario, Rng& rng);

// Loose global bound on serviceable targets: floor(E / min servicing energy).
// The allocation's target_bound (from E_kappa) is the tighter planning value;
// this one is exposed as a diagnostic.
int global_target_bound(int energy_budget, const Scenario& scenario);

}  // namespace eisp

#endif  // EISP_BUDGET_HPP
