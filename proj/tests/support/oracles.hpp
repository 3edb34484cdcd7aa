#ifndef EISP_TESTS_SUPPORT_ORACLES_HPP
#define EISP_TESTS_SUPPORT_ORACLES_HPP

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "eisp/rational.hpp"
#include "eisp/world.hpp"

namespace eisp::test {

// Brute-force enumeration of every energy-feasible walk from `start`,
// collecting the reached (cell, remaining energy) pairs. Deliberately has no
// deduplication during the walk so it stays independent of the product
// construction.
inline void enumerate_walks(const GridTs& grid, Cell at, int energy,
                            std::set<std::pair<int, int>>& reached) {
  reached.insert({grid.index_of(at), energy});
  for (Cell next : grid.neighbors(at)) {
    int left = energy - grid.weight(at, next);
    if (left >= 0) enumerate_walks(grid, next, left, reached);
  }
}

inline std::set<std::pair<int, int>> reachable_states(const GridTs& grid, int energy) {
  std::set<std::pair<int, int>> reached;
  enumerate_walks(grid, grid.init(), energy, reached);
  return reached;
}

// Chain-product leaf probabilities computed bottom-up (walking parent links
// from each leaf), independent of the top-down path sum in the library.
inline Rational chain_up_probability(const Refinement& refinement, SymbolId from, SymbolId leaf) {
  Rational product(1);
  SymbolId s = leaf;
  while (s != from) {
    if (s == refinement.root()) return Rational(0);  // `from` is not an ancestor
    product *= refinement.edge_prior(s);
    s = refinement.parent(s);
  }
  return product;
}

inline std::map<SymbolId, Rational> leaf_distribution(const Refinement& refinement, SymbolId from) {
  std::map<SymbolId, Rational> dist;
  for (SymbolId leaf : refinement.layer_symbols(0)) {
    Rational p = chain_up_probability(refinement, from, leaf);
    if (!p.is_zero()) dist[leaf] = p;
  }
  return dist;
}

}  // namespace eisp::test

#endif  // EISP_TESTS_SUPPORT_ORACLES_HPP
