#ifndef EISP_PRODUCT_HPP
#define EISP_PRODUCT_HPP

#include <string>
#include <vector>

#include "eisp/world.hpp"

namespace eisp {

struct ProductNode {
  Cell cell;
  int energy = 0;  // exploration energy remaining on arrival

  bool operator==(const ProductNode& o) const { return cell == o.cell && energy == o.energy; }
};

// Product of the grid with the exploration-energy countdown. Nodes are
// (cell, remaining energy); every edge spends w(x,x') > 0, so the graph is a
// DAG and the node numbering (energy descending, then row, col) is a
// topological order. Final nodes project onto the goal cell; a virtual sink
// (index num_nodes()) collects them for the flow formulation.
class ProductGraph {
 public:
  const GridTs& grid() const { return *grid_; }

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return num_edges_; }
  int sink() const { return num_nodes(); }

  const ProductNode& node(int u) const { return nodes_[u]; }
  int initial() const { return initial_; }
  const std::vector<int>& finals() const { return finals_; }
  bool is_final(int u) const;

  const std::vector<int>& successors(int u) const { return out_[u]; }
  const std::vector<int>& predecessors(int u) const { return in_[u]; }

  // Index of (cell, energy), or -1.
  int find(Cell cell, int energy) const;

  std::string to_dot(const GridTs& grid) const;

 private:
  friend ProductGraph construct_product_dag(const GridTs&, int);
  friend ProductGraph prune(const ProductGraph&, const ProductNode&);
  friend ProductGraph finish_graph(const GridTs* grid, std::vector<ProductNode> nodes,
                                   std::vector<std::pair<int, int>> edges, ProductNode initial);

  const GridTs* grid_ = nullptr;
  std::vector<ProductNode> nodes_;  // topological order
  std::vector<std::vector<int>> out_, in_;
  std::vector<int> finals_;  // sorted node indices
  int initial_ = -1;
  int num_edges_ = 0;
};

// Stack expansion from (init, exploration_energy): an edge exists for every
// grid transition whose cost still fits. No co-reachability pruning here;
// the planner prunes per step.
ProductGraph construct_product_dag(const GridTs& grid, int exploration_energy);

// Subgraph of nodes reachable from `current` and co-reachable to a final
// node; `current` becomes the initial node.
ProductGraph prune(const ProductGraph& g, const ProductNode& current);

}  // namespace eisp

#endif  // EISP_PRODUCT_HPP
