#include "eisp/product.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "eisp/errors.hpp"

namespace eisp {

namespace {

struct NodeOrder {
  bool operator()(const ProductNode& a, const ProductNode& b) const {
    if (a.energy != b.energy) return a.energy > b.energy;  // topological: energy descending
    return a.cell < b.cell;
  }
};

}  // namespace

bool ProductGraph::is_final(int u) const {
  return std::binary_search(finals_.begin(), finals_.end(), u);
}

int ProductGraph::find(Cell cell, int energy) const {
  ProductNode key{cell, energy};
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), key, NodeOrder{});
  if (it == nodes_.end() || !(*it == key)) return -1;
  return static_cast<int>(it - nodes_.begin());
}

// Shared tail of construct/prune: sort nodes topologically, build adjacency.
ProductGraph finish_graph(const GridTs* grid, std::vector<ProductNode> nodes,
                          std::vector<std::pair<int, int>> edges, ProductNode initial) {
  // `edges` holds indices into the incoming `nodes` order; remap after sorting.
  std::vector<int> order(nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return NodeOrder{}(nodes[a], nodes[b]); });
  std::vector<int> rank(nodes.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  ProductGraph g;
  g.grid_ = grid;
  g.nodes_.resize(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) g.nodes_[rank[i]] = nodes[i];
  g.out_.assign(nodes.size(), {});
  g.in_.assign(nodes.size(), {});
  for (auto [a, b] : edges) {
    g.out_[rank[a]].push_back(rank[b]);
    g.in_[rank[b]].push_back(rank[a]);
  }
  for (auto& v : g.out_) std::sort(v.begin(), v.end());
  for (auto& v : g.in_) std::sort(v.begin(), v.end());
  g.num_edges_ = static_cast<int>(edges.size());
  for (int u = 0; u < g.num_nodes(); ++u)
    if (g.nodes_[u].cell == grid->goal()) g.finals_.push_back(u);
  g.initial_ = g.find(initial.cell, initial.energy);
  invariant(g.initial_ >= 0, "product graph lost its initial node");
  return g;
}

ProductGraph construct_product_dag(const GridTs& grid, int exploration_energy) {
  int goal_energy = grid.shortest_path_energy(grid.init(), grid.goal());
  require(exploration_energy >= goal_energy,
          "exploration energy " + std::to_string(exploration_energy) +
              " cannot reach the goal (needs " + std::to_string(goal_energy) + ")");

  std::map<std::pair<int, int>, int> ids;  // (cell index, energy) -> dense id
  std::vector<ProductNode> nodes;
  std::vector<std::pair<int, int>> edges;

  auto intern = [&](Cell c, int e) {
    auto [it, inserted] = ids.try_emplace({grid.index_of(c), e}, static_cast<int>(nodes.size()));
    if (inserted) nodes.push_back(ProductNode{c, e});
    return std::pair{it->second, inserted};
  };

  std::vector<int> stack;
  stack.push_back(intern(grid.init(), exploration_energy).first);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ProductNode n = nodes[u];
    for (Cell next : grid.neighbors(n.cell)) {
      int e = n.energy - grid.weight(n.cell, next);
      if (e < 0) continue;
      auto [v, inserted] = intern(next, e);
      if (inserted) stack.push_back(v);
      edges.emplace_back(u, v);
    }
  }

  ProductGraph g = finish_graph(&grid, std::move(nodes), std::move(edges),
                                ProductNode{grid.init(), exploration_energy});
  invariant(!g.finals().empty(), "product graph has no final node despite a feasible budget");
  return g;
}

ProductGraph prune(const ProductGraph& g, const ProductNode& current) {
  int start = g.find(current.cell, current.energy);
  invariant(start >= 0, "prune at a node outside the product graph");

  int n = g.num_nodes();
  std::vector<char> reach(n, 0), coreach(n, 0);
  // Forward pass in topological order.
  reach[start] = 1;
  for (int u = start; u < n; ++u) {
    if (!reach[u]) continue;
    for (int v : g.successors(u)) reach[v] = 1;
  }
  // Backward pass from the final set.
  for (int f : g.finals()) coreach[f] = 1;
  for (int u = n - 1; u >= 0; --u) {
    if (coreach[u]) continue;
    for (int v : g.successors(u))
      if (coreach[v]) {
        coreach[u] = 1;
        break;
      }
  }

  std::vector<int> keep_id(n, -1);
  std::vector<ProductNode> nodes;
  for (int u = 0; u < n; ++u) {
    if (reach[u] && coreach[u]) {
      keep_id[u] = static_cast<int>(nodes.size());
      nodes.push_back(g.node(u));
    }
  }
  invariant(!nodes.empty() && keep_id[start] >= 0,
            "prune produced an empty graph; recursive feasibility violated");

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    if (keep_id[u] < 0) continue;
    for (int v : g.successors(u))
      if (keep_id[v] >= 0) edges.emplace_back(keep_id[u], keep_id[v]);
  }
  ProductGraph pruned = finish_graph(g.grid_, std::move(nodes), std::move(edges), current);
  invariant(!pruned.finals().empty(), "pruned graph lost all final nodes");
  return pruned;
}

std::string ProductGraph::to_dot(const GridTs& grid) const {
  std::ostringstream out;
  out << "digraph product {\n";
  out << "  rankdir=LR;\n";
  for (int u = 0; u < num_nodes(); ++u) {
    const ProductNode& n = nodes_[u];
    out << "  n" << u << " [label=\"(" << n.cell.row << "," << n.cell.col << ") e=" << n.energy
        << "\"";
    if (u == initial_) out << " shape=box";
    if (is_final(u)) out << " peripheries=2";
    out << "];\n";
  }
  out << "  t [label=\"sink\" shape=diamond];\n";
  for (int u = 0; u < num_nodes(); ++u)
    for (int v : out_[u])
      out << "  n" << u << " -> n" << v << " [label=" << grid.weight(nodes_[u].cell, nodes_[v].cell)
          << "];\n";
  for (int f : finals_) out << "  n" << f << " -> t;\n";
  out << "}\n";
  return out.str();
}

}  // namespace eisp
