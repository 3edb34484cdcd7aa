#include <set>

#include "doctest.h"

#include "eisp/errors.hpp"
#include "eisp/product.hpp"
#include "support/oracles.hpp"

using namespace eisp;

TEST_CASE("2x2 product with two units of energy") {
  GridTs grid(2, 2, Cell{0, 0}, Cell{1, 1});
  ProductGraph g = construct_product_dag(grid, 2);

  // Raw construction keeps every walk-reachable state, including the
  // walk-out-and-back dead end ((0,0),0).
  CHECK(g.num_nodes() == 5);
  CHECK(g.num_edges() == 6);
  CHECK(g.find(Cell{0, 0}, 2) == g.initial());
  CHECK(g.find(Cell{0, 1}, 1) >= 0);
  CHECK(g.find(Cell{1, 0}, 1) >= 0);
  CHECK(g.find(Cell{1, 1}, 0) >= 0);
  CHECK(g.find(Cell{0, 0}, 0) >= 0);
  REQUIRE(g.finals().size() == 1);
  CHECK(g.node(g.finals()[0]) == ProductNode{Cell{1, 1}, 0});

  // Pruning to goal-reaching states leaves the single diamond.
  ProductGraph p = prune(g, ProductNode{Cell{0, 0}, 2});
  CHECK(p.num_nodes() == 4);
  CHECK(p.num_edges() == 4);
  CHECK(p.find(Cell{0, 0}, 0) == -1);
}

TEST_CASE("insufficient exploration energy is rejected") {
  GridTs grid(2, 2, Cell{0, 0}, Cell{1, 1});
  CHECK_THROWS_AS(construct_product_dag(grid, 0), ValidationError);
  CHECK_THROWS_AS(construct_product_dag(grid, 1), ValidationError);
  CHECK_NOTHROW(construct_product_dag(grid, 2));
}

TEST_CASE("node existence follows the parity of the leftover energy") {
  GridTs grid(4, 4, Cell{0, 0}, Cell{3, 3});
  ProductGraph g = construct_product_dag(grid, 11);
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      int dist = row + col;
      for (int e = 0; e <= 11; ++e) {
        bool expected = e <= 11 - dist && (11 - dist - e) % 2 == 0;
        CHECK((g.find(Cell{row, col}, e) >= 0) == expected);
      }
    }
  }
}

TEST_CASE("node sets match exhaustive walk enumeration") {
  for (int width = 2; width <= 4; ++width) {
    for (int energy = 2; energy <= 8; energy += 3) {
      GridTs grid(width, 3, Cell{0, 0}, Cell{2, width - 1});
      if (energy < grid.shortest_path_energy(grid.init(), grid.goal())) continue;
      ProductGraph g = construct_product_dag(grid, energy);

      std::set<std::pair<int, int>> expected = eisp::test::reachable_states(grid, energy);
      CHECK(static_cast<size_t>(g.num_nodes()) == expected.size());
      for (auto [cell, e] : expected) CHECK(g.find(grid.cell_at(cell), e) >= 0);
    }
  }
}

TEST_CASE("edges strictly decrease energy and respect the topological numbering") {
  GridTs grid(4, 4, Cell{0, 0}, Cell{3, 2});
  ProductGraph g = construct_product_dag(grid, 9);
  int edge_count = 0;
  for (int u = 0; u < g.num_nodes(); ++u) {
    for (int v : g.successors(u)) {
      ++edge_count;
      CHECK(u < v);  // topological order
      CHECK(g.node(v).energy == g.node(u).energy - grid.weight(g.node(u).cell, g.node(v).cell));
      CHECK(g.node(v).energy < g.node(u).energy);
      bool found = false;
      for (int p : g.predecessors(v)) found = found || p == u;
      CHECK(found);
    }
  }
  CHECK(edge_count == g.num_edges());
  for (int f : g.finals()) CHECK(g.node(f).cell == grid.goal());
}

TEST_CASE("pruning keeps exactly the reachable and co-reachable part") {
  GridTs grid(2, 2, Cell{0, 0}, Cell{1, 1});
  ProductGraph g = construct_product_dag(grid, 2);

  SUBCASE("after moving to ((0,1),1) a single path remains") {
    ProductGraph p = prune(g, ProductNode{Cell{0, 1}, 1});
    CHECK(p.num_nodes() == 2);
    CHECK(p.num_edges() == 1);
    CHECK(p.node(p.initial()) == ProductNode{Cell{0, 1}, 1});
    CHECK(p.finals().size() == 1);
  }

  SUBCASE("pruning at a final node with zero energy leaves just that node") {
    ProductGraph p = prune(g, ProductNode{Cell{1, 1}, 0});
    CHECK(p.num_nodes() == 1);
    CHECK(p.num_edges() == 0);
    CHECK(p.is_final(p.initial()));
  }

  SUBCASE("pruning at the initial node is idempotent") {
    ProductGraph once = prune(g, ProductNode{Cell{0, 0}, 2});
    ProductGraph twice = prune(once, ProductNode{Cell{0, 0}, 2});
    CHECK(once.num_nodes() == twice.num_nodes());
    CHECK(once.num_edges() == twice.num_edges());
  }
}

TEST_CASE("pruning drops states that cannot reach the goal anymore") {
  // 1x3 corridor, 4 energy: wandering burns energy; stranded back at the
  // start with nothing left, the goal is unreachable, so that node must go.
  GridTs grid(3, 1, Cell{0, 0}, Cell{0, 2});
  ProductGraph g = construct_product_dag(grid, 4);
  bool has_dead_state = g.find(Cell{0, 0}, 0) >= 0;
  CHECK(has_dead_state);  // constructed without co-reachability pruning

  ProductGraph p = prune(g, ProductNode{Cell{0, 0}, 4});
  CHECK(p.find(Cell{0, 0}, 0) == -1);
  CHECK(p.find(Cell{0, 0}, 4) == p.initial());
  CHECK(p.find(Cell{0, 1}, 3) >= 0);

  for (int u = 0; u < p.num_nodes(); ++u) {
    // every kept node still reaches a final node
    std::set<int> seen;
    std::vector<int> stack{u};
    bool reaches = false;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (p.is_final(x)) reaches = true;
      for (int v : p.successors(x))
        if (seen.insert(v).second) stack.push_back(v);
    }
    CHECK(reaches);
  }
}

namespace {

void collect_paths(const ProductGraph& g, int u, std::string& prefix,
                   std::set<std::string>& out) {
  size_t mark = prefix.size();
  const ProductNode& n = g.node(u);
  prefix += std::to_string(n.cell.row) + "," + std::to_string(n.cell.col) + "," +
            std::to_string(n.energy) + ";";
  if (g.is_final(u)) out.insert(prefix);
  for (int v : g.successors(u)) collect_paths(g, v, prefix, out);
  prefix.resize(mark);
}

std::set<std::string> paths_from(const ProductGraph& g, int start) {
  std::set<std::string> out;
  std::string prefix;
  collect_paths(g, start, prefix, out);
  return out;
}

}  // namespace

TEST_CASE("pruning preserves every goal-reaching path from the current node") {
  GridTs grid(3, 3, Cell{0, 0}, Cell{2, 1});
  ProductGraph g = construct_product_dag(grid, 6);
  for (ProductNode current : {ProductNode{Cell{0, 0}, 6}, ProductNode{Cell{1, 1}, 4},
                              ProductNode{Cell{0, 1}, 3}}) {
    int u = g.find(current.cell, current.energy);
    REQUIRE(u >= 0);
    auto before = paths_from(g, u);
    ProductGraph p = prune(g, current);
    auto after = paths_from(p, p.initial());
    CHECK(before == after);
  }
}

TEST_CASE("dot export names the structure") {
  GridTs grid(2, 2, Cell{0, 0}, Cell{1, 1});
  ProductGraph g = construct_product_dag(grid, 2);
  std::string dot = g.to_dot(grid);
  CHECK(dot.find("digraph product") != std::string::npos);
  CHECK(dot.find("sink") != std::string::npos);
  CHECK(dot.find("-> t") != std::string::npos);
}
