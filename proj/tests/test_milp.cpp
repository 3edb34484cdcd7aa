#include <cmath>
#include <sstream>

#include "doctest.h"

#include "eisp/errors.hpp"
#include "eisp/milp.hpp"
#include "eisp/rng.hpp"

using namespace eisp;

namespace {

RewardField zero_field(const GridTs& grid) {
  RewardField field;
  field.value.assign(grid.num_cells(), Rational(0));
  field.tag.assign(grid.num_cells(), RewardCase::kUnobserved);
  return field;
}

RewardField random_field(const GridTs& grid, Rng& rng, bool with_negatives = true) {
  RewardField field = zero_field(grid);
  for (int i = 0; i < grid.num_cells(); ++i) {
    int lo = with_negatives && rng.next_below(10) == 0 ? -4 : 0;
    field.value[i] = Rational(rng.next_int(lo, 40), 4);
  }
  return field;
}

}  // namespace

TEST_CASE("zero rewards solve to a zero objective over some valid path") {
  GridTs grid(3, 3, Cell{0, 0}, Cell{2, 2});
  ProductGraph raw = construct_product_dag(grid, 6);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 6});
  MilpModel model = build_model(pruned, Cell{0, 0}, zero_field(grid), Rational(1, 2), 1);
  MilpSolution sol = solve(model);
  CHECK(sol.objective == 0.0);
  CHECK(sol.grid_path.front() == Cell{0, 0});
  CHECK(sol.grid_path.back() == Cell{2, 2});
  CHECK(sol.stats.optimal);
}

TEST_CASE("the richer branch of the 2x2 diamond wins") {
  GridTs grid(2, 2, Cell{0, 0}, Cell{1, 1});
  RewardField field = zero_field(grid);
  field.value[grid.index_of(Cell{0, 1})] = Rational(5);
  field.value[grid.index_of(Cell{1, 0})] = Rational(1);

  ProductGraph raw = construct_product_dag(grid, 2);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 2});
  MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), 0);
  MilpSolution sol = solve(model);
  CHECK(sol.objective == doctest::Approx(5.0).epsilon(1e-12));
  REQUIRE(sol.grid_path.size() == 3);
  CHECK(sol.grid_path[1] == Cell{0, 1});
}

TEST_CASE("a single-path corridor returns that path") {
  GridTs grid(3, 1, Cell{0, 0}, Cell{0, 2});
  RewardField field = zero_field(grid);
  field.value[1] = Rational(7, 2);
  ProductGraph raw = construct_product_dag(grid, 2);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 2});
  MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), 1);
  MilpSolution sol = solve(model);
  REQUIRE(sol.grid_path.size() == 3);
  CHECK(sol.grid_path[1] == Cell{0, 1});
  CHECK(sol.objective == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("variable families count exactly from the graph and grid") {
  GridTs grid(4, 4, Cell{0, 0}, Cell{3, 3});
  ProductGraph raw = construct_product_dag(grid, 8);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 8});

  for (int range : {0, 1, 2}) {
    MilpModel model = build_model(pruned, Cell{0, 0}, zero_field(grid), Rational(1, 2), range);
    const VariableCounts& counts = model.counts();
    CHECK(counts.edge_flow == pruned.num_edges() + static_cast<int>(pruned.finals().size()));
    CHECK(counts.node_visit == pruned.num_nodes() + 1);
    CHECK(counts.cell_visit == grid.num_cells());
    int sigma = 0;
    for (int i = 0; i < grid.num_cells(); ++i) {
      auto rings = sensing_neighborhood(grid, grid.cell_at(i), range);
      for (const auto& ring : rings) sigma += static_cast<int>(ring.size());
      sigma += 1;  // null option
    }
    CHECK(counts.observer == sigma);
    CHECK(counts.collected == grid.num_cells());
    CHECK(counts.binaries() == counts.edge_flow + counts.node_visit + counts.observer);
    CHECK(counts.continuous() == 2 * grid.num_cells());
  }
}

TEST_CASE("LP export is byte-stable and row-complete") {
  GridTs grid(3, 3, Cell{0, 0}, Cell{2, 2});
  Rng rng(5);
  RewardField field = random_field(grid, rng);
  field.value[4] = Rational(-1);  // force a cover block
  ProductGraph raw = construct_product_dag(grid, 4);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 4});
  MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), 1);

  std::string lp1 = model.export_lp();
  std::string lp2 = model.export_lp();
  CHECK(lp1 == lp2);
  CHECK(lp1.find("Maximize") != std::string::npos);
  CHECK(lp1.find("Subject To") != std::string::npos);
  CHECK(lp1.find("Binaries") != std::string::npos);
  CHECK(lp1.find("zeta_") != std::string::npos);
  CHECK(lp1.find("sig_0_0__null") != std::string::npos);
  CHECK(lp1.find(" free") != std::string::npos);
  CHECK(lp1.find("cover_") != std::string::npos);

  int rows = 0;
  std::istringstream in(lp1);
  std::string line;
  bool in_rows = false;
  while (std::getline(in, line)) {
    if (line == "Subject To") {
      in_rows = true;
      continue;
    }
    if (line == "Bounds") break;
    if (in_rows && line.find(':') != std::string::npos) ++rows;
  }
  CHECK(rows == model.num_constraints());
}

TEST_CASE("solver matches the enumeration oracle across small instances") {
  Rng rng(101);
  int checked = 0;
  for (int n : {2, 3}) {
    std::vector<Cell> corners = {Cell{0, 0}, Cell{0, n - 1}, Cell{n - 1, 0}, Cell{n - 1, n - 1}};
    for (Cell init : corners) {
      for (Cell goal : corners) {
        if (init == goal) continue;
        GridTs grid(n, n, init, goal);
        for (int energy = 2; energy <= 5; ++energy) {
          if (energy < manhattan(init, goal)) continue;
          ProductGraph raw = construct_product_dag(grid, energy);
          ProductGraph pruned = prune(raw, ProductNode{init, energy});
          for (int trial = 0; trial < 6; ++trial) {
            RewardField field = random_field(grid, rng);
            int range = trial % 3;
            MilpModel model = build_model(pruned, init, field, Rational(1, 2), range);
            MilpSolution got = solve(model);
            MilpSolution want = oracle_solve(pruned, init, field, Rational(1, 2), range);
            CHECK(std::abs(got.objective - want.objective) <= 1e-9);

            REQUIRE(!got.product_path.empty());
            CHECK(got.product_path.front() == pruned.initial());
            CHECK(pruned.is_final(got.product_path.back()));
            CHECK(got.edges.size() == got.product_path.size());
            CHECK(got.edges.back().second == pruned.sink());

            Rational exact =
                path_collected_reward(field, grid, got.grid_path, Rational(1, 2), range);
            CHECK(std::abs(got.objective - exact.to_double()) <= 1e-9);
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("parallel subtree evaluation returns the serial solution bit for bit") {
  Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(2));
    GridTs grid(n, n, Cell{0, 0}, Cell{n - 1, n - 1});
    int energy = 2 * (n - 1) + 2 * static_cast<int>(rng.next_below(2));
    ProductGraph raw = construct_product_dag(grid, energy);
    ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, energy});
    RewardField field = random_field(grid, rng);
    MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), 2);

    SolveConfig serial;
    SolveConfig parallel;
    parallel.threads = 4;
    MilpSolution a = solve(model, serial);
    MilpSolution b = solve(model, parallel);
    CHECK(a.objective == b.objective);
    CHECK(a.product_path == b.product_path);
  }
}

TEST_CASE("the search bound never undercuts a completed subtree") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    GridTs grid(3, 3, Cell{0, 0}, Cell{2, 2});
    ProductGraph raw = construct_product_dag(grid, 6);
    ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 6});
    RewardField field = random_field(grid, rng);
    MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), 1);
    SolveConfig config;
    config.validate_bounds = true;  // disables pruning, checks admissibility
    MilpSolution audited = solve(model, config);
    MilpSolution normal = solve(model);
    CHECK(audited.objective == normal.objective);
  }
}

TEST_CASE("a node limit yields a usable incumbent flagged non-optimal") {
  GridTs grid(4, 4, Cell{0, 0}, Cell{3, 3});
  ProductGraph raw = construct_product_dag(grid, 10);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 10});
  Rng rng(9);
  RewardField field = random_field(grid, rng);
  MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), 2);

  SolveConfig config;
  config.node_limit = 3;
  MilpSolution sol = solve(model, config);
  CHECK_FALSE(sol.stats.optimal);
  CHECK(!sol.grid_path.empty());
  CHECK(sol.grid_path.back() == Cell{3, 3});

  MilpSolution full = solve(model);
  CHECK(full.stats.optimal);
  CHECK(full.objective >= sol.objective);
}

TEST_CASE("the oracle's path guard trips on large graphs") {
  GridTs grid(5, 5, Cell{0, 0}, Cell{4, 4});
  ProductGraph raw = construct_product_dag(grid, 14);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 14});
  RewardField field = zero_field(grid);
  CHECK_THROWS_AS(oracle_solve(pruned, Cell{0, 0}, field, Rational(1, 2), 1, 1000),
                  ValidationError);
}

TEST_CASE("non-unit transition energies flow through product, solver and oracle") {
  GridTs grid(3, 2, Cell{0, 0}, Cell{1, 2});
  grid.set_weight(Cell{0, 0}, Cell{0, 1}, 3);
  grid.set_weight(Cell{0, 1}, Cell{1, 1}, 2);

  Rng rng(23);
  for (int energy : {3, 5, 7}) {
    if (energy < grid.shortest_path_energy(grid.init(), grid.goal())) continue;
    ProductGraph raw = construct_product_dag(grid, energy);
    for (int u = 0; u < raw.num_nodes(); ++u)
      for (int v : raw.successors(u))
        CHECK(raw.node(u).energy - raw.node(v).energy ==
              grid.weight(raw.node(u).cell, raw.node(v).cell));

    ProductGraph pruned = prune(raw, ProductNode{grid.init(), energy});
    for (int trial = 0; trial < 5; ++trial) {
      RewardField field = random_field(grid, rng);
      MilpModel model = build_model(pruned, grid.init(), field, Rational(1, 2), 1);
      MilpSolution got = solve(model);
      MilpSolution want = oracle_solve(pruned, grid.init(), field, Rational(1, 2), 1);
      CHECK(std::abs(got.objective - want.objective) <= 1e-9);
    }
  }
}

TEST_CASE("uniform positive rewards reduce to maximum discounted coverage") {
  GridTs grid(4, 4, Cell{0, 0}, Cell{3, 3});
  RewardField field;
  field.value.assign(16, Rational(1));
  field.tag.assign(16, RewardCase::kUnobserved);
  ProductGraph raw = construct_product_dag(grid, 8);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 8});

  MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), 1);
  MilpSolution got = solve(model);
  MilpSolution want = oracle_solve(pruned, Cell{0, 0}, field, Rational(1, 2), 1, 100000);
  CHECK(got.objective == doctest::Approx(want.objective).epsilon(1e-12));
  // 9 cells at distance 0 on the longest path, the rest at best distance 1.
  CHECK(got.objective > 9.0);
}

TEST_CASE("a time limit annotates the result without truncating it") {
  GridTs grid(4, 4, Cell{0, 0}, Cell{3, 3});
  Rng rng(13);
  RewardField field = random_field(grid, rng);
  ProductGraph raw = construct_product_dag(grid, 10);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 10});
  MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), 2);

  SolveConfig config;
  config.time_limit_ms = 1e-6;
  MilpSolution limited = solve(model, config);
  MilpSolution plain = solve(model);
  CHECK(limited.stats.hit_time_limit);
  CHECK(limited.stats.optimal);  // the search still ran to completion
  CHECK(limited.objective == plain.objective);
  CHECK(limited.product_path == plain.product_path);
}

TEST_CASE("negative cells cannot be opted out of in the collection") {
  GridTs grid(3, 1, Cell{0, 0}, Cell{0, 2});
  RewardField field = zero_field(grid);
  field.value[1] = Rational(-1);
  ProductGraph raw = construct_product_dag(grid, 4);
  ProductGraph pruned = prune(raw, ProductNode{Cell{0, 0}, 4});
  for (int range : {0, 1}) {
    MilpModel model = build_model(pruned, Cell{0, 0}, field, Rational(1, 2), range);
    MilpSolution sol = solve(model);
    MilpSolution want = oracle_solve(pruned, Cell{0, 0}, field, Rational(1, 2), range);
    CHECK(sol.objective == doctest::Approx(want.objective).epsilon(1e-12));
    CHECK(sol.objective < 0.0);
  }
}
