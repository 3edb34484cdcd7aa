#include <set>

#include "doctest.h"

#include "eisp/errors.hpp"
#include "eisp/harness.hpp"
#include "support/builders.hpp"

using namespace eisp;

namespace {

Scenario random_template(int n, int budget, uint64_t seed = 7) {
  auto spec = eisp::test::mars_spec(n, n, Cell{0, 0}, Cell{n - 1, n - 1}, budget, {}, seed);
  spec.placement = {};
  auto doc = eisp::test::scenario_doc(spec);
  doc["targets"]["placement"] = "random";
  return load_scenario(doc);
}

}  // namespace

TEST_CASE("generated batches are distinct, reproducible and well-formed") {
  Scenario tpl = random_template(5, 16);
  auto batch1 = generate_scenarios(tpl, 10, 99);
  auto batch2 = generate_scenarios(tpl, 10, 99);
  REQUIRE(batch1.size() == 10);

  std::set<std::string> texts;
  for (size_t i = 0; i < batch1.size(); ++i) {
    CHECK(batch1[i].canonical_text() == batch2[i].canonical_text());
    texts.insert(batch1[i].canonical_text());

    const auto& labeling = batch1[i].revealed_labeling();
    const GridTs& grid = batch1[i].grid();
    CHECK(labeling[grid.index_of(grid.init())] == batch1[i].refinement().empty_symbol());
    CHECK(labeling[grid.index_of(grid.goal())] == batch1[i].refinement().empty_symbol());
    CHECK(batch1[i].placement_mode() == PlacementMode::kExplicit);
  }
  CHECK(texts.size() == 10);  // placements differ across cases

  auto other_seed = generate_scenarios(tpl, 10, 100);
  CHECK(other_seed[0].canonical_text() != batch1[0].canonical_text());
}

TEST_CASE("generation requires a random-placement template") {
  Scenario explicit_scenario = eisp::test::mars_scenario();
  CHECK_THROWS_AS(generate_scenarios(explicit_scenario, 3, 1), ValidationError);
}

TEST_CASE("full information on an empty world walks to the goal for free") {
  auto spec = eisp::test::mars_spec(4, 4, Cell{0, 0}, Cell{3, 3}, 9, {});
  Scenario s = eisp::test::make_scenario(spec);
  BaselineResult fi = full_info_baseline(s);
  CHECK(fi.reward == Rational(0));
  CHECK(fi.serviced.empty());
  CHECK(fi.optimal);
  CHECK(fi.path.front() == Cell{0, 0});
  CHECK(fi.path.back() == Cell{3, 3});
  int cost = static_cast<int>(fi.path.size()) - 1;
  CHECK(cost <= 9);
}

TEST_CASE("a target on the only path is collected when the budget just fits") {
  // corridor of length 2 with one biomarker: E = motion 2 + service 2
  auto spec = eisp::test::mars_spec(3, 1, Cell{0, 0}, Cell{0, 2}, 4,
                                    {{Cell{0, 1}, "Biomarker"}});
  Scenario s = eisp::test::make_scenario(spec);
  BaselineResult fi = full_info_baseline(s);
  CHECK(fi.reward == Rational(6));
  REQUIRE(fi.serviced.size() == 1);
  CHECK(fi.serviced[0] == Cell{0, 1});

  // One unit less and the service no longer fits.
  spec.budget = 3;
  BaselineResult tight = full_info_baseline(eisp::test::make_scenario(spec));
  CHECK(tight.reward == Rational(0));
}

TEST_CASE("full information matches exhaustive walk search on a small instance") {
  // 3x3 with three planted targets and a budget too small to take them all.
  auto spec = eisp::test::mars_spec(3, 3, Cell{0, 0}, Cell{2, 2}, 8,
                                    {{Cell{0, 1}, "Biomarker"},
                                     {Cell{1, 0}, "Biomarker"},
                                     {Cell{2, 1}, "Fossil"}});
  Scenario s = eisp::test::make_scenario(spec);
  BaselineResult fi = full_info_baseline(s);

  // Exhaustive recursion over all walks with optional servicing.
  struct Brute {
    const Scenario& s;
    const GridTs& grid;
    Rational best{0};

    void walk(Cell at, int energy, std::set<int> serviced, Rational reward) {
      if (at == grid.goal() && reward > best) best = reward;
      SymbolId truth = s.revealed_labeling()[grid.index_of(at)];
      if (s.is_target(truth) && serviced.count(grid.index_of(at)) == 0 &&
          s.servicing_energy(truth) <= energy) {
        auto with = serviced;
        with.insert(grid.index_of(at));
        walk(at, energy - s.servicing_energy(truth), with, reward + s.target_reward(truth));
      }
      for (Cell n : grid.neighbors(at)) {
        int w = grid.weight(at, n);
        if (w <= energy) walk(n, energy - w, serviced, reward);
      }
    }
  } brute{s, s.grid()};
  brute.walk(Cell{0, 0}, 8, {}, Rational(0));

  CHECK(fi.reward == brute.best);
  // Planted rewards sum to 20 but the budget forces a choice; the fossil
  // detour (4 moves + 3 service = 7) beats any two-target combination.
  CHECK(fi.reward == Rational(8));
}

TEST_CASE("regret is the baseline minus the serviced reward, never negative") {
  Scenario tpl = random_template(4, 12);
  RegretReport report = evaluate_regret(tpl, 12, 21);
  REQUIRE(report.instances.size() == 12);
  for (const RegretInstance& inst : report.instances) {
    CHECK(inst.fi_optimal);
    CHECK(inst.regret == inst.fi_reward - inst.nii_reward);
    CHECK(inst.regret >= Rational(0));
    CHECK(inst.fi_reward >= inst.nii_reward);
  }
  CHECK(report.mean_regret() >= 0.0);

  // identical batches give identical reports
  RegretReport again = evaluate_regret(tpl, 12, 21);
  CHECK(report.details_csv() == again.details_csv());
  CHECK(report.summary_csv() == again.summary_csv());
}

TEST_CASE("report CSVs carry the table-shaped headers") {
  Scenario tpl = random_template(4, 10);
  RegretReport report = evaluate_regret(tpl, 3, 5, 2);
  std::string summary = report.summary_csv();
  CHECK(summary.find("case,grid_size,E,targets_present,targets_serviced_fi,"
                     "targets_serviced_nii,mean_regret") == 0);
  CHECK(summary.find("\n2,4x4,10,") != std::string::npos);
  std::string details = report.details_csv();
  CHECK(details.find("instance,seed,targets_present,") == 0);
  CHECK(details.find("\n0,") != std::string::npos);
}

TEST_CASE("different reward values produce regret even at equal service counts") {
  // Fossil (8) in one corner, biomarker (6) in the other; budget reaches one.
  auto spec = eisp::test::mars_spec(5, 5, Cell{0, 0}, Cell{4, 4}, 13,
                                    {{Cell{0, 4}, "Fossil"}, {Cell{4, 0}, "Biomarker"}});
  Scenario s = eisp::test::make_scenario(spec);
  BaselineResult fi = full_info_baseline(s);
  CHECK(fi.reward == Rational(8));  // 8 moves + 3 service = 11 <= 13; both cost >= 21
  REQUIRE(fi.serviced.size() == 1);
  CHECK(fi.serviced[0] == Cell{0, 4});
}

TEST_CASE("bench rows expose sizes, counts and a reproducible objective") {
  BenchReport report = run_bench({{4, 8}, {4, 9}, {4, 10}, {4, 11}});
  REQUIRE(report.rows.size() == 4);
  for (size_t i = 1; i < report.rows.size(); ++i)
    CHECK(report.rows[i].product_edges >= report.rows[i - 1].product_edges);

  for (const BenchRow& row : report.rows) {
    CHECK(row.product_nodes > 0);
    CHECK(row.pruned_edges <= row.product_edges);
    CHECK(row.continuous_vars == 2 * row.grid_size * row.grid_size);
    CHECK(row.binary_vars > row.pruned_edges);
    CHECK(row.bb_nodes > 0);
  }

  std::string csv = report.to_csv();
  CHECK(csv.find("grid_size,E_epsilon,product_edges,") == 0);

  BenchReport again = run_bench({{4, 8}, {4, 9}, {4, 10}, {4, 11}});
  for (size_t i = 0; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].objective == again.rows[i].objective);
    CHECK(report.rows[i].bb_nodes == again.rows[i].bb_nodes);
  }
}
