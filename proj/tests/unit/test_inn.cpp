#include <doctest.h>

#include <algorithm>
#include <random>

#include "snn/generators.hpp"
#include "snn/inn.hpp"
#include "snn/instance_io.hpp"

using namespace snn;

TEST_CASE("stage-2 names") {
  for (auto k : {Stage2Kind::automatic, Stage2Kind::exact, Stage2Kind::tree, Stage2Kind::rplus})
    CHECK(stage2_from_string(to_string(k)) == k);
  CHECK_THROWS(stage2_from_string("lp"));
}

TEST_CASE("Q subset of P with no edges assigns every query itself") {
  const auto inst = load_instance(SNN_FIXTURES "/q_equals_p.json");
  for (auto kind : {Stage2Kind::exact, Stage2Kind::rplus}) {
    const auto r = inn_solve(inst, {kind});
    CHECK(r.assignment.total == 0.0);
    CHECK(r.assignment.label_of == inst.queries);
  }
}

TEST_CASE("three-label example prunes the middle label") {
  const auto inst = load_instance(SNN_FIXTURES "/three_labels.json");
  const auto r = inn_solve(inst, {Stage2Kind::exact});
  CHECK(r.pruned_labels == std::vector<PointId>{0, 2});
  CHECK(r.assignment.total == 10.0);
  for (PointId p : r.assignment.label_of) CHECK(std::find(r.pruned_labels.begin(), r.pruned_labels.end(), p) != r.pruned_labels.end());
  CHECK(r.assignment.total == doctest::Approx(pruning_gap(inst).alpha * pruning_gap(inst).opt_full));
}

TEST_CASE("automatic stage 2 selection") {
  const auto small = load_instance(SNN_FIXTURES "/two_query.json");
  CHECK(inn_solve(small).used == Stage2Kind::exact);
  const auto big = build_lower_bound_instance({16, 3, 2}, 1);
  CHECK(inn_solve(big).used == Stage2Kind::rplus);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({u(rng), u(rng)});
  SnnInstance e;
  e.space = MetricSpace::euclidean(pts);
  for (PointId i = 0; i < 20; ++i) e.labels.push_back(i);
  for (PointId i = 20; i < 40; ++i) e.queries.push_back(i);
  e.graph = grid_graph(5, 4);
  CHECK(inn_solve(e).used == Stage2Kind::tree);
}

TEST_CASE("exact stage 2 equals the pruned optimum on random instances") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance({}, rng);
    const auto r = inn_solve(inst, {Stage2Kind::exact});
    const auto gap = pruning_gap(inst);
    CHECK(std::abs(r.assignment.total - gap.opt_pruned) <= 1e-9);
    CHECK(r.assignment.total >= gap.opt_full - kDistTol);
  }
}
