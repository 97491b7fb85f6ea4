#include <doctest.h>

#include <random>

#include "snn/generators.hpp"
#include "snn/sparse_solver.hpp"

using namespace snn;

namespace {

SnnInstance two_query(CompatGraph g) {
  SnnInstance inst;
  inst.space = MetricSpace::euclidean({{0.0}, {10.0}, {1.0}, {9.0}});
  inst.labels = {0, 1};
  inst.queries = {2, 3};
  inst.graph = std::move(g);
  return inst;
}

}  // namespace

TEST_CASE("rplus on the two-query example") {
  const auto inst = two_query(CompatGraph(2, {{0, 1, 1}}));
  const Orientation owned_by_q2{{1}, 1};
  const auto a = rplus_solve(inst, owned_by_q2);
  CHECK(a.label_of == std::vector<PointId>{0, 1});  // 1 + 9/2 beats 9 + 1/2; q2 has no anchors
  CHECK(a.total == 12.0);
  CHECK(a.total <= 3.0 * brute_force_opt(inst, inst.labels).total);
}

TEST_CASE("rplus degenerate cases") {
  SUBCASE("isolated queries take their nearest label") {
    const auto inst = two_query(CompatGraph(2));
    CHECK(rplus_solve(inst, orient_edges(inst.graph)).label_of == nearest_labels(inst));
  }
  SUBCASE("coincident queries at a label") {
    SnnInstance inst;
    inst.space = MetricSpace::euclidean({{0.0}, {3.0}, {3.0}, {3.0}, {3.0}});
    inst.labels = {0, 1};
    inst.queries = {2, 3, 4};
    inst.graph = CompatGraph(3, {{0, 1, 2}, {1, 2, 1}, {0, 2, 1}});
    const auto a = rplus_solve(inst, orient_edges(inst.graph));
    CHECK(a.total == 0.0);
    CHECK(a.label_of == std::vector<PointId>{1, 1, 1});
  }
  SUBCASE("rejects weighted instances and foreign orientations") {
    auto inst = two_query(CompatGraph(2, {{0, 1, 1}}));
    CHECK_THROWS(rplus_solve(inst, Orientation{{0, 1}, 1}));
    inst.kappa = {2.0, 1.0};
    CHECK_THROWS(rplus_solve(inst, orient_edges(inst.graph)));
  }
}

TEST_CASE("sparse_assign designated neighbors") {
  SUBCASE("empty graph returns the nearest-label map") {
    const auto inst = two_query(CompatGraph(2));
    const auto opt = brute_force_opt(inst, inst.labels);
    const auto r = sparse_assign(inst, opt, nearest_labels(inst));
    CHECK(r.assignment.label_of == nearest_labels(inst));
    for (const auto& t : r.trace) CHECK(t.chosen == 0);
  }
  SUBCASE("scores follow the definition") {
    const auto inst = two_query(CompatGraph(2, {{0, 1, 1}}));
    const Assignment opt = cost(inst, {0, 0});
    const auto r = sparse_assign(inst, opt, nearest_labels(inst));
    // q1: self 0 + 1 = 1, neighbor q2: 0 + 9 = 9. q2: self 0 + 9 = 9, neighbor q1: 0 + 1 = 1.
    CHECK(r.trace[0].scores == std::vector<double>{1.0, 9.0});
    CHECK(r.trace[1].scores == std::vector<double>{9.0, 1.0});
    CHECK(r.trace[0].chosen == 0);
    CHECK(r.trace[1].chosen == 1);
    CHECK(r.assignment.label_of == std::vector<PointId>{0, 0});
  }
}

TEST_CASE("bounds on random oracle-scale instances") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = random_instance({}, rng);
    const auto o = orient_edges(inst.graph);
    const auto opt = brute_force_opt(inst, inst.labels);
    const double r = o.r;
    CHECK(rplus_solve(inst, o).total <= (2 * r + 1) * opt.total + kDistTol);
    const auto s = sparse_assign(inst, opt, nearest_labels(inst)).assignment;
    CHECK(s.nn_cost <= 3 * opt.nn_cost + kDistTol);
    CHECK(s.pw_cost <= 4 * opt.pw_cost + 4 * r * opt.nn_cost + kDistTol);
    CHECK(s.total <= (4 * r + 3) * opt.total + kDistTol);
  }
}
