#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "snn/generators.hpp"
#include "snn/metric.hpp"
#include "snn/nn_index.hpp"
#include "snn/tree_labeling.hpp"
#include "snn/tree_metric.hpp"

using namespace snn;

namespace {

std::vector<std::vector<double>> random_points(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& x : p) x = u(rng);
  return pts;
}

}  // namespace

TEST_CASE("root split stays inside the band") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto tm = TreeMetric::over_lattice(1, 0, 255, seed);
    const auto [axis, s] = tm.split(tm.root());
    CHECK(axis == 0);
    CHECK(s >= 102.0);
    CHECK(s <= 153.0);
  }
}

TEST_CASE("lattice children partition the box") {
  const auto tm = TreeMetric::over_lattice(3, 0, 255, 9);
  auto c = tm.root();
  for (int level = 0; level < 12; ++level) {
    const auto [axis, s] = tm.split(c);
    CHECK(axis == level % 3);
    const auto [l, r] = tm.children(c);
    const auto a = static_cast<std::size_t>(axis);
    CHECK(l.lo[a] == c.lo[a]);
    CHECK(r.hi[a] == c.hi[a]);
    CHECK(r.lo[a] == l.hi[a] + 1.0);
    CHECK(l.hi[a] <= s);
    CHECK(r.lo[a] > s);
    c = level % 2 ? r : l;
  }
}

TEST_CASE("degenerate trees") {
  const auto one = TreeMetric::over_points({{3.0, 4.0}}, 1);
  CHECK(one.is_leaf(one.root()));
  CHECK(one.leaf_depth(std::vector<double>{3.0, 4.0}) == 0);
  CHECK(one.tree_dist(std::vector<double>{3.0, 4.0}, std::vector<double>{3.0, 4.0}) == 0.0);
  CHECK_THROWS_AS(one.tree_dist(std::vector<double>{3.0, 5.0}, std::vector<double>{3.0, 4.0}), std::out_of_range);
  const auto two = TreeMetric::over_points({{0.0, 0.0}, {6.0, 1.0}}, 1);
  const auto [axis, s] = two.split(two.root());
  CHECK(axis == 0);  // axes cycle from 0
  const double d = two.tree_dist(std::vector<double>{0.0, 0.0}, std::vector<double>{6.0, 1.0});
  CHECK(d >= 6.0);
  CHECK(d == doctest::Approx(2.0 * std::sqrt(37.0)));  // both leaves hang off the root
  CHECK_THROWS(TreeMetric::over_points({}, 1));
  const auto lat = TreeMetric::over_lattice(2, 0, 3, 1);
  CHECK_THROWS_AS(lat.tree_dist(std::vector<double>{0.5, 0.0}, std::vector<double>{0.0, 0.0}), std::out_of_range);
  CHECK_THROWS_AS(lat.tree_dist(std::vector<double>{4.0, 0.0}, std::vector<double>{0.0, 0.0}), std::out_of_range);
}

TEST_CASE("points separated at the root are at least twice the root diameter apart") {
  std::mt19937_64 rng(4);
  const auto pts = random_points(40, 2, rng);
  const auto tm = TreeMetric::over_points(pts, 77);
  const auto root = tm.root();
  const auto [l, r] = tm.children(root);
  for (const auto& a : pts)
    for (const auto& b : pts)
      if (tm.goes_right(root, a) != tm.goes_right(root, b)) {
        CHECK(tm.tree_dist(a, b) >= 2.0 * tm.diameter(root) - 1e-9);
        CHECK(tm.tree_dist(a, b) >= std::max(tm.diameter(l), tm.diameter(r)));
      }
}

TEST_CASE("tree distance is a dominating metric on point sets") {
  std::mt19937_64 rng(6);
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    const auto pts = random_points(30, dim, rng);
    const auto tm = TreeMetric::over_points(pts, dim);
    std::vector<double> table(pts.size() * pts.size());
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = 0; b < pts.size(); ++b) {
        table[a * pts.size() + b] = tm.tree_dist(pts[a], pts[b]);
        CHECK(table[a * pts.size() + b] >= euclidean_distance(pts[a], pts[b]) - 1e-9);
      }
    CHECK_FALSE(check_metric_axioms(MetricSpace::from_matrix(table, pts.size())).has_value());
  }
}

TEST_CASE("lattice nearest_in is round-and-clamp inside the cell") {
  const auto tm = TreeMetric::over_lattice(3, 0, 255, 5);
  const LatticeIndex lat(3, 0, 255);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-20.0, 275.0);
  for (int t = 0; t < 200; ++t) {
    const std::vector<double> q{u(rng), u(rng), u(rng)};
    CHECK(tm.nearest_in(tm.root(), q) == lat.nearest(q));
  }
}

TEST_CASE("point-mode nearest_in equals a scan over the cell") {
  std::mt19937_64 rng(8);
  const auto pts = random_points(64, 3, rng);
  const auto tm = TreeMetric::over_points(pts, 3);
  const auto [l, r] = tm.children(tm.root());
  const auto q = random_points(1, 3, rng)[0];
  for (int side = 0; side < 2; ++side) {
    int idx = -1;
    const auto x = tm.nearest_in(side == 0 ? l : r, q, &idx);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts)
      if (tm.goes_right(tm.root(), p) == (side == 1)) best = std::min(best, euclidean_distance(p, q));
    CHECK(euclidean_distance(x, q) == doctest::Approx(best));
    CHECK(pts[static_cast<std::size_t>(idx)] == x);
  }
}

TEST_CASE("tree labeling with no edges is the independent nearest neighbor") {
  std::mt19937_64 rng(10);
  const auto labels = random_points(50, 2, rng);
  const auto queries = random_points(20, 2, rng);
  const auto tm = TreeMetric::over_points(labels, 1);
  const auto res = tree_labeling(tm, queries, CompatGraph(20), 1);
  double expected = 0.0;
  for (const auto& q : queries) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : labels) best = std::min(best, euclidean_distance(p, q));
    expected += best;
  }
  CHECK(res.total == doctest::Approx(expected).epsilon(1e-12));
  CHECK(res.pw_cost == 0.0);
}

TEST_CASE("tree labeling is deterministic and monotone within each level") {
  std::mt19937_64 rng(12);
  const auto labels = random_points(80, 3, rng);
  const auto queries = random_points(64, 3, rng);
  const auto tm = TreeMetric::over_points(labels, 21);
  const auto g = grid_graph(8, 8);
  const auto a = tree_labeling(tm, queries, g, 5);
  const auto b = tree_labeling(tm, queries, g, 5);
  CHECK(a.labels == b.labels);
  CHECK(a.pass_costs == b.pass_costs);
  CHECK(a.levels > 0);
  for (std::size_t lv = 0; lv < a.level_starts.size(); ++lv) {
    const std::size_t end = lv + 1 < a.level_starts.size() ? a.level_starts[lv + 1] : a.pass_costs.size();
    for (std::size_t t = a.level_starts[lv] + 1; t < end; ++t) CHECK(a.pass_costs[t] <= a.pass_costs[t - 1] + 1e-9);
  }
  for (std::size_t i = 0; i < queries.size(); ++i) CHECK(labels[static_cast<std::size_t>(a.label_index[i])] == a.labels[i]);
}

TEST_CASE("tree labeling on k=2 instances stays within 2x of the optimum") {
  std::mt19937_64 rng(13);
  RandomInstanceSpec spec;
  spec.metric = RandomMetric::euclidean;
  int checked = 0;
  while (checked < 200) {
    auto inst = random_instance(spec, rng);
    if (inst.k() != 2) continue;
    ++checked;
    const auto opt = brute_force_opt(inst, inst.labels);
    const auto heur = tree_labeling_solve(inst, checked);
    CHECK(heur.total >= opt.total - kDistTol);
    CHECK(heur.total <= 2.0 * opt.total + kDistTol);
  }
}
