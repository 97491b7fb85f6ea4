#include <doctest.h>

#include <algorithm>
#include <random>

#include "snn/generators.hpp"
#include "snn/graph.hpp"

using namespace snn;

namespace {

// Exhaustive min over all 2^m owner choices, independent of the library.
int brute_min_outdegree(const CompatGraph& g) {
  const auto inst = g.instances();
  const std::size_t m = inst.size();
  int best = m == 0 ? 0 : static_cast<int>(m);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> deg(g.num_vertices(), 0);
    for (std::size_t e = 0; e < m; ++e) ++deg[static_cast<std::size_t>((mask >> e) & 1u ? inst[e].second : inst[e].first)];
    best = std::min(best, *std::max_element(deg.begin(), deg.end()));
  }
  return best;
}

}  // namespace

TEST_CASE("add_edge validation") {
  CompatGraph g(3);
  CHECK_THROWS(g.add_edge(0, 0));
  CHECK_THROWS(g.add_edge(0, 3));
  CHECK_THROWS(g.add_edge(0, 1, 0));
  g.add_edge(0, 1, 2);
  g.add_edge(1, 2);
  CHECK(g.num_instances() == 3);
  CHECK(g.neighbors(1) == std::vector<VertexId>{0, 2});
  CHECK(g.degrees() == std::vector<int>{2, 3, 1});
}

TEST_CASE("orientations of small graphs") {
  SUBCASE("path on 3 vertices") {
    const CompatGraph g(3, {{0, 1, 1}, {1, 2, 1}});
    const auto o = orient_edges(g);
    CHECK(o.valid_for(g));
    CHECK(o.r == 1);
    CHECK(exact_pseudoarboricity(g) == 1);
  }
  SUBCASE("triangle") {
    const CompatGraph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    const auto o = orient_edges(g);
    CHECK(o.valid_for(g));
    CHECK((o.r == 1 || o.r == 2));
    CHECK(exact_pseudoarboricity(g) == 1);
  }
  SUBCASE("star K_1,4") {
    const CompatGraph g(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
    CHECK(exact_pseudoarboricity(g) == 1);
    CHECK(orient_edges(g).r == 1);
  }
  SUBCASE("three parallel edges") {
    const CompatGraph g(2, {{0, 1, 3}});
    CHECK(exact_pseudoarboricity(g) == 2);
    CHECK(degeneracy(g) == 3);
    CHECK(orient_edges(g).r == 3);  // peeling hands every copy to the first vertex removed
  }
  SUBCASE("empty graph") {
    const CompatGraph g(4);
    CHECK(orient_edges(g).r == 0);
    CHECK(degeneracy(g) == 0);
  }
  SUBCASE("oracle limit") {
    CHECK_THROWS_AS(exact_pseudoarboricity(CompatGraph(2, {{0, 1, 17}})), std::length_error);
  }
}

TEST_CASE("grid graphs") {
  CHECK(grid_graph(1, 1).num_instances() == 0);
  CHECK(grid_graph(2, 2).num_instances() == 4);
  CHECK(grid_graph(3, 3).num_instances() == 12);
  for (int w = 1; w <= 9; ++w)
    for (int h = 1; h <= 9; ++h) {
      const auto g = grid_graph(w, h);
      CHECK(g.num_instances() == static_cast<std::size_t>(2 * w * h - w - h));
      const auto o = orient_edges(g);
      CHECK(o.valid_for(g));
      CHECK(o.r <= 2);
    }
  const auto g = grid_graph(3, 2);
  CHECK(g.neighbors(4) == std::vector<VertexId>{1, 3, 5});  // (1,1): up, left, right
}

TEST_CASE("greedy orientation against the exhaustive optimum") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    CompatGraph g;
    do {
      g = random_graph(2 + static_cast<int>(rng() % 6), 0.5, 3, rng);
    } while (g.num_instances() > 14);
    const auto o = orient_edges(g);
    REQUIRE(o.valid_for(g));
    const int exact = brute_min_outdegree(g);
    CHECK(exact_pseudoarboricity(g) == exact);
    CHECK(o.r >= exact);
    CHECK(o.r <= degeneracy(g));
    CHECK(degeneracy(g) <= 2 * exact);
  }
}

TEST_CASE("random regular graphs") {
  std::mt19937_64 rng(3);
  for (int k : {4, 8, 16, 32}) {
    const auto g = random_regular_graph(k, 3, rng);
    CHECK(g.num_vertices() == static_cast<std::size_t>(k));
    CHECK(is_connected(g));
    for (int d : g.degrees()) CHECK(d == 3);
    for (const auto& e : g.edges()) CHECK(e.mult == 1);
    for (VertexId v = 0; v < k; ++v) CHECK(g.neighbors(v).size() == 3);
  }
  CHECK_THROWS(random_regular_graph(5, 3, rng));  // k*d odd
  CHECK_THROWS(random_regular_graph(3, 3, rng));  // d >= k
}
