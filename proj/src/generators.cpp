#include "snn/generators.hpp"

#include <stdexcept>

namespace snn {

SnnInstance build_lower_bound_instance(const LowerBoundParams& p, std::uint64_t seed) {
  if (p.k < p.d + 1) throw std::invalid_argument("lower bound: need k >= d + 1");
  if (p.multiplicity < 1) throw std::invalid_argument("lower bound: multiplicity must be >= 1");
  if ((static_cast<long long>(p.k) * p.d) % 2 != 0) throw std::invalid_argument("lower bound: k*d is odd, no d-regular graph");
  std::mt19937_64 rng(seed);
  const CompatGraph h = random_regular_graph(p.k, p.d, rng);

  WeightedGraph hp;
  hp.n = static_cast<std::size_t>(2 * p.k);
  for (const auto& e : h.edges()) hp.edges.push_back({static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v), 1.0});
  for (int i = 0; i < p.k; ++i) {
    hp.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(p.k + i), static_cast<double>(p.multiplicity)});
  }

  SnnInstance inst;
  inst.space = build_graph_metric(hp);
  for (PointId v = 0; v < 2 * p.k; ++v) inst.labels.push_back(v);
  for (PointId i = 0; i < p.k; ++i) inst.queries.push_back(p.k + i);
  inst.graph = CompatGraph(static_cast<std::size_t>(p.k));
  for (const auto& e : h.edges()) inst.graph.add_edge(e.u, e.v, p.multiplicity);
  return inst;
}

double lower_bound_reference_cost(const LowerBoundParams& p) {
  return static_cast<double>(p.k) * p.multiplicity + static_cast<double>(p.k) * p.d * p.multiplicity / 2.0;
}

CompatGraph random_graph(int n, double edge_prob, int max_mult, std::mt19937_64& rng) {
  CompatGraph g(static_cast<std::size_t>(n));
  std::bernoulli_distribution coin(edge_prob);
  std::uniform_int_distribution<int> mult(1, std::max(1, max_mult));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v, mult(rng));
  return g;
}

SnnInstance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_k(1, spec.max_k);
  std::uniform_int_distribution<int> pick_n(1, spec.max_labels);
  const int k = pick_k(rng);
  const int n = pick_n(rng);
  bool euclid = spec.metric == RandomMetric::euclidean;
  if (spec.metric == RandomMetric::any) euclid = std::bernoulli_distribution(0.5)(rng);

  SnnInstance inst;
  const std::size_t total = static_cast<std::size_t>(n + k);
  if (euclid) {
    const int dim = std::uniform_int_distribution<int>(1, 3)(rng);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    std::vector<std::vector<double>> pts(total, std::vector<double>(static_cast<std::size_t>(dim)));
    for (auto& p : pts)
      for (auto& x : p) x = coord(rng);
    inst.space = MetricSpace::euclidean(std::move(pts));
  } else {
    // Complete graph with random weights; the shortest-path closure is a metric.
    std::uniform_real_distribution<double> weight(0.1, 10.0);
    WeightedGraph g;
    g.n = total;
    for (std::size_t a = 0; a < total; ++a)
      for (std::size_t b = a + 1; b < total; ++b) g.edges.push_back({a, b, weight(rng)});
    const MetricSpace sp = build_graph_metric(g);
    inst.space = MetricSpace::from_matrix(sp.table(), total);
  }
  for (PointId i = 0; i < n; ++i) inst.labels.push_back(i);
  for (PointId i = 0; i < k; ++i) inst.queries.push_back(n + i);
  inst.graph = random_graph(k, spec.edge_prob, spec.max_mult, rng);
  return inst;
}

}  // namespace snn
