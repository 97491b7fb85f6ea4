#include "snn/metric.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace snn {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean:
      return "euclidean";
    case MetricKind::graph_shortest_path:
      return "graph-shortest-path";
    case MetricKind::explicit_matrix:
      return "explicit-matrix";
  }
  return "unknown";
}

MetricKind metric_kind_from_string(const std::string& s) {
  if (s == "euclidean") return MetricKind::euclidean;
  if (s == "graph-shortest-path") return MetricKind::graph_shortest_path;
  if (s == "explicit-matrix") return MetricKind::explicit_matrix;
  throw std::invalid_argument("unknown metric kind '" + s + "'");
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

MetricSpace MetricSpace::euclidean(std::vector<std::vector<double>> coords) {
  MetricSpace m;
  m.kind_ = MetricKind::euclidean;
  m.n_ = coords.size();
  m.dim_ = coords.empty() ? 0 : coords.front().size();
  m.coords_.reserve(m.n_ * m.dim_);
  for (const auto& c : coords) {
    if (c.size() != m.dim_) throw std::invalid_argument("euclidean space: inconsistent point dimension");
    for (double x : c) {
      if (!std::isfinite(x)) throw std::invalid_argument("euclidean space: non-finite coordinate");
      m.coords_.push_back(x);
    }
  }
  return m;
}

MetricSpace MetricSpace::from_matrix(std::vector<double> table, std::size_t n, MetricKind kind) {
  if (kind == MetricKind::euclidean) throw std::invalid_argument("from_matrix: euclidean kind needs coordinates");
  if (table.size() != n * n) throw std::invalid_argument("from_matrix: table is not n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(table[i * n + i]) > kDistTol) throw std::invalid_argument("from_matrix: nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = table[i * n + j];
      if (!std::isfinite(d) || d < 0.0) throw std::invalid_argument("from_matrix: negative or non-finite entry");
      if (std::abs(d - table[j * n + i]) > kDistTol) throw std::invalid_argument("from_matrix: asymmetric table");
    }
  }
  MetricSpace m;
  m.kind_ = kind;
  m.n_ = n;
  m.table_ = std::move(table);
  return m;
}

double MetricSpace::dist(PointId a, PointId b) const {
  if (!contains(a) || !contains(b)) throw std::domain_error("dist: unknown point id");
  if (kind_ == MetricKind::euclidean) {
    return euclidean_distance(coords(a), coords(b));
  }
  return table_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
}

std::span<const double> MetricSpace::coords(PointId p) const {
  if (kind_ != MetricKind::euclidean) throw std::domain_error("coords: space has no coordinates");
  if (!contains(p)) throw std::domain_error("coords: unknown point id");
  return {coords_.data() + static_cast<std::size_t>(p) * dim_, dim_};
}

MetricSpace build_graph_metric(const WeightedGraph& g) {
  const std::size_t n = g.n;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const auto& e : g.edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("graph metric: edge endpoint out of range");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) throw std::invalid_argument("graph metric: negative or non-finite weight");
    if (e.u == e.v) continue;
    d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.weight);
    d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.weight);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  }
  for (double x : d) {
    if (x == inf) throw std::domain_error("graph metric: graph is disconnected");
  }
  MetricSpace m = MetricSpace::from_matrix(std::move(d), n, MetricKind::graph_shortest_path);
  m.graph_ = g;
  return m;
}

std::optional<AxiomViolation> check_metric_axioms(const MetricSpace& space, std::size_t exhaustive_limit,
                                                  std::size_t samples, std::uint64_t seed, double tol) {
  const auto n = static_cast<PointId>(space.size());
  auto check_triple = [&](PointId a, PointId b, PointId c) -> std::optional<AxiomViolation> {
    const double ab = space.dist(a, b);
    if (ab < -tol) return AxiomViolation{a, b, c, "nonnegativity"};
    if (a == b && std::abs(ab) > tol) return AxiomViolation{a, b, c, "identity"};
    if (std::abs(ab - space.dist(b, a)) > tol) return AxiomViolation{a, b, c, "symmetry"};
    if (space.dist(a, c) > ab + space.dist(b, c) + tol) return AxiomViolation{a, b, c, "triangle"};
    return std::nullopt;
  };
  if (space.size() <= exhaustive_limit) {
    for (PointId a = 0; a < n; ++a)
      for (PointId b = 0; b < n; ++b)
        for (PointId c = 0; c < n; ++c)
          if (auto v = check_triple(a, b, c)) return v;
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<PointId> pick(0, n - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const PointId a = pick(rng), b = pick(rng), c = pick(rng);
    if (auto v = check_triple(a, b, c)) return v;
    if (auto v = check_triple(a, a, c)) return v;
  }
  return std::nullopt;
}

}  // namespace snn
