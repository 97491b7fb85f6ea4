#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace snn {

using PointId = std::int32_t;

/// Absolute tolerance used for distance comparisons throughout the library.
inline constexpr double kDistTol = 1e-9;

enum class MetricKind { euclidean, graph_shortest_path, explicit_matrix };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& s);

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

struct WeightedGraph {
  std::size_t n = 0;
  std::vector<WeightedEdge> edges;
};

/// A finite universe of points 0..size()-1 together with a distance oracle.
///
/// Euclidean spaces keep coordinates and compute distances on demand; graph and
/// matrix spaces store the full symmetric distance table. Immutable once built.
class MetricSpace {
 public:
  MetricSpace() = default;

  static MetricSpace euclidean(std::vector<std::vector<double>> coords);
  /// Row-major n x n table. Validated for shape, symmetry, zero diagonal and
  /// nonnegativity; the triangle inequality is checked separately.
  static MetricSpace from_matrix(std::vector<double> table, std::size_t n,
                                 MetricKind kind = MetricKind::explicit_matrix);

  double dist(PointId a, PointId b) const;

  MetricKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return n_; }
  /// Coordinate dimension; 0 for non-Euclidean spaces.
  std::size_t dim() const noexcept { return dim_; }
  bool contains(PointId p) const noexcept { return p >= 0 && static_cast<std::size_t>(p) < n_; }

  std::span<const double> coords(PointId p) const;
  /// The full table (empty for Euclidean spaces).
  const std::vector<double>& table() const noexcept { return table_; }
  /// Source graph for graph_shortest_path spaces, kept for serialization.
  const std::optional<WeightedGraph>& source_graph() const noexcept { return graph_; }

 private:
  friend MetricSpace build_graph_metric(const WeightedGraph& g);

  MetricKind kind_ = MetricKind::explicit_matrix;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;  // n_ * dim_
  std::vector<double> table_;   // n_ * n_
  std::optional<WeightedGraph> graph_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// All-pairs shortest paths (Floyd-Warshall). Throws on a disconnected graph
/// or a negative weight.
MetricSpace build_graph_metric(const WeightedGraph& g);

struct AxiomViolation {
  PointId a = 0, b = 0, c = 0;
  std::string axiom;
};

/// Checks identity, symmetry, nonnegativity and the triangle inequality.
/// Exhaustive over all triples when size() <= exhaustive_limit, otherwise over
/// `samples` random triples drawn with `seed`.
std::optional<AxiomViolation> check_metric_axioms(const MetricSpace& space,
                                                  std::size_t exhaustive_limit = 64,
                                                  std::size_t samples = 200000,
                                                  std::uint64_t seed = 42,
                                                  double tol = kDistTol);

}  // namespace snn
