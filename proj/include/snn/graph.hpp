#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace snn {

using VertexId = std::int32_t;

/// An undirected edge with multiplicity. `mult` parallel copies behave as
/// independent edge instances for costs and orientation.
struct CompatEdge {
  VertexId u = 0;
  VertexId v = 0;
  int mult = 1;
};

/// Compatibility multigraph over query indices 0..n-1. No self-loops.
class CompatGraph {
 public:
  CompatGraph() = default;
  explicit CompatGraph(std::size_t n) : n_(n) {}
  CompatGraph(std::size_t n, std::vector<CompatEdge> edges);

  void add_edge(VertexId u, VertexId v, int mult = 1);

  std::size_t num_vertices() const noexcept { return n_; }
  const std::vector<CompatEdge>& edges() const noexcept { return edges_; }
  /// Total number of edge instances (sum of multiplicities).
  std::size_t num_instances() const noexcept;

  /// Edge instances expanded in edge order, copy by copy.
  std::vector<std::pair<VertexId, VertexId>> instances() const;

  /// Distinct neighbors of v, ascending.
  std::vector<VertexId> neighbors(VertexId v) const;

  /// For each vertex, the indices into edges() touching it.
  std::vector<std::vector<std::size_t>> incidence() const;

  /// Degree counting multiplicity.
  std::vector<int> degrees() const;

 private:
  std::size_t n_ = 0;
  std::vector<CompatEdge> edges_;
};

/// Assigns every edge instance (in CompatGraph::instances() order) to one of
/// its endpoints, its owner. The owned set of v is C(v).
struct Orientation {
  std::vector<VertexId> owner;
  /// Max number of instances owned by any vertex.
  int r = 0;

  /// Per-vertex owned instance counts.
  std::vector<int> out_degrees(std::size_t n) const;
  /// True when every instance is owned by one of its endpoints and r is exact.
  bool valid_for(const CompatGraph& g) const;
};

/// Greedy minimum-degree peeling: each instance is owned by whichever endpoint
/// is peeled first, so the achieved r is at most the degeneracy.
Orientation orient_edges(const CompatGraph& g);

/// Degeneracy (max over the peeling order of the degree at removal time).
int degeneracy(const CompatGraph& g);

/// Minimum achievable max out-degree by exhaustive search over all owner
/// assignments. Throws std::length_error above `max_instances` instances.
int exact_pseudoarboricity(const CompatGraph& g, std::size_t max_instances = 16);

/// 4-connected w x h grid, vertex (x, y) has index y * w + x.
CompatGraph grid_graph(int w, int h);

/// Uniform-ish random simple d-regular connected graph via the pairing model,
/// retried until simple and connected. Throws on k*d odd or d >= k.
CompatGraph random_regular_graph(int k, int d, std::mt19937_64& rng, int max_attempts = 100000);

bool is_connected(const CompatGraph& g);

}  // namespace snn
