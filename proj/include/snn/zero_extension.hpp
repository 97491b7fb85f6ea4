#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "snn/instance.hpp"
#include "snn/metric.hpp"

namespace snn {

struct ZeroExtEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

/// 0-extension: vertices 0..num_vertices-1, of which `terminals` are fixed.
/// Terminal t sits at point terminal_point[t] of `space`, which supplies the
/// terminal metric.
struct ZeroExtInstance {
  std::size_t num_vertices = 0;
  std::vector<std::size_t> terminals;       // vertex ids, ascending
  std::vector<PointId> terminal_point;      // parallel to terminals
  std::vector<ZeroExtEdge> edges;
  MetricSpace space;

  /// Index into terminals for vertex v, or -1.
  std::vector<int> terminal_index() const;
  void validate() const;
};

/// f(v) as an index into terminals.
struct ZeroExtMapping {
  std::vector<std::size_t> f;
};

/// sum over edges of w(u,v) * d(f(u), f(v)). Throws if f moves a terminal.
double zero_ext_cost(const ZeroExtInstance& z, const ZeroExtMapping& m);

/// Exact optimum by enumeration over non-terminal placements with cost-bound
/// pruning; lexicographically smallest (terminal order) among ties. Throws
/// GuardExceeded when |T|^|V\T| exceeds `guard`.
ZeroExtMapping zero_ext_exact(const ZeroExtInstance& z, double guard = kEnumerationGuard);

/// T = P (vertex t is label t), V = T plus one vertex per query (vertex
/// |P| + i for query i). Edges: every G edge instance between query vertices,
/// and one edge (q_i, p_hat_i) per query; all unit weight.
ZeroExtInstance snn_to_zero_extension(const SnnInstance& inst, const std::vector<PointId>& nn_map);

/// Query i takes the label at the terminal its vertex was mapped to.
std::vector<PointId> back_translate(const SnnInstance& inst, const ZeroExtInstance& z, const ZeroExtMapping& m);

/// Same schema family as instances, with "vertices", "terminals" as
/// [[vertex, point], ...] and "edges" as [[u, v, w], ...].
nlohmann::json zero_ext_to_json(const ZeroExtInstance& z);
ZeroExtInstance zero_ext_from_json(const nlohmann::json& j);

}  // namespace snn
