#pragma once

#include <vector>

#include "snn/graph.hpp"
#include "snn/instance.hpp"

namespace snn {

/// Per-query record of the designated-neighbor choice.
struct DesignatedNeighbor {
  /// Candidates in order: the query itself, then its distinct graph
  /// neighbors ascending.
  std::vector<VertexId> candidates;
  /// d(p*_i, p*_j) + d(p*_j, q_j) per candidate.
  std::vector<double> scores;
  /// Index into candidates of the minimum score (smallest index on ties).
  std::size_t chosen = 0;
};

struct SparseAssignResult {
  Assignment assignment;
  std::vector<DesignatedNeighbor> trace;
};

/// Maps a reference labeling (normally the optimum over P) onto the pruned
/// labels: query i takes nn_map[c] where c is its designated neighbor, the
/// candidate minimizing d(p*_i, p*_c) + d(p*_c, q_c).
SparseAssignResult sparse_assign(const SnnInstance& inst, const Assignment& optimal,
                                 const std::vector<PointId>& nn_map);

/// Aggregate-NN solver for graphs with a bounded orientation. Query i takes
///   argmin_p d(q_i, p) + sum over instances (i, j) owned by j of d(p, q_j) / (r + 1)
/// with r = orientation.r. Unweighted instances only.
Assignment rplus_solve(const SnnInstance& inst, const Orientation& orientation);

}  // namespace snn
