#include "snn/sparse_solver.hpp"

#include <map>
#include <stdexcept>

#include "snn/nn_index.hpp"

namespace snn {

SparseAssignResult sparse_assign(const SnnInstance& inst, const Assignment& optimal,
                                 const std::vector<PointId>& nn_map) {
  const std::size_t k = inst.k();
  if (optimal.label_of.size() != k || nn_map.size() != k) {
    throw std::invalid_argument("sparse_assign: labeling sizes differ from the query count");
  }
  SparseAssignResult out;
  out.trace.resize(k);
  std::vector<PointId> labels(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto& t = out.trace[i];
    t.candidates.push_back(static_cast<VertexId>(i));
    for (VertexId j : inst.graph.neighbors(static_cast<VertexId>(i))) t.candidates.push_back(j);
    const PointId star_i = optimal.label_of[i];
    for (std::size_t l = 0; l < t.candidates.size(); ++l) {
      const auto j = static_cast<std::size_t>(t.candidates[l]);
      const PointId star_j = optimal.label_of[j];
      t.scores.push_back(inst.space.dist(star_i, star_j) + inst.space.dist(star_j, inst.queries[j]));
      if (t.scores[l] < t.scores[t.chosen]) t.chosen = l;
    }
    labels[i] = nn_map[static_cast<std::size_t>(t.candidates[t.chosen])];
  }
  out.assignment = cost(inst, std::move(labels));
  return out;
}

Assignment rplus_solve(const SnnInstance& inst, const Orientation& orientation) {
  inst.validate();
  if (inst.is_weighted()) throw std::invalid_argument("rplus_solve: only the unweighted case is supported");
  if (!orientation.valid_for(inst.graph)) throw std::invalid_argument("rplus_solve: orientation does not match the graph");

  const std::size_t k = inst.k();
  const double w = 1.0 / (orientation.r + 1.0);
  // anchor_count[i][j]: instances (i, j) owned by j.
  std::vector<std::map<VertexId, int>> anchor_count(k);
  const auto inst_edges = inst.graph.instances();
  for (std::size_t e = 0; e < inst_edges.size(); ++e) {
    const auto [u, v] = inst_edges[e];
    const VertexId owner = orientation.owner[e];
    const VertexId other = owner == u ? v : u;
    ++anchor_count[static_cast<std::size_t>(other)][owner];
  }
  const NnIndex index(inst.space, inst.labels);
  std::vector<PointId> labels(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Anchor> anchors;
    for (const auto& [j, count] : anchor_count[i]) {
      anchors.push_back({inst.queries[static_cast<std::size_t>(j)], count * w});
    }
    labels[i] = index.aggregate_nearest(inst.queries[i], anchors);
  }
  return cost(inst, std::move(labels));
}

}  // namespace snn
