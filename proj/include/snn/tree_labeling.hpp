#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "snn/graph.hpp"
#include "snn/instance.hpp"
#include "snn/tree_metric.hpp"

namespace snn {

struct TreeLabelingOptions {
  /// Cap on swap passes per tree level.
  int max_passes = 20;
};

struct TreeLabeling {
  std::vector<std::vector<double>> labels;  // chosen label coordinates per query
  std::vector<int> label_index;             // point-mode tree index per query, -1 on lattices
  double nn_cost = 0.0;
  double pw_cost = 0.0;
  double total = 0.0;
  int levels = 0;
  int passes = 0;
  /// Total cost after each level's greedy child assignment, followed by the
  /// cost after each of that level's swap passes. Never increases within a
  /// level.
  std::vector<double> pass_costs;
  /// Index into pass_costs where each level's passes begin.
  std::vector<std::size_t> level_starts;
};

/// Top-down labeling on a random-split kd-tree. Every query starts in the
/// root cell with label nearest_in(cell, q). Level by level, each query in a
/// non-leaf cell chooses one of the two child cells (taking the nearest label
/// inside it) by greedy assignment followed by pairwise swap passes: a query
/// switches child when that lowers
///   kappa_i |q_i - x| + sum_j lambda_ij |x - label_j|.
/// Passes stop when nothing switches or after options.max_passes. The seed
/// fixes the sweep order. Costs are Euclidean.
TreeLabeling tree_labeling(const TreeMetric& tm, const std::vector<std::vector<double>>& queries,
                           const CompatGraph& graph, std::uint64_t seed, std::span<const double> kappa = {},
                           std::span<const double> lambda = {}, const TreeLabelingOptions& options = {});

/// Runs tree_labeling on a euclidean instance. `tm` must be a point-mode tree
/// built over the coordinates of inst.labels, in order.
Assignment tree_labeling_solve(const SnnInstance& inst, const TreeMetric& tm, std::uint64_t seed,
                               const TreeLabelingOptions& options = {});

/// Builds the point-mode tree over inst.labels with `seed`, then solves.
Assignment tree_labeling_solve(const SnnInstance& inst, std::uint64_t seed, const TreeLabelingOptions& options = {});

}  // namespace snn
