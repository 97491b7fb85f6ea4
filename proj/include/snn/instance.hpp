#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "snn/graph.hpp"
#include "snn/metric.hpp"

namespace snn {

/// One SNN query batch: labels P and queries Q (ids in `space`), the
/// compatibility graph G over query indices, and per-query / per-edge weights.
/// Empty `kappa` / `lambda` mean all ones (the unweighted case).
struct SnnInstance {
  MetricSpace space;
  std::vector<PointId> labels;
  std::vector<PointId> queries;
  CompatGraph graph;
  std::vector<double> kappa;   // per query
  std::vector<double> lambda;  // per entry of graph.edges()

  std::size_t k() const noexcept { return queries.size(); }
  double kappa_at(std::size_t i) const { return kappa.empty() ? 1.0 : kappa[i]; }
  double lambda_at(std::size_t e) const { return lambda.empty() ? 1.0 : lambda[e]; }
  bool is_weighted() const noexcept;

  /// Throws std::invalid_argument if any invariant is broken.
  void validate() const;
};

/// A labeling with its cost split into the NN and pairwise parts.
struct Assignment {
  std::vector<PointId> label_of;
  double nn_cost = 0.0;
  double pw_cost = 0.0;
  double total = 0.0;
};

/// Evaluates sum_i kappa_i d(p_i, q_i) + sum_e lambda_e * mult_e * d(p_u, p_v).
Assignment cost(const SnnInstance& inst, std::vector<PointId> labels);

/// Default limit on |allowed|^k for exhaustive enumeration.
inline constexpr double kEnumerationGuard = 1e7;
/// Default limit on table entries visited by elimination_opt.
inline constexpr double kEliminationWorkGuard = 2e10;

/// Exact optimum over `allowed` by depth-first enumeration with cost-bound
/// pruning. Among optimal labelings (within kDistTol) returns the
/// lexicographically smallest by position in `allowed`. Throws GuardExceeded
/// when |allowed|^k exceeds `guard`.
Assignment brute_force_opt(const SnnInstance& inst, std::span<const PointId> allowed,
                           double guard = kEnumerationGuard);

/// Exact optimum over `allowed` by min-sum variable elimination along a
/// min-fill order. Exponential only in the induced width, so it reaches
/// instances far beyond brute_force_opt on sparse graphs. When a factor table
/// would exceed `max_table` entries, a greedily chosen cutset of variables is
/// enumerated and the rest eliminated for each of its assignments. Throws
/// GuardExceeded when the total work (table entries visited) exceeds
/// `max_work`. Tie-breaking is not lexicographic.
Assignment elimination_opt(const SnnInstance& inst, std::span<const PointId> allowed,
                           double max_table = 4e7, double max_work = kEliminationWorkGuard);

/// Iterated conditional modes over `allowed` starting from `start`: each query
/// in turn moves to its best label given its neighbors, until no move
/// improves. Never increases the cost.
Assignment local_search(const SnnInstance& inst, std::span<const PointId> allowed, Assignment start,
                        int max_passes = 100);

/// p_hat_i = nearest(q_i) over the instance labels, in query order.
std::vector<PointId> nearest_labels(const SnnInstance& inst);

/// Sorted, deduplicated copy.
std::vector<PointId> dedup(std::vector<PointId> ids);

struct PruningReport {
  double opt_full = 0.0;
  double opt_pruned = 0.0;
  double alpha = 1.0;
  std::vector<PointId> pruned_labels;
  Assignment full;
  Assignment pruned;
};

enum class ExactMethod { enumeration, elimination };

/// alpha = Cost(Q,G,P_hat) / Cost(Q,G,P) with both optima exact.
/// When both optima are zero alpha is 1. `guard` is the enumeration guard or
/// the elimination work guard; 0 picks the method's default.
PruningReport pruning_gap(const SnnInstance& inst, ExactMethod method = ExactMethod::enumeration, double guard = 0.0);

/// Exact optimum over `allowed` with either method; `guard` as in pruning_gap.
Assignment exact_opt(const SnnInstance& inst, std::span<const PointId> allowed, ExactMethod method, double guard = 0.0);

/// Replaces the label set, keeping everything else.
SnnInstance with_labels(const SnnInstance& inst, std::vector<PointId> labels);

}  // namespace snn
