#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "snn/metric.hpp"

namespace snn {

struct Anchor {
  PointId point = 0;
  double weight = 0.0;
};

/// Exact nearest-neighbor index over a label set P inside a MetricSpace.
///
/// Euclidean spaces get a kd-tree; other spaces use a linear scan. The index
/// keeps a pointer to the space, which must outlive it. Ties are always broken
/// toward the smallest point id, so results equal a linear-scan argmin exactly.
class NnIndex {
 public:
  NnIndex(const MetricSpace& space, std::vector<PointId> points);

  PointId nearest(PointId q) const;
  /// Nearest label to an arbitrary coordinate vector (Euclidean only).
  PointId nearest_to_coords(std::span<const double> q) const;

  /// argmin over P of dist(q, p) + sum_j w_j * dist(p, anchor_j). Linear scan.
  PointId aggregate_nearest(PointId q, std::span<const Anchor> anchors) const;

  const MetricSpace& space() const noexcept { return *space_; }
  const std::vector<PointId>& points() const noexcept { return points_; }
  bool has_kd_tree() const noexcept { return !nodes_.empty(); }

 private:
  struct Node {
    int axis = -1;  // -1 for leaf
    double split = 0.0;
    std::size_t begin = 0, end = 0;  // range into order_ for leaves
    int left = -1, right = -1;
  };

  int build_node(std::size_t begin, std::size_t end);
  void search(int node, std::span<const double> q, double& best_d, PointId& best) const;

  const MetricSpace* space_;
  std::vector<PointId> points_;
  std::vector<PointId> order_;  // kd-tree permutation of points_
  std::vector<Node> nodes_;
};

/// Exact NN over the integer lattice {lo..hi}^d without materializing it.
/// The nearest lattice point is the per-coordinate round-and-clamp; exact
/// half-way ties round down (the smaller lattice point).
class LatticeIndex {
 public:
  LatticeIndex(std::size_t dim, int lo, int hi);

  std::vector<double> nearest(std::span<const double> q) const;
  std::size_t dim() const noexcept { return dim_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  /// Number of lattice points, (hi - lo + 1)^dim.
  double size() const noexcept;

 private:
  std::size_t dim_;
  int lo_, hi_;
};

}  // namespace snn
