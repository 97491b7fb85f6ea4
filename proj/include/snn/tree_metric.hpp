#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace snn {

/// Random-split kd-tree over either a finite point set or an integer lattice
/// box, and the tree metric it induces.
///
/// Each split cuts the current axis interval [a, b] at a value drawn uniformly
/// from [0.6a + 0.4b, 0.4a + 0.6b]; axes cycle 0, 1, ..., skipping axes of zero
/// extent. Split values are a pure function of (seed, cell), so lattice trees
/// over {0..255}^3 are explored lazily and never materialized.
///
/// Tree distance: each tree edge weighs the diameter of its upper (parent)
/// cell, and tree_dist is the weight of the tree path between the two leaves.
/// It dominates the Euclidean distance since the path crosses the lowest
/// common cell twice.
class TreeMetric {
 public:
  struct Cell {
    std::vector<double> lo, hi;
    int next_axis = 0;
    int depth = 0;
    int node = -1;  // materialized node index (point mode)
  };

  static TreeMetric over_points(std::vector<std::vector<double>> points, std::uint64_t seed);
  static TreeMetric over_lattice(std::size_t dim, int lo, int hi, std::uint64_t seed);

  bool is_lattice() const noexcept { return lattice_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::vector<double>>& points() const noexcept { return points_; }

  Cell root() const;
  bool is_leaf(const Cell& c) const;
  /// Split axis and value of a non-leaf cell.
  std::pair<int, double> split(const Cell& c) const;
  std::pair<Cell, Cell> children(const Cell& c) const;
  /// true if x goes to the second child of c.
  bool goes_right(const Cell& c, std::span<const double> x) const;
  double diameter(const Cell& c) const;

  /// Closest label inside the cell (Euclidean); ties to the smallest point
  /// index. Point mode also reports that index, lattice mode reports -1.
  std::vector<double> nearest_in(const Cell& c, std::span<const double> q, int* index = nullptr) const;

  /// Throws std::out_of_range if a or b is not a label of the tree (a lattice
  /// point inside the box, or one of the points in point mode).
  double tree_dist(std::span<const double> a, std::span<const double> b) const;

  /// Depth of the leaf holding x.
  int leaf_depth(std::span<const double> x) const;

 private:
  struct Node {
    std::vector<double> lo, hi;
    int axis = -1;
    double split = 0.0;
    int left = -1, right = -1;
    std::size_t begin = 0, end = 0;  // range into order_
  };

  int build(std::size_t begin, std::size_t end, int next_axis, int depth);
  int choose_axis(const std::vector<double>& lo, const std::vector<double>& hi, int next_axis) const;
  double draw_split(const std::vector<double>& lo, const std::vector<double>& hi, int axis, int depth) const;
  void check_label(std::span<const double> x) const;
  Cell leaf_of(std::span<const double> x, double* path_below = nullptr, const Cell* from = nullptr) const;

  bool lattice_ = false;
  std::size_t dim_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> box_lo_, box_hi_;
  std::vector<std::vector<double>> points_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace snn
