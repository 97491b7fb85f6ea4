#include "snn/tree_metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace snn {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix(h ^ splitmix(v)); }

}  // namespace

TreeMetric TreeMetric::over_points(std::vector<std::vector<double>> points, std::uint64_t seed) {
  if (points.empty()) throw std::invalid_argument("tree metric: empty point set");
  TreeMetric tm;
  tm.seed_ = seed;
  tm.dim_ = points.front().size();
  if (tm.dim_ == 0) throw std::invalid_argument("tree metric: zero-dimensional points");
  for (const auto& p : points) {
    if (p.size() != tm.dim_) throw std::invalid_argument("tree metric: inconsistent dimension");
    for (double x : p)
      if (!std::isfinite(x)) throw std::invalid_argument("tree metric: non-finite coordinate");
  }
  tm.points_ = std::move(points);
  tm.order_.resize(tm.points_.size());
  for (std::size_t i = 0; i < tm.order_.size(); ++i) tm.order_[i] = i;
  tm.build(0, tm.order_.size(), 0, 0);
  tm.box_lo_ = tm.nodes_.front().lo;
  tm.box_hi_ = tm.nodes_.front().hi;
  return tm;
}

TreeMetric TreeMetric::over_lattice(std::size_t dim, int lo, int hi, std::uint64_t seed) {
  if (dim == 0 || lo > hi) throw std::invalid_argument("tree metric: empty lattice box");
  TreeMetric tm;
  tm.lattice_ = true;
  tm.seed_ = seed;
  tm.dim_ = dim;
  tm.box_lo_.assign(dim, lo);
  tm.box_hi_.assign(dim, hi);
  return tm;
}

int TreeMetric::choose_axis(const std::vector<double>& lo, const std::vector<double>& hi, int next_axis) const {
  const int d = static_cast<int>(dim_);
  for (int step = 0; step < d; ++step) {
    const int a = (next_axis + step) % d;
    if (hi[static_cast<std::size_t>(a)] > lo[static_cast<std::size_t>(a)]) return a;
  }
  return -1;
}

double TreeMetric::draw_split(const std::vector<double>& lo, const std::vector<double>& hi, int axis, int depth) const {
  std::uint64_t h = mix(seed_, static_cast<std::uint64_t>(depth));
  h = mix(h, static_cast<std::uint64_t>(axis));
  for (std::size_t i = 0; i < dim_; ++i) {
    h = mix(h, std::bit_cast<std::uint64_t>(lo[i]));
    h = mix(h, std::bit_cast<std::uint64_t>(hi[i]));
  }
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  const double a = lo[static_cast<std::size_t>(axis)], b = hi[static_cast<std::size_t>(axis)];
  const double band_lo = 0.6 * a + 0.4 * b, band_hi = 0.4 * a + 0.6 * b;
  return band_lo + u * (band_hi - band_lo);
}

int TreeMetric::build(std::size_t begin, std::size_t end, int next_axis, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  std::vector<double> lo(dim_, std::numeric_limits<double>::infinity()), hi(dim_, -std::numeric_limits<double>::infinity());
  for (std::size_t i = begin; i < end; ++i) {
    for (std::size_t a = 0; a < dim_; ++a) {
      lo[a] = std::min(lo[a], points_[order_[i]][a]);
      hi[a] = std::max(hi[a], points_[order_[i]][a]);
    }
  }
  const int axis = choose_axis(lo, hi, next_axis);
  {
    auto& n = nodes_[static_cast<std::size_t>(id)];
    n.lo = lo;
    n.hi = hi;
    n.begin = begin;
    n.end = end;
  }
  if (axis < 0) return id;
  const double s = draw_split(lo, hi, axis, depth);
  const auto mid_it = std::stable_partition(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                                            order_.begin() + static_cast<std::ptrdiff_t>(end),
                                            [&](std::size_t p) { return points_[p][static_cast<std::size_t>(axis)] <= s; });
  const auto mid = static_cast<std::size_t>(mid_it - order_.begin());
  const int next = (axis + 1) % static_cast<int>(dim_);
  const int left = build(begin, mid, next, depth + 1);
  const int right = build(mid, end, next, depth + 1);
  auto& n = nodes_[static_cast<std::size_t>(id)];
  n.axis = axis;
  n.split = s;
  n.left = left;
  n.right = right;
  return id;
}

TreeMetric::Cell TreeMetric::root() const {
  Cell c;
  c.lo = box_lo_;
  c.hi = box_hi_;
  c.next_axis = 0;
  c.depth = 0;
  c.node = lattice_ ? -1 : 0;
  return c;
}

bool TreeMetric::is_leaf(const Cell& c) const {
  if (!lattice_) return nodes_[static_cast<std::size_t>(c.node)].axis < 0;
  for (std::size_t a = 0; a < dim_; ++a)
    if (c.hi[a] > c.lo[a]) return false;
  return true;
}

std::pair<int, double> TreeMetric::split(const Cell& c) const {
  if (!lattice_) {
    const auto& n = nodes_[static_cast<std::size_t>(c.node)];
    return {n.axis, n.split};
  }
  const int axis = choose_axis(c.lo, c.hi, c.next_axis);
  if (axis < 0) throw std::logic_error("tree metric: leaf cell has no split");
  return {axis, draw_split(c.lo, c.hi, axis, c.depth)};
}

std::pair<TreeMetric::Cell, TreeMetric::Cell> TreeMetric::children(const Cell& c) const {
  if (!lattice_) {
    const auto& n = nodes_[static_cast<std::size_t>(c.node)];
    if (n.axis < 0) throw std::logic_error("tree metric: leaf cell has no children");
    auto make = [&](int id) {
      const auto& m = nodes_[static_cast<std::size_t>(id)];
      return Cell{m.lo, m.hi, (n.axis + 1) % static_cast<int>(dim_), c.depth + 1, id};
    };
    return {make(n.left), make(n.right)};
  }
  const auto [axis, s] = split(c);
  const auto ax = static_cast<std::size_t>(axis);
  Cell left = c, right = c;
  left.hi[ax] = std::floor(s);
  right.lo[ax] = std::floor(s) + 1.0;
  left.next_axis = right.next_axis = (axis + 1) % static_cast<int>(dim_);
  left.depth = right.depth = c.depth + 1;
  return {left, right};
}

bool TreeMetric::goes_right(const Cell& c, std::span<const double> x) const {
  const auto [axis, s] = split(c);
  return x[static_cast<std::size_t>(axis)] > s;
}

double TreeMetric::diameter(const Cell& c) const {
  double s = 0.0;
  for (std::size_t a = 0; a < dim_; ++a) s += (c.hi[a] - c.lo[a]) * (c.hi[a] - c.lo[a]);
  return std::sqrt(s);
}

std::vector<double> TreeMetric::nearest_in(const Cell& c, std::span<const double> q, int* index) const {
  if (q.size() != dim_) throw std::invalid_argument("tree metric: query dimension mismatch");
  if (lattice_) {
    std::vector<double> out(dim_);
    for (std::size_t a = 0; a < dim_; ++a) out[a] = std::clamp(std::ceil(q[a] - 0.5), c.lo[a], c.hi[a]);
    if (index) *index = -1;
    return out;
  }
  const auto& n = nodes_[static_cast<std::size_t>(c.node)];
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = n.begin; i < n.end; ++i) {
    const std::size_t p = order_[i];
    double s = 0.0;
    for (std::size_t a = 0; a < dim_; ++a) {
      const double d = q[a] - points_[p][a];
      s += d * d;
    }
    if (s < best_d || (s == best_d && p < best)) {
      best_d = s;
      best = p;
    }
  }
  if (index) *index = static_cast<int>(best);
  return points_[best];
}

void TreeMetric::check_label(std::span<const double> x) const {
  if (x.size() != dim_) throw std::out_of_range("tree metric: point dimension mismatch");
  for (std::size_t a = 0; a < dim_; ++a) {
    if (!(x[a] >= box_lo_[a] && x[a] <= box_hi_[a])) throw std::out_of_range("tree metric: point outside the root box");
    if (lattice_ && x[a] != std::floor(x[a])) throw std::out_of_range("tree metric: point is not a lattice point");
  }
  if (!lattice_) {
    const Cell leaf = leaf_of(x);
    const auto& n = nodes_[static_cast<std::size_t>(leaf.node)];
    const auto& p = points_[order_[n.begin]];
    if (!std::equal(p.begin(), p.end(), x.begin())) throw std::out_of_range("tree metric: point is not in the tree");
  }
}

TreeMetric::Cell TreeMetric::leaf_of(std::span<const double> x, double* path_below, const Cell* from) const {
  Cell c = from ? *from : root();
  double sum = 0.0;
  while (!is_leaf(c)) {
    sum += diameter(c);
    auto [l, r] = children(c);
    c = goes_right(c, x) ? std::move(r) : std::move(l);
  }
  if (path_below) *path_below = sum;
  return c;
}

double TreeMetric::tree_dist(std::span<const double> a, std::span<const double> b) const {
  check_label(a);
  check_label(b);
  Cell c = root();
  while (!is_leaf(c)) {
    const bool ra = goes_right(c, a), rb = goes_right(c, b);
    auto [l, r] = children(c);
    if (ra == rb) {
      c = ra ? std::move(r) : std::move(l);
      continue;
    }
    double below_a = 0.0, below_b = 0.0;
    leaf_of(a, &below_a, ra ? &r : &l);
    leaf_of(b, &below_b, rb ? &r : &l);
    return 2.0 * diameter(c) + below_a + below_b;
  }
  return 0.0;
}

int TreeMetric::leaf_depth(std::span<const double> x) const { return leaf_of(x).depth; }

}  // namespace snn
