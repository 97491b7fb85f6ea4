#include "snn/nn_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace snn {

namespace {
constexpr std::size_t kLeafSize = 8;

bool better(double d, PointId id, double best_d, PointId best) {
  return d < best_d || (d == best_d && id < best);
}
}  // namespace

NnIndex::NnIndex(const MetricSpace& space, std::vector<PointId> points)
    : space_(&space), points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("NnIndex: empty point set");
  for (PointId p : points_) {
    if (!space.contains(p)) throw std::domain_error("NnIndex: point not in space");
  }
  if (space.kind() == MetricKind::euclidean && space.dim() > 0) {
    order_ = points_;
    build_node(0, order_.size());
  }
}

int NnIndex::build_node(std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  if (end - begin <= kLeafSize) {
    nodes_[static_cast<std::size_t>(id)].begin = begin;
    nodes_[static_cast<std::size_t>(id)].end = end;
    return id;
  }
  // Split on the axis of largest spread at the median.
  const std::size_t dim = space_->dim();
  int axis = 0;
  double spread = -1.0;
  for (std::size_t a = 0; a < dim; ++a) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = begin; i < end; ++i) {
      const double x = space_->coords(order_[i])[a];
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (hi - lo > spread) {
      spread = hi - lo;
      axis = static_cast<int>(a);
    }
  }
  if (spread <= 0.0) {
    nodes_[static_cast<std::size_t>(id)].begin = begin;
    nodes_[static_cast<std::size_t>(id)].end = end;
    return id;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  auto key = [&](PointId p) { return space_->coords(p)[static_cast<std::size_t>(axis)]; };
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end), [&](PointId a, PointId b) { return key(a) < key(b); });
  const double split = key(order_[mid]);
  const int left = build_node(begin, mid);
  const int right = build_node(mid, end);
  auto& n = nodes_[static_cast<std::size_t>(id)];
  n.axis = axis;
  n.split = split;
  n.left = left;
  n.right = right;
  return id;
}

void NnIndex::search(int node, std::span<const double> q, double& best_d, PointId& best) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  if (n.axis < 0) {
    for (std::size_t i = n.begin; i < n.end; ++i) {
      const PointId p = order_[i];
      const double d = euclidean_distance(q, space_->coords(p));
      if (better(d, p, best_d, best)) {
        best_d = d;
        best = p;
      }
    }
    return;
  }
  // Left holds coords <= split, right holds coords >= split.
  const double diff = q[static_cast<std::size_t>(n.axis)] - n.split;
  const int near = diff <= 0.0 ? n.left : n.right;
  const int far = diff <= 0.0 ? n.right : n.left;
  search(near, q, best_d, best);
  if (std::abs(diff) <= best_d) search(far, q, best_d, best);
}

PointId NnIndex::nearest(PointId q) const {
  if (!space_->contains(q)) throw std::domain_error("nearest: query not in space");
  if (has_kd_tree()) return nearest_to_coords(space_->coords(q));
  PointId best = points_.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (PointId p : points_) {
    const double d = space_->dist(q, p);
    if (better(d, p, best_d, best)) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

PointId NnIndex::nearest_to_coords(std::span<const double> q) const {
  if (space_->kind() != MetricKind::euclidean) throw std::domain_error("nearest_to_coords: space is not euclidean");
  if (q.size() != space_->dim()) throw std::invalid_argument("nearest_to_coords: dimension mismatch");
  PointId best = std::numeric_limits<PointId>::max();
  double best_d = std::numeric_limits<double>::infinity();
  if (has_kd_tree()) {
    search(0, q, best_d, best);
  } else {
    for (PointId p : points_) {
      const double d = euclidean_distance(q, space_->coords(p));
      if (better(d, p, best_d, best)) {
        best_d = d;
        best = p;
      }
    }
  }
  return best;
}

PointId NnIndex::aggregate_nearest(PointId q, std::span<const Anchor> anchors) const {
  if (!space_->contains(q)) throw std::domain_error("aggregate_nearest: query not in space");
  for (const auto& a : anchors) {
    if (!(a.weight >= 0.0)) throw std::invalid_argument("aggregate_nearest: negative anchor weight");
    if (!space_->contains(a.point)) throw std::domain_error("aggregate_nearest: anchor not in space");
  }
  PointId best = std::numeric_limits<PointId>::max();
  double best_score = std::numeric_limits<double>::infinity();
  for (PointId p : points_) {
    double score = space_->dist(q, p);
    for (const auto& a : anchors) score += a.weight * space_->dist(p, a.point);
    if (better(score, p, best_score, best)) {
      best_score = score;
      best = p;
    }
  }
  return best;
}

LatticeIndex::LatticeIndex(std::size_t dim, int lo, int hi) : dim_(dim), lo_(lo), hi_(hi) {
  if (dim == 0 || lo > hi) throw std::invalid_argument("LatticeIndex: empty lattice");
}

std::vector<double> LatticeIndex::nearest(std::span<const double> q) const {
  if (q.size() != dim_) throw std::invalid_argument("LatticeIndex: dimension mismatch");
  std::vector<double> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    // ceil(x - 0.5) rounds exact halves down.
    double r = std::ceil(q[i] - 0.5);
    out[i] = std::clamp(r, static_cast<double>(lo_), static_cast<double>(hi_));
  }
  return out;
}

double LatticeIndex::size() const noexcept {
  return std::pow(static_cast<double>(hi_ - lo_ + 1), static_cast<double>(dim_));
}

}  // namespace snn
