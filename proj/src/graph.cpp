#include "snn/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace snn {

CompatGraph::CompatGraph(std::size_t n, std::vector<CompatEdge> edges) : n_(n) {
  for (const auto& e : edges) add_edge(e.u, e.v, e.mult);
}

void CompatGraph::add_edge(VertexId u, VertexId v, int mult) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_) {
    throw std::invalid_argument("compat graph: vertex index out of range");
  }
  if (u == v) throw std::invalid_argument("compat graph: self-loop");
  if (mult < 1) throw std::invalid_argument("compat graph: multiplicity must be >= 1");
  edges_.push_back({u, v, mult});
}

std::size_t CompatGraph::num_instances() const noexcept {
  std::size_t m = 0;
  for (const auto& e : edges_) m += static_cast<std::size_t>(e.mult);
  return m;
}

std::vector<std::pair<VertexId, VertexId>> CompatGraph::instances() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(num_instances());
  for (const auto& e : edges_)
    for (int c = 0; c < e.mult; ++c) out.emplace_back(e.u, e.v);
  return out;
}

std::vector<VertexId> CompatGraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (const auto& e : edges_) {
    if (e.u == v) out.push_back(e.v);
    if (e.v == v) out.push_back(e.u);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> CompatGraph::incidence() const {
  std::vector<std::vector<std::size_t>> inc(n_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    inc[static_cast<std::size_t>(edges_[i].u)].push_back(i);
    inc[static_cast<std::size_t>(edges_[i].v)].push_back(i);
  }
  return inc;
}

std::vector<int> CompatGraph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const auto& e : edges_) {
    deg[static_cast<std::size_t>(e.u)] += e.mult;
    deg[static_cast<std::size_t>(e.v)] += e.mult;
  }
  return deg;
}

std::vector<int> Orientation::out_degrees(std::size_t n) const {
  std::vector<int> out(n, 0);
  for (VertexId o : owner) ++out[static_cast<std::size_t>(o)];
  return out;
}

bool Orientation::valid_for(const CompatGraph& g) const {
  const auto inst = g.instances();
  if (inst.size() != owner.size()) return false;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (owner[i] != inst[i].first && owner[i] != inst[i].second) return false;
  }
  const auto out = out_degrees(g.num_vertices());
  const int max_out = out.empty() ? 0 : *std::max_element(out.begin(), out.end());
  return max_out == r;
}

namespace {

// Peeling order by repeatedly removing a minimum-degree vertex (smallest id on
// ties). Returns the removal position of each vertex and the degeneracy.
std::pair<std::vector<int>, int> peel(const CompatGraph& g) {
  const std::size_t n = g.num_vertices();
  auto deg = g.degrees();
  const auto inc = g.incidence();
  std::set<std::pair<int, VertexId>> queue;
  for (std::size_t v = 0; v < n; ++v) queue.emplace(deg[v], static_cast<VertexId>(v));
  std::vector<int> position(n, -1);
  int degen = 0;
  for (int step = 0; !queue.empty(); ++step) {
    const auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    position[static_cast<std::size_t>(v)] = step;
    degen = std::max(degen, d);
    for (std::size_t ei : inc[static_cast<std::size_t>(v)]) {
      const auto& e = g.edges()[ei];
      const VertexId w = e.u == v ? e.v : e.u;
      if (position[static_cast<std::size_t>(w)] >= 0) continue;
      queue.erase({deg[static_cast<std::size_t>(w)], w});
      deg[static_cast<std::size_t>(w)] -= e.mult;
      queue.emplace(deg[static_cast<std::size_t>(w)], w);
    }
  }
  return {std::move(position), degen};
}

}  // namespace

Orientation orient_edges(const CompatGraph& g) {
  const auto [position, degen] = peel(g);
  (void)degen;
  Orientation o;
  o.owner.reserve(g.num_instances());
  for (const auto& e : g.edges()) {
    const VertexId first =
        position[static_cast<std::size_t>(e.u)] < position[static_cast<std::size_t>(e.v)] ? e.u : e.v;
    for (int c = 0; c < e.mult; ++c) o.owner.push_back(first);
  }
  const auto out = o.out_degrees(g.num_vertices());
  o.r = out.empty() ? 0 : *std::max_element(out.begin(), out.end());
  return o;
}

int degeneracy(const CompatGraph& g) { return peel(g).second; }

int exact_pseudoarboricity(const CompatGraph& g, std::size_t max_instances) {
  const auto inst = g.instances();
  if (inst.size() > max_instances) throw std::length_error("exact_pseudoarboricity: too many edge instances");
  const std::size_t m = inst.size();
  int best = static_cast<int>(m);
  std::vector<int> out(g.num_vertices());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::fill(out.begin(), out.end(), 0);
    int worst = 0;
    for (std::size_t i = 0; i < m && worst < best; ++i) {
      const VertexId o = (mask >> i) & 1U ? inst[i].second : inst[i].first;
      worst = std::max(worst, ++out[static_cast<std::size_t>(o)]);
    }
    best = std::min(best, worst);
  }
  return best;
}

CompatGraph grid_graph(int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("grid_graph: dimensions must be >= 1");
  CompatGraph g(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const VertexId v = y * w + x;
      if (x + 1 < w) g.add_edge(v, v + 1);
      if (y + 1 < h) g.add_edge(v, v + w);
    }
  }
  return g;
}

bool is_connected(const CompatGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& e : g.edges()) {
    const auto a = find(static_cast<std::size_t>(e.u)), b = find(static_cast<std::size_t>(e.v));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

CompatGraph random_regular_graph(int k, int d, std::mt19937_64& rng, int max_attempts) {
  if (k < 1 || d < 1 || d >= k) throw std::invalid_argument("random_regular_graph: need 1 <= d < k");
  if ((static_cast<long long>(k) * d) % 2 != 0) throw std::invalid_argument("random_regular_graph: k*d must be even");
  std::vector<VertexId> stubs;
  stubs.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(d));
  for (VertexId v = 0; v < k; ++v)
    for (int c = 0; c < d; ++c) stubs.push_back(v);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<VertexId, VertexId>> seen;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      auto a = stubs[i], b = stubs[i + 1];
      if (a == b) simple = false;
      if (a > b) std::swap(a, b);
      if (!seen.emplace(a, b).second) simple = false;
    }
    if (!simple) continue;
    CompatGraph g(static_cast<std::size_t>(k));
    for (const auto& [a, b] : seen) g.add_edge(a, b);
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("random_regular_graph: no simple connected pairing found");
}

}  // namespace snn
