#include "snn/tree_labeling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "snn/metric.hpp"

namespace snn {

namespace {

constexpr double kImprove = 1e-12;

void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

TreeLabeling tree_labeling(const TreeMetric& tm, const std::vector<std::vector<double>>& queries,
                           const CompatGraph& graph, std::uint64_t seed, std::span<const double> kappa,
                           std::span<const double> lambda, const TreeLabelingOptions& options) {
  const std::size_t n = queries.size();
  const std::size_t D = tm.dim();
  if (graph.num_vertices() != n) throw std::invalid_argument("tree_labeling: graph size differs from query count");
  if (!kappa.empty() && kappa.size() != n) throw std::invalid_argument("tree_labeling: kappa length mismatch");
  if (!lambda.empty() && lambda.size() != graph.edges().size()) throw std::invalid_argument("tree_labeling: lambda length mismatch");
  for (const auto& q : queries)
    if (q.size() != D) throw std::invalid_argument("tree_labeling: query dimension differs from the tree");

  std::vector<std::vector<std::pair<std::size_t, double>>> nbr(n);
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    const double w = (lambda.empty() ? 1.0 : lambda[e]) * edge.mult;
    nbr[static_cast<std::size_t>(edge.u)].emplace_back(static_cast<std::size_t>(edge.v), w);
    nbr[static_cast<std::size_t>(edge.v)].emplace_back(static_cast<std::size_t>(edge.u), w);
  }
  auto kap = [&](std::size_t i) { return kappa.empty() ? 1.0 : kappa[i]; };

  TreeLabeling out;
  std::vector<double> label(n * D);
  out.label_index.assign(n, -1);
  auto label_of = [&](std::size_t i) { return std::span<const double>(label.data() + i * D, D); };
  auto set_label = [&](std::size_t i, std::span<const double> x) { std::copy(x.begin(), x.end(), label.begin() + static_cast<std::ptrdiff_t>(i * D)); };

  std::vector<TreeMetric::Cell> cells{tm.root()};
  std::vector<std::size_t> cell_of(n, 0);
  for (std::size_t i = 0; i < n; ++i) set_label(i, tm.nearest_in(cells[0], queries[i], &out.label_index[i]));

  auto local = [&](std::size_t i, std::span<const double> x) {
    double c = kap(i) * euclidean_distance(queries[i], x);
    for (const auto& [j, w] : nbr[i]) c += w * euclidean_distance(x, label_of(j));
    return c;
  };
  auto total = [&]() {
    double nn = 0.0, pw = 0.0;
    for (std::size_t i = 0; i < n; ++i) nn += kap(i) * euclidean_distance(queries[i], label_of(i));
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
      const auto& edge = graph.edges()[e];
      pw += (lambda.empty() ? 1.0 : lambda[e]) * edge.mult *
            euclidean_distance(label_of(static_cast<std::size_t>(edge.u)), label_of(static_cast<std::size_t>(edge.v)));
    }
    return std::pair{nn, pw};
  };

  std::mt19937_64 rng(seed);
  while (true) {
    // Children of every occupied non-leaf cell.
    std::vector<bool> leaf(cells.size());
    std::vector<std::pair<TreeMetric::Cell, TreeMetric::Cell>> kids(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      leaf[c] = tm.is_leaf(cells[c]);
      if (!leaf[c]) kids[c] = tm.children(cells[c]);
    }
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i)
      if (!leaf[cell_of[i]]) active.push_back(i);
    if (active.empty()) break;
    ++out.levels;

    // Nearest label of each active query inside both child cells.
    std::vector<double> cand(n * 2 * D);
    std::vector<int> cand_index(n * 2, -1);
    std::vector<int> side(n, 0);
    for (std::size_t i : active) {
      for (int s = 0; s < 2; ++s) {
        int idx = -1;
        const auto& kid = s == 0 ? kids[cell_of[i]].first : kids[cell_of[i]].second;
        const auto x = tm.nearest_in(kid, queries[i], &idx);
        std::copy(x.begin(), x.end(), cand.begin() + static_cast<std::ptrdiff_t>((i * 2 + static_cast<std::size_t>(s)) * D));
        cand_index[i * 2 + static_cast<std::size_t>(s)] = idx;
      }
    }
    auto cand_of = [&](std::size_t i, int s) {
      return std::span<const double>(cand.data() + (i * 2 + static_cast<std::size_t>(s)) * D, D);
    };

    std::vector<std::size_t> order = active;
    shuffle(order, rng);
    for (std::size_t i : order) {
      const double c0 = local(i, cand_of(i, 0)), c1 = local(i, cand_of(i, 1));
      side[i] = c1 < c0 - kImprove ? 1 : 0;
      set_label(i, cand_of(i, side[i]));
    }
    out.level_starts.push_back(out.pass_costs.size());
    {
      const auto [nn, pw] = total();
      out.pass_costs.push_back(nn + pw);
    }
    for (int pass = 0; pass < options.max_passes; ++pass) {
      shuffle(order, rng);
      std::size_t flips = 0;
      for (std::size_t i : order) {
        const int s = side[i];
        const double stay = local(i, cand_of(i, s)), move = local(i, cand_of(i, 1 - s));
        if (move < stay - kImprove) {
          side[i] = 1 - s;
          set_label(i, cand_of(i, side[i]));
          ++flips;
        }
      }
      ++out.passes;
      const auto [nn, pw] = total();
      out.pass_costs.push_back(nn + pw);
      if (flips == 0) break;
    }

    // Next level keeps only the cells some query landed in.
    std::vector<TreeMetric::Cell> next;
    std::vector<int> slot(cells.size() * 2, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = cell_of[i];
      const std::size_t key = c * 2 + static_cast<std::size_t>(leaf[c] ? 0 : side[i]);
      if (slot[key] < 0) {
        slot[key] = static_cast<int>(next.size());
        if (leaf[c]) next.push_back(cells[c]);
        else next.push_back(side[i] == 0 ? kids[c].first : kids[c].second);
      }
      if (!leaf[c]) out.label_index[i] = cand_index[i * 2 + static_cast<std::size_t>(side[i])];
      cell_of[i] = static_cast<std::size_t>(slot[key]);
    }
    cells = std::move(next);
  }

  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.labels[i].assign(label_of(i).begin(), label_of(i).end());
  const auto [nn, pw] = total();
  out.nn_cost = nn;
  out.pw_cost = pw;
  out.total = nn + pw;
  return out;
}

Assignment tree_labeling_solve(const SnnInstance& inst, const TreeMetric& tm, std::uint64_t seed,
                               const TreeLabelingOptions& options) {
  inst.validate();
  if (inst.space.kind() != MetricKind::euclidean) throw std::invalid_argument("tree_labeling_solve: needs a euclidean instance");
  if (tm.is_lattice() || tm.points().size() != inst.labels.size()) {
    throw std::invalid_argument("tree_labeling_solve: tree must be built over the instance labels");
  }
  for (std::size_t l = 0; l < inst.labels.size(); ++l) {
    const auto c = inst.space.coords(inst.labels[l]);
    if (!std::equal(c.begin(), c.end(), tm.points()[l].begin(), tm.points()[l].end())) {
      throw std::invalid_argument("tree_labeling_solve: tree points differ from the instance labels");
    }
  }
  std::vector<std::vector<double>> queries;
  for (PointId q : inst.queries) {
    const auto c = inst.space.coords(q);
    queries.emplace_back(c.begin(), c.end());
  }
  const auto result = tree_labeling(tm, queries, inst.graph, seed, inst.kappa, inst.lambda, options);
  std::vector<PointId> labels(inst.k());
  for (std::size_t i = 0; i < inst.k(); ++i) labels[i] = inst.labels[static_cast<std::size_t>(result.label_index[i])];
  return cost(inst, std::move(labels));
}

Assignment tree_labeling_solve(const SnnInstance& inst, std::uint64_t seed, const TreeLabelingOptions& options) {
  if (inst.space.kind() != MetricKind::euclidean) throw std::invalid_argument("tree_labeling_solve: needs a euclidean instance");
  std::vector<std::vector<double>> pts;
  for (PointId p : inst.labels) {
    const auto c = inst.space.coords(p);
    pts.emplace_back(c.begin(), c.end());
  }
  const auto tm = TreeMetric::over_points(std::move(pts), seed);
  return tree_labeling_solve(inst, tm, seed, options);
}

}  // namespace snn
