#include "snn/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "snn/error.hpp"
#include "snn/nn_index.hpp"

namespace snn {

bool SnnInstance::is_weighted() const noexcept {
  auto not_one = [](double w) { return w != 1.0; };
  return std::any_of(kappa.begin(), kappa.end(), not_one) || std::any_of(lambda.begin(), lambda.end(), not_one);
}

void SnnInstance::validate() const {
  if (labels.empty()) throw std::invalid_argument("instance: label set is empty");
  if (graph.num_vertices() != queries.size()) throw std::invalid_argument("instance: graph size differs from query count");
  for (PointId p : labels)
    if (!space.contains(p)) throw std::invalid_argument("instance: label outside the metric space");
  for (PointId q : queries)
    if (!space.contains(q)) throw std::invalid_argument("instance: query outside the metric space");
  if (!kappa.empty() && kappa.size() != queries.size()) throw std::invalid_argument("instance: kappa length mismatch");
  if (!lambda.empty() && lambda.size() != graph.edges().size()) throw std::invalid_argument("instance: lambda length mismatch");
  for (double w : kappa)
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("instance: negative kappa");
  for (double w : lambda)
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("instance: negative lambda");
}

Assignment cost(const SnnInstance& inst, std::vector<PointId> labels) {
  if (labels.size() != inst.k()) throw std::invalid_argument("cost: assignment does not cover every query");
  Assignment a;
  a.label_of = std::move(labels);
  for (std::size_t i = 0; i < inst.k(); ++i) {
    a.nn_cost += inst.kappa_at(i) * inst.space.dist(a.label_of[i], inst.queries[i]);
  }
  const auto& edges = inst.graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto u = static_cast<std::size_t>(edges[e].u), v = static_cast<std::size_t>(edges[e].v);
    a.pw_cost += inst.lambda_at(e) * edges[e].mult * inst.space.dist(a.label_of[u], a.label_of[v]);
  }
  a.total = a.nn_cost + a.pw_cost;
  return a;
}

namespace {

// Unary costs, label distance table and aggregated pairwise weights, indexed
// by position in `allowed`.
struct DenseProblem {
  std::size_t k = 0, L = 0;
  std::vector<double> unary;  // k * L
  std::vector<double> dist;   // L * L
  std::map<std::pair<std::size_t, std::size_t>, double> pair_weight;  // (i < j) -> summed lambda*mult
};

DenseProblem densify(const SnnInstance& inst, std::span<const PointId> allowed) {
  inst.validate();
  if (allowed.empty()) throw std::invalid_argument("exact solver: empty label set");
  DenseProblem d;
  d.k = inst.k();
  d.L = allowed.size();
  d.unary.resize(d.k * d.L);
  for (std::size_t i = 0; i < d.k; ++i)
    for (std::size_t l = 0; l < d.L; ++l)
      d.unary[i * d.L + l] = inst.kappa_at(i) * inst.space.dist(allowed[l], inst.queries[i]);
  d.dist.resize(d.L * d.L);
  for (std::size_t a = 0; a < d.L; ++a)
    for (std::size_t b = 0; b < d.L; ++b) d.dist[a * d.L + b] = inst.space.dist(allowed[a], allowed[b]);
  const auto& edges = inst.graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto u = static_cast<std::size_t>(edges[e].u), v = static_cast<std::size_t>(edges[e].v);
    if (u > v) std::swap(u, v);
    d.pair_weight[{u, v}] += inst.lambda_at(e) * edges[e].mult;
  }
  return d;
}

std::vector<PointId> to_labels(std::span<const PointId> allowed, const std::vector<std::size_t>& idx) {
  std::vector<PointId> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = allowed[idx[i]];
  return out;
}

}  // namespace

Assignment brute_force_opt(const SnnInstance& inst, std::span<const PointId> allowed, double guard) {
  if (std::pow(static_cast<double>(allowed.size()), static_cast<double>(inst.k())) > guard) {
    throw GuardExceeded("brute_force_opt: |allowed|^k exceeds the enumeration guard");
  }
  const DenseProblem d = densify(inst, allowed);
  const std::size_t k = d.k, L = d.L;

  // back[i]: earlier-indexed neighbors of query i with their weights.
  std::vector<std::vector<std::pair<std::size_t, double>>> back(k);
  for (const auto& [uv, w] : d.pair_weight) back[uv.second].emplace_back(uv.first, w);

  std::vector<std::size_t> cur(k, 0), best_idx(k, 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> partial(k + 1, 0.0);

  // Iterative DFS in lexicographic order.
  std::size_t depth = 0;
  if (k == 0) return cost(inst, {});
  cur[0] = 0;
  while (true) {
    if (cur[depth] == L) {
      if (depth == 0) break;
      --depth;
      ++cur[depth];
      continue;
    }
    const std::size_t l = cur[depth];
    double c = partial[depth] + d.unary[depth * L + l];
    for (const auto& [j, w] : back[depth]) c += w * d.dist[l * L + cur[j]];
    if (c >= best - kDistTol) {
      ++cur[depth];
      continue;
    }
    if (depth + 1 == k) {
      best = c;
      best_idx = cur;
      ++cur[depth];
      continue;
    }
    partial[depth + 1] = c;
    ++depth;
    cur[depth] = 0;
  }
  return cost(inst, to_labels(allowed, best_idx));
}

namespace {

using PairMap = std::map<std::pair<std::size_t, std::size_t>, double>;

struct Factor {
  std::vector<std::size_t> scope;  // ascending variable ids; scope[0] is least significant
  std::vector<double> table;
};

struct EliminationPlan {
  std::vector<std::size_t> order;
  double work = 0.0;       // sum over steps of L^(scope + 1)
  double max_table = 0.0;  // largest single L^(scope + 1)
};

// Min-fill order over the interaction graph, with the table sizes it implies.
EliminationPlan min_fill_plan(std::size_t k, const PairMap& pairs, std::size_t L) {
  std::vector<std::set<std::size_t>> adj(k);
  for (const auto& [uv, w] : pairs) {
    adj[uv.first].insert(uv.second);
    adj[uv.second].insert(uv.first);
  }
  std::vector<bool> done(k, false);
  EliminationPlan plan;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = k, best_fill = 0, best_deg = 0;
    for (std::size_t v = 0; v < k; ++v) {
      if (done[v]) continue;
      std::size_t fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      const std::size_t deg = adj[v].size();
      if (best == k || fill < best_fill || (fill == best_fill && deg < best_deg)) {
        best = v;
        best_fill = fill;
        best_deg = deg;
      }
    }
    const double table = std::pow(static_cast<double>(L), static_cast<double>(adj[best].size() + 1));
    plan.work += table;
    plan.max_table = std::max(plan.max_table, table);
    done[best] = true;
    plan.order.push_back(best);
    for (auto a : adj[best])
      for (auto b : adj[best])
        if (a != b) adj[a].insert(b);
    for (auto a : adj[best]) adj[a].erase(best);
    adj[best].clear();
  }
  return plan;
}

// Min-sum bucket elimination of sum_i unary_i(x_i) + sum_(i,j) w_ij dist(x_i, x_j)
// along `order`. Returns the optimum and an optimal labeling.
std::pair<double, std::vector<std::size_t>> eliminate(std::size_t k, std::size_t L, const std::vector<double>& unary,
                                                      const std::vector<double>& dist, const PairMap& pairs,
                                                      const std::vector<std::size_t>& order) {
  std::vector<Factor> pool;
  for (std::size_t i = 0; i < k; ++i) {
    pool.push_back({{i}, std::vector<double>(unary.begin() + static_cast<std::ptrdiff_t>(i * L),
                                             unary.begin() + static_cast<std::ptrdiff_t>((i + 1) * L))});
  }
  for (const auto& [uv, w] : pairs) {
    Factor f{{uv.first, uv.second}, std::vector<double>(L * L)};
    for (std::size_t a = 0; a < L; ++a)
      for (std::size_t b = 0; b < L; ++b) f.table[a + b * L] = w * dist[a * L + b];
    pool.push_back(std::move(f));
  }

  struct Step {
    std::size_t var;
    std::vector<std::size_t> scope;  // remaining scope after eliminating var
    std::vector<std::uint32_t> argmin;
  };
  std::vector<Step> steps;
  double constant = 0.0;

  for (std::size_t x : order) {
    std::vector<Factor> bucket;
    std::vector<Factor> rest;
    for (auto& f : pool) {
      if (std::binary_search(f.scope.begin(), f.scope.end(), x)) bucket.push_back(std::move(f));
      else rest.push_back(std::move(f));
    }
    pool = std::move(rest);

    std::set<std::size_t> scope_set;
    for (const auto& f : bucket) scope_set.insert(f.scope.begin(), f.scope.end());
    scope_set.erase(x);
    std::vector<std::size_t> scope(scope_set.begin(), scope_set.end());

    // Union positions: 0 is x (innermost), then the output scope in order.
    std::vector<std::size_t> uvars{x};
    uvars.insert(uvars.end(), scope.begin(), scope.end());
    const std::size_t nu = uvars.size();
    std::vector<std::vector<std::size_t>> stride(bucket.size(), std::vector<std::size_t>(nu, 0));
    for (std::size_t f = 0; f < bucket.size(); ++f) {
      std::size_t s = 1;
      for (std::size_t var : bucket[f].scope) {
        const auto pos = static_cast<std::size_t>(std::find(uvars.begin(), uvars.end(), var) - uvars.begin());
        stride[f][pos] = s;
        s *= L;
      }
    }
    std::size_t out_size = 1;
    for (std::size_t i = 0; i < scope.size(); ++i) out_size *= L;
    Factor out{scope, std::vector<double>(out_size, std::numeric_limits<double>::infinity())};
    std::vector<std::uint32_t> arg(out_size, 0);

    std::vector<std::size_t> digit(nu, 0), idx(bucket.size(), 0);
    for (std::size_t o = 0; o < out_size; ++o) {
      for (std::size_t v = 0; v < L; ++v) {
        double s = 0.0;
        for (std::size_t f = 0; f < bucket.size(); ++f) s += bucket[f].table[idx[f] + v * stride[f][0]];
        if (s < out.table[o]) {
          out.table[o] = s;
          arg[o] = static_cast<std::uint32_t>(v);
        }
      }
      // Advance the odometer over the output scope (positions 1..nu-1).
      for (std::size_t p = 1; p < nu; ++p) {
        if (++digit[p] < L) {
          for (std::size_t f = 0; f < bucket.size(); ++f) idx[f] += stride[f][p];
          break;
        }
        digit[p] = 0;
        for (std::size_t f = 0; f < bucket.size(); ++f) idx[f] -= (L - 1) * stride[f][p];
      }
    }
    steps.push_back({x, scope, std::move(arg)});
    if (scope.empty()) constant += out.table[0];
    else pool.push_back(std::move(out));
  }

  std::vector<std::size_t> value(k, 0);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    std::size_t o = 0, s = 1;
    for (std::size_t var : it->scope) {
      o += value[var] * s;
      s *= L;
    }
    value[it->var] = it->argmin[o];
  }
  return {constant, std::move(value)};
}

// The problem left after fixing the variables marked in `fixed`: free variables
// are renumbered 0..m-1, and pairs touching a fixed variable move into the
// unaries (filled per conditioning by the caller).
struct Conditioned {
  std::vector<std::size_t> free_vars;   // original ids
  std::vector<std::size_t> fixed_vars;  // original ids
  PairMap free_pairs;                   // in free numbering
  std::vector<std::vector<std::pair<std::size_t, double>>> to_fixed;  // per free var: (fixed position, weight)
  PairMap fixed_pairs;                  // in fixed positions
};

Conditioned condition(std::size_t k, const PairMap& pairs, const std::vector<bool>& fixed) {
  Conditioned c;
  std::vector<std::size_t> pos(k);
  for (std::size_t v = 0; v < k; ++v) {
    auto& list = fixed[v] ? c.fixed_vars : c.free_vars;
    pos[v] = list.size();
    list.push_back(v);
  }
  c.to_fixed.resize(c.free_vars.size());
  for (const auto& [uv, w] : pairs) {
    const auto [u, v] = uv;
    if (!fixed[u] && !fixed[v]) c.free_pairs[{pos[u], pos[v]}] += w;
    else if (fixed[u] && fixed[v]) c.fixed_pairs[{pos[u], pos[v]}] += w;
    else if (fixed[u]) c.to_fixed[pos[v]].emplace_back(pos[u], w);
    else c.to_fixed[pos[u]].emplace_back(pos[v], w);
  }
  return c;
}

}  // namespace

Assignment elimination_opt(const SnnInstance& inst, std::span<const PointId> allowed, double max_table, double max_work) {
  const DenseProblem d = densify(inst, allowed);
  const std::size_t k = d.k, L = d.L;
  if (k == 0) return cost(inst, {});

  // Greedy cutset: fix the variable that most reduces the total work until
  // every elimination table fits.
  std::vector<bool> fixed(k, false);
  std::size_t n_fixed = 0;
  auto plan_for = [&](const std::vector<bool>& f) {
    const auto c = condition(k, d.pair_weight, f);
    return min_fill_plan(c.free_vars.size(), c.free_pairs, L);
  };
  EliminationPlan plan = plan_for(fixed);
  while (plan.max_table > max_table) {
    std::size_t best_v = k;
    EliminationPlan best_plan;
    for (std::size_t v = 0; v < k; ++v) {
      if (fixed[v]) continue;
      fixed[v] = true;
      EliminationPlan p = plan_for(fixed);
      fixed[v] = false;
      if (best_v == k || p.work < best_plan.work) {
        best_v = v;
        best_plan = std::move(p);
      }
    }
    fixed[best_v] = true;
    ++n_fixed;
    plan = std::move(best_plan);
  }
  const double conditionings = std::pow(static_cast<double>(L), static_cast<double>(n_fixed));
  if (conditionings * std::max(plan.work, 1.0) > max_work) {
    throw GuardExceeded("elimination_opt: induced width too large for the work guard");
  }

  const Conditioned c = condition(k, d.pair_weight, fixed);
  const std::size_t m = c.free_vars.size();
  std::vector<std::size_t> assign(c.fixed_vars.size(), 0), best_value(k, 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> unary(m * L);
  while (true) {
    // Everything touching only fixed variables is a constant lower bound.
    double base = 0.0;
    for (std::size_t f = 0; f < c.fixed_vars.size(); ++f) base += d.unary[c.fixed_vars[f] * L + assign[f]];
    for (const auto& [uv, w] : c.fixed_pairs) base += w * d.dist[assign[uv.first] * L + assign[uv.second]];
    if (base < best - kDistTol) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < L; ++l) {
          double u = d.unary[c.free_vars[i] * L + l];
          for (const auto& [f, w] : c.to_fixed[i]) u += w * d.dist[l * L + assign[f]];
          unary[i * L + l] = u;
        }
      auto [val, labels] = eliminate(m, L, unary, d.dist, c.free_pairs, plan.order);
      if (base + val < best - kDistTol) {
        best = base + val;
        for (std::size_t i = 0; i < m; ++i) best_value[c.free_vars[i]] = labels[i];
        for (std::size_t f = 0; f < c.fixed_vars.size(); ++f) best_value[c.fixed_vars[f]] = assign[f];
      }
    }
    std::size_t p = 0;
    while (p < assign.size() && ++assign[p] == L) assign[p++] = 0;
    if (p == assign.size()) break;
  }
  return cost(inst, to_labels(allowed, best_value));
}

Assignment local_search(const SnnInstance& inst, std::span<const PointId> allowed, Assignment start, int max_passes) {
  const DenseProblem d = densify(inst, allowed);
  const std::size_t k = d.k, L = d.L;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto it = std::find(allowed.begin(), allowed.end(), start.label_of.at(i));
    if (it == allowed.end()) throw std::invalid_argument("local_search: start label outside the allowed set");
    cur[i] = static_cast<std::size_t>(it - allowed.begin());
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> nbr(k);
  for (const auto& [uv, w] : d.pair_weight) {
    nbr[uv.first].emplace_back(uv.second, w);
    nbr[uv.second].emplace_back(uv.first, w);
  }
  auto local = [&](std::size_t i, std::size_t l) {
    double c = d.unary[i * L + l];
    for (const auto& [j, w] : nbr[i]) c += w * d.dist[l * L + cur[j]];
    return c;
  };
  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < k; ++i) {
      double best = local(i, cur[i]);
      for (std::size_t l = 0; l < L; ++l) {
        const double c = local(i, l);
        if (c < best - kDistTol) {
          best = c;
          cur[i] = l;
          moved = true;
        }
      }
    }
    if (!moved) break;
  }
  return cost(inst, to_labels(allowed, cur));
}

std::vector<PointId> nearest_labels(const SnnInstance& inst) {
  const NnIndex index(inst.space, inst.labels);
  std::vector<PointId> out;
  out.reserve(inst.k());
  for (PointId q : inst.queries) out.push_back(index.nearest(q));
  return out;
}

std::vector<PointId> dedup(std::vector<PointId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Assignment exact_opt(const SnnInstance& inst, std::span<const PointId> allowed, ExactMethod method, double guard) {
  if (method == ExactMethod::enumeration) return brute_force_opt(inst, allowed, guard > 0.0 ? guard : kEnumerationGuard);
  return elimination_opt(inst, allowed, 4e7, guard > 0.0 ? guard : kEliminationWorkGuard);
}

PruningReport pruning_gap(const SnnInstance& inst, ExactMethod method, double guard) {
  PruningReport r;
  r.pruned_labels = dedup(nearest_labels(inst));
  r.full = exact_opt(inst, inst.labels, method, guard);
  r.pruned = exact_opt(inst, r.pruned_labels, method, guard);
  r.opt_full = r.full.total;
  r.opt_pruned = r.pruned.total;
  if (r.opt_full > 0.0) r.alpha = r.opt_pruned / r.opt_full;
  else r.alpha = r.opt_pruned > kDistTol ? std::numeric_limits<double>::infinity() : 1.0;
  return r;
}

SnnInstance with_labels(const SnnInstance& inst, std::vector<PointId> labels) {
  SnnInstance out = inst;
  out.labels = std::move(labels);
  return out;
}

}  // namespace snn
