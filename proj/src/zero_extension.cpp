#include "snn/zero_extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "snn/error.hpp"

namespace snn {

std::vector<int> ZeroExtInstance::terminal_index() const {
  std::vector<int> idx(num_vertices, -1);
  for (std::size_t t = 0; t < terminals.size(); ++t) idx[terminals[t]] = static_cast<int>(t);
  return idx;
}

void ZeroExtInstance::validate() const {
  if (terminals.empty()) throw std::invalid_argument("0-extension: no terminals");
  if (terminal_point.size() != terminals.size()) throw std::invalid_argument("0-extension: terminal points mismatch");
  if (!std::is_sorted(terminals.begin(), terminals.end()) ||
      std::adjacent_find(terminals.begin(), terminals.end()) != terminals.end()) {
    throw std::invalid_argument("0-extension: terminals must be ascending and distinct");
  }
  for (std::size_t t : terminals)
    if (t >= num_vertices) throw std::invalid_argument("0-extension: terminal out of range");
  for (PointId p : terminal_point)
    if (!space.contains(p)) throw std::invalid_argument("0-extension: terminal point outside the metric");
  for (const auto& e : edges) {
    if (e.u >= num_vertices || e.v >= num_vertices) throw std::invalid_argument("0-extension: edge out of range");
    if (!(e.weight >= 0.0)) throw std::invalid_argument("0-extension: negative edge weight");
  }
}

double zero_ext_cost(const ZeroExtInstance& z, const ZeroExtMapping& m) {
  if (m.f.size() != z.num_vertices) throw std::invalid_argument("0-extension: mapping size mismatch");
  const auto tidx = z.terminal_index();
  for (std::size_t v = 0; v < z.num_vertices; ++v) {
    if (m.f[v] >= z.terminals.size()) throw std::invalid_argument("0-extension: mapping to a non-terminal");
    if (tidx[v] >= 0 && m.f[v] != static_cast<std::size_t>(tidx[v])) {
      throw std::invalid_argument("0-extension: mapping moves a terminal");
    }
  }
  double c = 0.0;
  for (const auto& e : z.edges) {
    c += e.weight * z.space.dist(z.terminal_point[m.f[e.u]], z.terminal_point[m.f[e.v]]);
  }
  return c;
}

ZeroExtMapping zero_ext_exact(const ZeroExtInstance& z, double guard) {
  z.validate();
  const auto tidx = z.terminal_index();
  const std::size_t T = z.terminals.size();
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < z.num_vertices; ++v)
    if (tidx[v] < 0) free.push_back(v);
  if (std::pow(static_cast<double>(T), static_cast<double>(free.size())) > guard) {
    throw GuardExceeded("zero_ext_exact: |T|^|V\\T| exceeds the enumeration guard");
  }
  std::vector<double> d(T * T);
  for (std::size_t a = 0; a < T; ++a)
    for (std::size_t b = 0; b < T; ++b) d[a * T + b] = z.space.dist(z.terminal_point[a], z.terminal_point[b]);

  // Position of each vertex in the enumeration order; terminals are fixed (-1).
  std::vector<int> pos(z.num_vertices, -1);
  for (std::size_t i = 0; i < free.size(); ++i) pos[free[i]] = static_cast<int>(i);

  // Cost contributions become known when the later-enumerated endpoint is set.
  const std::size_t F = free.size();
  double fixed = 0.0;
  std::vector<std::vector<std::pair<std::size_t, double>>> to_free(F);   // (other free pos, w)
  std::vector<std::vector<std::pair<std::size_t, double>>> to_term(F);   // (terminal idx, w)
  for (const auto& e : z.edges) {
    const int pu = pos[e.u], pv = pos[e.v];
    if (pu < 0 && pv < 0) {
      fixed += e.weight * d[static_cast<std::size_t>(tidx[e.u]) * T + static_cast<std::size_t>(tidx[e.v])];
    } else if (pu < 0) {
      to_term[static_cast<std::size_t>(pv)].emplace_back(static_cast<std::size_t>(tidx[e.u]), e.weight);
    } else if (pv < 0) {
      to_term[static_cast<std::size_t>(pu)].emplace_back(static_cast<std::size_t>(tidx[e.v]), e.weight);
    } else {
      const auto later = static_cast<std::size_t>(std::max(pu, pv));
      const auto earlier = static_cast<std::size_t>(std::min(pu, pv));
      to_free[later].emplace_back(earlier, e.weight);
    }
  }

  std::vector<std::size_t> cur(F, 0), best_assign(F, 0);
  double best = std::numeric_limits<double>::infinity();
  if (F > 0) {
    std::vector<double> partial(F + 1, fixed);
    std::size_t depth = 0;
    while (true) {
      if (cur[depth] == T) {
        if (depth == 0) break;
        --depth;
        ++cur[depth];
        continue;
      }
      const std::size_t t = cur[depth];
      double c = partial[depth];
      for (const auto& [term, w] : to_term[depth]) c += w * d[t * T + term];
      for (const auto& [j, w] : to_free[depth]) c += w * d[t * T + cur[j]];
      if (c >= best - kDistTol) {
        ++cur[depth];
        continue;
      }
      if (depth + 1 == F) {
        best = c;
        best_assign = cur;
        ++cur[depth];
        continue;
      }
      partial[depth + 1] = c;
      ++depth;
      cur[depth] = 0;
    }
  }
  ZeroExtMapping m;
  m.f.resize(z.num_vertices);
  for (std::size_t v = 0; v < z.num_vertices; ++v) {
    m.f[v] = tidx[v] >= 0 ? static_cast<std::size_t>(tidx[v]) : best_assign[static_cast<std::size_t>(pos[v])];
  }
  return m;
}

ZeroExtInstance snn_to_zero_extension(const SnnInstance& inst, const std::vector<PointId>& nn_map) {
  inst.validate();
  if (inst.is_weighted()) throw std::invalid_argument("snn_to_zero_extension: weighted instances are not supported");
  if (nn_map.size() != inst.k()) throw std::invalid_argument("snn_to_zero_extension: nn_map size mismatch");
  const std::size_t n = inst.labels.size();
  ZeroExtInstance z;
  z.num_vertices = n + inst.k();
  z.space = inst.space;
  for (std::size_t t = 0; t < n; ++t) {
    z.terminals.push_back(t);
    z.terminal_point.push_back(inst.labels[t]);
  }
  for (const auto& [u, v] : inst.graph.instances()) {
    z.edges.push_back({n + static_cast<std::size_t>(u), n + static_cast<std::size_t>(v), 1.0});
  }
  for (std::size_t i = 0; i < inst.k(); ++i) {
    const auto it = std::find(inst.labels.begin(), inst.labels.end(), nn_map[i]);
    if (it == inst.labels.end()) throw std::invalid_argument("snn_to_zero_extension: nn label not in P");
    z.edges.push_back({n + i, static_cast<std::size_t>(it - inst.labels.begin()), 1.0});
  }
  return z;
}

std::vector<PointId> back_translate(const SnnInstance& inst, const ZeroExtInstance& z, const ZeroExtMapping& m) {
  const std::size_t n = inst.labels.size();
  std::vector<PointId> labels(inst.k());
  for (std::size_t i = 0; i < inst.k(); ++i) labels[i] = z.terminal_point[m.f.at(n + i)];
  return labels;
}

nlohmann::json zero_ext_to_json(const ZeroExtInstance& z) {
  nlohmann::json j;
  j["schema"] = "snn-zeroext/1";
  nlohmann::json s;
  s["kind"] = to_string(MetricKind::explicit_matrix);
  const std::size_t n = z.space.size();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<double> row(n);
    for (std::size_t b = 0; b < n; ++b) row[b] = z.space.dist(static_cast<PointId>(a), static_cast<PointId>(b));
    rows.push_back(row);
  }
  s["matrix"] = rows;
  j["space"] = s;
  j["vertices"] = z.num_vertices;
  j["terminals"] = nlohmann::json::array();
  for (std::size_t t = 0; t < z.terminals.size(); ++t) j["terminals"].push_back({z.terminals[t], z.terminal_point[t]});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : z.edges) j["edges"].push_back({e.u, e.v, e.weight});
  return j;
}

ZeroExtInstance zero_ext_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema") != "snn-zeroext/1") throw ParseError("0-extension: unsupported schema");
    ZeroExtInstance z;
    const auto& rows = j.at("space").at("matrix");
    const std::size_t n = rows.size();
    std::vector<double> table;
    for (const auto& row : rows)
      for (const auto& x : row) table.push_back(x.get<double>());
    z.space = MetricSpace::from_matrix(std::move(table), n);
    z.num_vertices = j.at("vertices").get<std::size_t>();
    for (const auto& t : j.at("terminals")) {
      z.terminals.push_back(t.at(0).get<std::size_t>());
      z.terminal_point.push_back(t.at(1).get<PointId>());
    }
    for (const auto& e : j.at("edges")) {
      z.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<double>()});
    }
    z.validate();
    return z;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("0-extension: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace snn
