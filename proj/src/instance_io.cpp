#include "snn/instance_io.hpp"

#include <algorithm>
#include <fstream>

#include "snn/error.hpp"

namespace snn {

using nlohmann::json;

namespace {

json point_json(const MetricSpace& space, PointId p) {
  if (space.kind() == MetricKind::euclidean) {
    const auto c = space.coords(p);
    return json(std::vector<double>(c.begin(), c.end()));
  }
  return json(p);
}

}  // namespace

json instance_to_json(const SnnInstance& inst) {
  json j;
  j["schema"] = kInstanceSchema;
  const auto& space = inst.space;
  json s;
  s["kind"] = to_string(space.kind());
  if (space.kind() == MetricKind::euclidean) {
    s["dim"] = space.dim();
  } else if (space.kind() == MetricKind::graph_shortest_path && space.source_graph()) {
    s["n"] = space.source_graph()->n;
    json edges = json::array();
    for (const auto& e : space.source_graph()->edges) edges.push_back({e.u, e.v, e.weight});
    s["graph"] = edges;
  } else {
    s["kind"] = to_string(MetricKind::explicit_matrix);
    const std::size_t n = space.size();
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back(std::vector<double>(space.table().begin() + static_cast<std::ptrdiff_t>(i * n),
                                         space.table().begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
    }
    s["matrix"] = rows;
  }
  j["space"] = s;
  j["labels"] = json::array();
  for (PointId p : inst.labels) j["labels"].push_back(point_json(space, p));
  j["queries"] = json::array();
  for (PointId q : inst.queries) j["queries"].push_back(point_json(space, q));
  j["edges"] = json::array();
  for (const auto& e : inst.graph.edges()) j["edges"].push_back({e.u, e.v, e.mult});
  if (!inst.kappa.empty()) j["kappa"] = inst.kappa;
  if (!inst.lambda.empty()) j["lambda"] = inst.lambda;
  return j;
}

SnnInstance instance_from_json(const json& j) {
  try {
    if (j.contains("schema") && j.at("schema") != kInstanceSchema) {
      throw ParseError("instance: unsupported schema " + j.at("schema").dump());
    }
    SnnInstance inst;
    const auto& s = j.at("space");
    const MetricKind kind = metric_kind_from_string(s.at("kind").get<std::string>());
    const auto& labels = j.at("labels");
    const auto& queries = j.at("queries");
    if (kind == MetricKind::euclidean) {
      std::vector<std::vector<double>> coords;
      for (const auto& p : labels) coords.push_back(p.get<std::vector<double>>());
      for (const auto& q : queries) coords.push_back(q.get<std::vector<double>>());
      if (s.contains("dim")) {
        const auto dim = s.at("dim").get<std::size_t>();
        for (const auto& c : coords)
          if (c.size() != dim) throw ParseError("instance: point dimension differs from space.dim");
      }
      inst.space = MetricSpace::euclidean(std::move(coords));
      for (std::size_t i = 0; i < labels.size(); ++i) inst.labels.push_back(static_cast<PointId>(i));
      for (std::size_t i = 0; i < queries.size(); ++i) inst.queries.push_back(static_cast<PointId>(labels.size() + i));
    } else {
      if (kind == MetricKind::graph_shortest_path) {
        WeightedGraph g;
        g.n = s.at("n").get<std::size_t>();
        for (const auto& e : s.at("graph")) {
          g.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<double>()});
        }
        inst.space = build_graph_metric(g);
      } else {
        const auto& rows = s.at("matrix");
        const std::size_t n = rows.size();
        std::vector<double> table;
        table.reserve(n * n);
        for (const auto& row : rows) {
          if (row.size() != n) throw ParseError("instance: matrix is not square");
          for (const auto& x : row) table.push_back(x.get<double>());
        }
        inst.space = MetricSpace::from_matrix(std::move(table), n);
      }
      inst.labels = labels.get<std::vector<PointId>>();
      inst.queries = queries.get<std::vector<PointId>>();
    }
    inst.graph = CompatGraph(inst.queries.size());
    for (const auto& e : j.value("edges", json::array())) {
      const int mult = e.size() > 2 ? e.at(2).get<int>() : 1;
      inst.graph.add_edge(e.at(0).get<VertexId>(), e.at(1).get<VertexId>(), mult);
    }
    if (j.contains("kappa")) inst.kappa = j.at("kappa").get<std::vector<double>>();
    if (j.contains("lambda")) inst.lambda = j.at("lambda").get<std::vector<double>>();
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

SnnInstance load_instance(const std::filesystem::path& path) { return instance_from_json(read_json_file(path)); }

void save_instance(const SnnInstance& inst, const std::filesystem::path& path) {
  write_json_file(instance_to_json(inst), path);
}

json assignment_to_json(const SnnInstance& inst, const Assignment& a) {
  json j;
  j["schema"] = kAssignmentSchema;
  j["labels"] = a.label_of;
  // Positions of each label within inst.labels, handy for euclidean instances
  // whose label ids are internal.
  std::vector<long long> positions;
  for (PointId p : a.label_of) {
    const auto it = std::find(inst.labels.begin(), inst.labels.end(), p);
    positions.push_back(it == inst.labels.end() ? -1 : static_cast<long long>(it - inst.labels.begin()));
  }
  j["label_index"] = positions;
  if (inst.space.kind() == MetricKind::euclidean) {
    json coords = json::array();
    for (PointId p : a.label_of) coords.push_back(point_json(inst.space, p));
    j["label_coords"] = coords;
  }
  j["nn_cost"] = a.nn_cost;
  j["pw_cost"] = a.pw_cost;
  j["total"] = a.total;
  return j;
}

Assignment assignment_from_json(const json& j) {
  try {
    if (j.at("schema") != kAssignmentSchema) throw ParseError("assignment: unsupported schema");
    Assignment a;
    a.label_of = j.at("labels").get<std::vector<PointId>>();
    a.nn_cost = j.at("nn_cost").get<double>();
    a.pw_cost = j.at("pw_cost").get<double>();
    a.total = j.at("total").get<double>();
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("assignment: ") + e.what());
  }
}

json gap_to_json(const PruningReport& r) {
  json j;
  j["schema"] = kGapSchema;
  j["opt_full"] = r.opt_full;
  j["opt_pruned"] = r.opt_pruned;
  j["alpha"] = r.alpha;
  j["pruned_labels"] = r.pruned_labels;
  j["full_labels"] = r.full.label_of;
  j["pruned_assignment"] = r.pruned.label_of;
  return j;
}

}  // namespace snn
