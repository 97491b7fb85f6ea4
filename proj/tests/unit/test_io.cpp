#include <doctest.h>

#include <filesystem>
#include <random>

#include "snn/error.hpp"
#include "snn/generators.hpp"
#include "snn/instance_io.hpp"

using namespace snn;
using nlohmann::json;

namespace {

void check_same(const SnnInstance& a, const SnnInstance& b) {
  REQUIRE(a.k() == b.k());
  REQUIRE(a.labels.size() == b.labels.size());
  CHECK(a.space.kind() == b.space.kind());
  CHECK(a.kappa == b.kappa);
  CHECK(a.lambda == b.lambda);
  REQUIRE(a.graph.edges().size() == b.graph.edges().size());
  for (std::size_t e = 0; e < a.graph.edges().size(); ++e) {
    CHECK(a.graph.edges()[e].u == b.graph.edges()[e].u);
    CHECK(a.graph.edges()[e].v == b.graph.edges()[e].v);
    CHECK(a.graph.edges()[e].mult == b.graph.edges()[e].mult);
  }
  for (std::size_t i = 0; i < a.k(); ++i)
    for (std::size_t l = 0; l < a.labels.size(); ++l)
      CHECK(a.space.dist(a.queries[i], a.labels[l]) == b.space.dist(b.queries[i], b.labels[l]));
}

}  // namespace

TEST_CASE("fixtures load and round-trip") {
  for (const char* name : {"two_query", "two_query_forced_split", "three_labels", "empty_graph", "q_equals_p", "path_graph"}) {
    CAPTURE(name);
    const auto inst = load_instance(std::string(SNN_FIXTURES "/") + name + ".json");
    check_same(inst, instance_from_json(instance_to_json(inst)));
    CHECK(instance_to_json(inst)["schema"] == kInstanceSchema);
  }
}

TEST_CASE("random instances round-trip") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_instance({}, rng);
    check_same(inst, instance_from_json(json::parse(instance_to_json(inst).dump())));
  }
}

TEST_CASE("lower-bound instances save and reload") {
  const auto path = std::filesystem::temp_directory_path() / "snn_io_lowerbound.json";
  const auto inst = build_lower_bound_instance({16, 3, 2}, 42);
  save_instance(inst, path);
  const auto back = load_instance(path);
  check_same(inst, back);
  CHECK(back.space.kind() == MetricKind::graph_shortest_path);
  std::filesystem::remove(path);
}

TEST_CASE("assignment and gap JSON") {
  const auto inst = load_instance(SNN_FIXTURES "/three_labels.json");
  const auto a = brute_force_opt(inst, inst.labels);
  const auto j = assignment_to_json(inst, a);
  CHECK(j["label_coords"][0][0] == 5.0);
  const auto back = assignment_from_json(json::parse(j.dump()));
  CHECK(back.label_of == a.label_of);
  CHECK(back.total == a.total);
  const auto g = gap_to_json(pruning_gap(inst));
  CHECK(g["schema"] == kGapSchema);
  CHECK(g["alpha"] == 1.25);
  CHECK_THROWS_AS(assignment_from_json(json{{"schema", "other/1"}}), ParseError);
}

TEST_CASE("malformed instances raise ParseError") {
  const json base = read_json_file(SNN_FIXTURES "/two_query.json");
  auto broken = [&](auto edit) {
    json j = base;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(load_instance(SNN_FIXTURES "/malformed.json"), ParseError);
  CHECK_THROWS_AS(load_instance(SNN_FIXTURES "/missing.json"), IoError);
  CHECK_THROWS_AS(instance_from_json(broken([](json& j) { j["schema"] = "snn-instance/9"; })), ParseError);
  CHECK_THROWS_AS(instance_from_json(broken([](json& j) { j.erase("labels"); })), ParseError);
  CHECK_THROWS_AS(instance_from_json(broken([](json& j) { j["space"]["kind"] = "hamming"; })), ParseError);
  CHECK_THROWS_AS(instance_from_json(broken([](json& j) { j["labels"][0] = json::array({0, 1}); })), ParseError);
  CHECK_THROWS_AS(instance_from_json(broken([](json& j) { j["edges"] = json::array({json::array({0, 0})}); })), ParseError);
  CHECK_THROWS_AS(instance_from_json(broken([](json& j) { j["edges"] = json::array({json::array({0, 5})}); })), ParseError);
  CHECK_THROWS_AS(instance_from_json(broken([](json& j) { j["kappa"] = json::array({1.0}); })), ParseError);
  CHECK_THROWS_AS(instance_from_json(broken([](json& j) { j["kappa"] = json::array({-1.0, 1.0}); })), ParseError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"space": {"kind": "explicit-matrix", "matrix": [[0, 1], [2, 0]]},
                                                    "labels": [0], "queries": [1]})")),
                  ParseError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"space": {"kind": "explicit-matrix", "matrix": [[0, 1], [1, 0]]},
                                                    "labels": [0], "queries": [2]})")),
                  ParseError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"space": {"kind": "graph-shortest-path", "n": 3, "graph": [[0, 1, 1]]},
                                                    "labels": [0], "queries": [1]})")),
                  ParseError);
}
