#include <doctest.h>

#include <filesystem>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "snn/image.hpp"
#include "snn/instance_io.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = snn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string fx = SNN_FIXTURES;

}  // namespace

TEST_CASE("solve") {
  const auto split = run({"solve", fx + "/two_query_forced_split.json", "--stage2", "exact"});
  REQUIRE(split.code == 0);
  const auto j = json::parse(split.out);
  CHECK(j["schema"] == "snn-assignment/1");
  CHECK(j["total"] == 12.0);
  CHECK(j["labels"] == json::array({0, 1}));
  CHECK(j["stage2"] == "exact");

  const auto oracle = json::parse(run({"oracle", fx + "/two_query.json"}).out);
  const auto rp = json::parse(run({"solve", fx + "/two_query.json", "--stage2", "rplus"}).out);
  CHECK(rp["total"].get<double>() <= 3.0 * oracle["total"].get<double>());
  CHECK(oracle["total"] == 10.0);

  const auto empty = json::parse(run({"solve", fx + "/empty_graph.json"}).out);
  CHECK(empty["pw_cost"] == 0.0);
  CHECK(empty["total"] == empty["nn_cost"]);
  CHECK(empty["total"] == 4.0);

  const auto tree = run({"solve", fx + "/empty_graph.json", "--stage2", "tree", "--seed", "3"});
  CHECK(tree.code == 0);
  CHECK(json::parse(tree.out)["total"] == 4.0);
}

TEST_CASE("gap and rplus subcommands") {
  const auto g = json::parse(run({"gap", fx + "/q_equals_p.json"}).out);
  CHECK(g["alpha"] == 1.0);
  const auto e = json::parse(run({"gap", fx + "/three_labels.json", "--method", "elimination"}).out);
  CHECK(e["alpha"] == 1.25);
  const auto r = json::parse(run({"rplus", fx + "/two_query.json"}).out);
  CHECK(r["r"] == 1);
  CHECK(r["total"] == 12.0);
  const auto z = json::parse(run({"reduce", fx + "/two_query.json"}).out);
  CHECK(z["vertices"] == 4);
}

TEST_CASE("exit codes") {
  CHECK(run({"solve", fx + "/missing.json"}).code == 2);
  CHECK(run({"solve", fx + "/malformed.json"}).code == 2);
  CHECK(run({"oracle", fx + "/three_labels.json", "--guard", "2"}).code == 3);
  CHECK(run({"gap", fx + "/three_labels.json", "--guard", "2"}).code == 3);
  CHECK(run({"solve", fx + "/two_query.json", "--stage2", "magic"}).code == 1);
  CHECK(run({"rplus", fx + "/two_query_forced_split.json"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve", fx + "/two_query.json", "-o", "/nonexistent/dir/out.json"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  for (const char* sub : {"solve", "oracle", "gap", "rplus", "lowerbound", "denoise", "denoise-patches", "bench"})
    CHECK(help.out.find(sub) != std::string::npos);
}

TEST_CASE("lowerbound writes a reloadable instance") {
  const auto path = (std::filesystem::temp_directory_path() / "snn_cli_lb.json").string();
  const auto res = run({"lowerbound", "--k", "16", "--d", "3", "--mult", "2", "-o", path});
  REQUIRE(res.code == 0);
  const auto inst = snn::load_instance(path);
  CHECK(inst.k() == 16);
  CHECK(inst.labels.size() == 32);
  CHECK(inst.graph.num_instances() == 48);
  CHECK(json::parse(res.out)["reference_cost"] == 16 * 2 + 16 * 3 * 2 / 2);
  const auto again = run({"lowerbound", "--k", "8", "--measure"});
  CHECK(json::parse(again.out)["gap"]["alpha"].get<double>() >= 1.0);
  std::filesystem::remove(path);
}

TEST_CASE("denoise report format and determinism") {
  const auto a = run({"denoise", fx + "/cartoon64.ppm", "--runs", "20", "--name", "cartoon"});
  REQUIRE(a.code == 0);
  CHECK(std::regex_search(a.out, std::regex(R"(cartoon \| \d+ ± \d+\.\d% \| \d+ ± \d+\.\d% \| \d\.\d{3})")));
  CHECK(run({"denoise", fx + "/cartoon64.ppm", "--runs", "20", "--name", "cartoon"}).out == a.out);
  const auto json_path = (std::filesystem::temp_directory_path() / "snn_cli_report.json").string();
  const auto prefix = (std::filesystem::temp_directory_path() / "snn_cli_den").string();
  REQUIRE(run({"denoise", fx + "/cartoon64.ppm", "--runs", "2", "--json", json_path, "--image-out", prefix}).code == 0);
  const auto rep = snn::read_json_file(json_path);
  CHECK(rep["schema"] == "snn-denoise-report/1");
  CHECK(rep["seeds"] == json::array({42, 43}));
  CHECK(snn::load_ppm(prefix + ".image.ppm").width == 64);
  CHECK(run({"denoise", fx + "/missing.ppm"}).code == 2);
}

TEST_CASE("denoise-patches and bench") {
  const auto out = (std::filesystem::temp_directory_path() / "snn_cli_patch.ppm").string();
  const auto p = run({"denoise-patches", fx + "/cartoon64.ppm", "-o", out, "--noise", "gaussian", "--noise-param", "10"});
  REQUIRE(p.code == 0);
  CHECK(json::parse(p.out)["query_count"] == 28 * 60);
  CHECK(snn::load_ppm(out).height == 64);
  const auto b = run({"bench", "--sides", "4", "8", "--labels", "32"});
  REQUIRE(b.code == 0);
  CHECK(std::regex_search(b.out, std::regex(R"(\n8 \| 64 \| 32 \|)")));
}
