#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "snn/denoise.hpp"
#include "snn/error.hpp"
#include "snn/generators.hpp"
#include "snn/image.hpp"
#include "snn/inn.hpp"
#include "snn/instance_io.hpp"
#include "snn/sparse_solver.hpp"
#include "snn/tree_labeling.hpp"
#include "snn/zero_extension.hpp"

namespace snn::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 42;

struct Common {
  std::string instance;
  std::string output;
  std::uint64_t seed = kDefaultSeed;
  double guard = 0.0;  // 0: the method's default
};

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) out << j.dump(2) << '\n';
  else write_json_file(j, path);
}

ExactMethod method_from_string(const std::string& s) {
  if (s == "enumeration") return ExactMethod::enumeration;
  if (s == "elimination") return ExactMethod::elimination;
  throw std::invalid_argument("unknown exact method '" + s + "'");
}

int cmd_solve(const Common& c, const std::string& stage2, std::ostream& out) {
  const SnnInstance inst = load_instance(c.instance);
  Stage2Solver solver;
  solver.kind = stage2_from_string(stage2);
  solver.seed = c.seed;
  if (c.guard > 0.0) solver.guard = c.guard;
  const InnResult r = inn_solve(inst, solver);
  json j = assignment_to_json(inst, r.assignment);
  j["stage2"] = to_string(r.used);
  j["pruned_labels"] = r.pruned_labels;
  j["seed"] = c.seed;
  emit(j, c.output, out);
  return kExitOk;
}

int cmd_oracle(const Common& c, const std::string& method, std::ostream& out) {
  const SnnInstance inst = load_instance(c.instance);
  inst.validate();
  const Assignment a = exact_opt(inst, inst.labels, method_from_string(method), c.guard);
  json j = assignment_to_json(inst, a);
  j["method"] = method;
  emit(j, c.output, out);
  return kExitOk;
}

int cmd_gap(const Common& c, const std::string& method, std::ostream& out) {
  const SnnInstance inst = load_instance(c.instance);
  emit(gap_to_json(pruning_gap(inst, method_from_string(method), c.guard)), c.output, out);
  return kExitOk;
}

int cmd_rplus(const Common& c, std::ostream& out) {
  const SnnInstance inst = load_instance(c.instance);
  inst.validate();
  const Orientation o = orient_edges(inst.graph);
  json j = assignment_to_json(inst, rplus_solve(inst, o));
  j["r"] = o.r;
  j["owner"] = o.owner;
  emit(j, c.output, out);
  return kExitOk;
}

int cmd_reduce(const Common& c, std::ostream& out) {
  const SnnInstance inst = load_instance(c.instance);
  inst.validate();
  emit(zero_ext_to_json(snn_to_zero_extension(inst, nearest_labels(inst))), c.output, out);
  return kExitOk;
}

int cmd_lowerbound(const Common& c, const LowerBoundParams& p, bool measure, std::ostream& out) {
  const SnnInstance inst = build_lower_bound_instance(p, c.seed);
  if (!c.output.empty()) save_instance(inst, c.output);
  json j{{"schema", "snn-lowerbound/1"},
         {"k", p.k},
         {"d", p.d},
         {"multiplicity", p.multiplicity},
         {"seed", c.seed},
         {"labels", inst.labels.size()},
         {"edge_instances", inst.graph.num_instances()},
         {"reference_cost", lower_bound_reference_cost(p)}};
  if (!c.output.empty()) j["instance"] = c.output;
  if (measure) j["gap"] = gap_to_json(pruning_gap(inst, ExactMethod::elimination));
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct NoiseOptions {
  std::string kind = "salt-and-pepper";
  double param = 0.05;
  std::uint64_t seed = kDefaultSeed;
  bool none = false;
};

int cmd_denoise(const std::string& image, const NoiseOptions& noise, std::uint64_t seed, int runs,
                const std::string& name, const std::string& json_out, const std::string& image_out,
                std::ostream& out) {
  if (runs < 1) throw std::invalid_argument("--runs must be positive");
  const Image clean = load_ppm(image);
  const Image noisy = noise.none ? clean : add_noise(clean, noise_kind_from_string(noise.kind), noise.param, noise.seed);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < runs; ++i) seeds.push_back(seed + static_cast<std::uint64_t>(i));
  const DenoiseReport r = denoise_experiment(noisy, seeds, name.empty() ? std::filesystem::path(image).stem().string() : name);
  json j = report_to_json(r);
  j["noise"] = noise.none ? json(nullptr) : json{{"kind", noise.kind}, {"param", noise.param}, {"seed", noise.seed}};
  if (!json_out.empty()) write_json_file(j, json_out);
  if (!image_out.empty()) {
    const std::filesystem::path base(image_out);
    save_ppm(noisy, base.string() + ".noisy.ppm");
    save_ppm(denoise_pixels(noisy, LabelSpace::full, seed).output, base.string() + ".full.ppm");
    save_ppm(denoise_pixels(noisy, LabelSpace::image, seed).output, base.string() + ".image.ppm");
  }
  out << report_table({r});
  return kExitOk;
}

int cmd_denoise_patches(const std::string& image, const NoiseOptions& noise, const std::string& image_out,
                        const std::string& json_out, std::ostream& out) {
  const Image clean = load_ppm(image);
  const PatchDenoiseResult r = noise.none ? denoise_patches_noisy(clean, clean)
                                          : denoise_patches(clean, noise.seed, noise_kind_from_string(noise.kind), noise.param);
  if (!image_out.empty()) save_ppm(r.output, image_out);
  json j{{"schema", "snn-patches/1"},
         {"cost", r.cost},
         {"database_size", r.database_size},
         {"query_count", r.query_count},
         {"output_checksum", image_checksum(r.output)}};
  if (!json_out.empty()) write_json_file(j, json_out);
  out << j.dump(2) << '\n';
  return kExitOk;
}

// Grid-structured denoising-style instance: random colors as labels, noisy
// queries on a side x side grid.
SnnInstance bench_instance(int side, int num_labels, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> color(0.0, 255.0);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < num_labels + side * side; ++i) pts.push_back({color(rng), color(rng), color(rng)});
  SnnInstance inst;
  inst.space = MetricSpace::euclidean(std::move(pts));
  for (int l = 0; l < num_labels; ++l) inst.labels.push_back(l);
  for (int i = 0; i < side * side; ++i) inst.queries.push_back(num_labels + i);
  inst.graph = grid_graph(side, side);
  return inst;
}

int cmd_bench(const std::vector<int>& sides, int num_labels, std::uint64_t seed, const std::string& json_out,
              std::ostream& out) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double, std::milli>(b - a).count(); };
  std::mt19937_64 rng(seed);
  json rows = json::array();
  out << "side | queries | labels | pruned | nn-prune ms | tree ms | rplus ms | tree cost | rplus cost\n";
  for (int side : sides) {
    if (side < 1) throw std::invalid_argument("grid side must be positive");
    const SnnInstance inst = bench_instance(side, num_labels, rng);
    const auto t0 = clock::now();
    const std::vector<PointId> nn = nearest_labels(inst);
    const SnnInstance pruned = with_labels(inst, dedup(nn));
    const auto t1 = clock::now();
    const Assignment tree = tree_labeling_solve(pruned, seed);
    const auto t2 = clock::now();
    const Assignment rp = rplus_solve(pruned, orient_edges(pruned.graph));
    const auto t3 = clock::now();
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d | %zu | %zu | %zu | %.2f | %.2f | %.2f | %.1f | %.1f\n", side, inst.k(),
                  inst.labels.size(), pruned.labels.size(), ms(t0, t1), ms(t1, t2), ms(t2, t3), tree.total, rp.total);
    out << buf;
    rows.push_back({{"side", side},
                    {"queries", inst.k()},
                    {"labels", inst.labels.size()},
                    {"pruned_labels", pruned.labels.size()},
                    {"ms", {{"nn_prune", ms(t0, t1)}, {"tree", ms(t1, t2)}, {"rplus", ms(t2, t3)}}},
                    {"cost", {{"tree", tree.total}, {"rplus", rp.total}}}});
  }
  if (!json_out.empty()) write_json_file(json{{"schema", "snn-bench/1"}, {"seed", seed}, {"rows", rows}}, json_out);
  return kExitOk;
}

void add_instance_opts(CLI::App* sub, Common& c, bool with_guard) {
  sub->add_option("instance", c.instance, "Instance JSON file")->required();
  sub->add_option("-o,--output", c.output, "Write JSON here instead of stdout");
  if (with_guard) {
    sub->add_option("--guard", c.guard,
                    "Search size limit: |labels|^k for enumeration (default 1e7), table entries visited for elimination "
                    "(default 2e10)");
  }
}

void add_noise_opts(CLI::App* sub, NoiseOptions& n) {
  sub->add_option("--noise", n.kind, "salt-and-pepper | gaussian")->capture_default_str();
  sub->add_option("--noise-param", n.param, "Density (salt-and-pepper) or sigma (gaussian)")->capture_default_str();
  sub->add_option("--noise-seed", n.seed, "Noise generator seed")->capture_default_str();
  sub->add_flag("--no-noise", n.none, "Use the input image as is");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simultaneous nearest neighbor search", "snn"};
  app.require_subcommand(1);

  Common c;
  std::string stage2 = "auto";
  std::string method = "enumeration";

  auto* solve = app.add_subcommand("solve", "Prune to nearest labels, then solve over them");
  add_instance_opts(solve, c, true);
  solve->add_option("--stage2", stage2, "auto | exact | tree | rplus")->capture_default_str();
  solve->add_option("--seed", c.seed, "Tree heuristic seed")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Exact optimum over the full label set");
  add_instance_opts(oracle, c, true);
  oracle->add_option("--method", method, "enumeration | elimination")->capture_default_str();

  auto* gap = app.add_subcommand("gap", "Exact pruning gap");
  add_instance_opts(gap, c, true);
  gap->add_option("--method", method, "enumeration | elimination")->capture_default_str();

  auto* rplus = app.add_subcommand("rplus", "Orientation-based aggregate solver over the full label set");
  add_instance_opts(rplus, c, false);

  auto* reduce = app.add_subcommand("reduce", "Emit the 0-extension instance");
  add_instance_opts(reduce, c, false);

  LowerBoundParams lb;
  bool measure = false;
  auto* lower = app.add_subcommand("lowerbound", "Generate an expander-plus-leaves instance");
  lower->add_option("--k", lb.k, "Queries")->capture_default_str();
  lower->add_option("--d", lb.d, "Expander degree")->capture_default_str();
  lower->add_option("--mult", lb.multiplicity, "Edge copies and leaf distance")->capture_default_str();
  lower->add_option("--seed", c.seed, "Graph seed")->capture_default_str();
  lower->add_option("-o,--output", c.output, "Instance file to write");
  lower->add_flag("--measure", measure, "Also compute the exact pruning gap");

  NoiseOptions noise;
  int runs = 20;
  std::string name, json_out, image_out;
  std::string image;
  auto* denoise = app.add_subcommand("denoise", "Pixel denoising, full lattice vs image palette");
  denoise->add_option("image", image, "Clean P6 PPM")->required();
  add_noise_opts(denoise, noise);
  denoise->add_option("--seed", c.seed, "First kd-tree seed")->capture_default_str();
  denoise->add_option("--runs", runs, "Number of kd-tree seeds")->capture_default_str();
  denoise->add_option("--name", name, "Row name in the table");
  denoise->add_option("--json", json_out, "Write the report JSON here");
  denoise->add_option("--image-out", image_out, "Write <prefix>.{noisy,full,image}.ppm");

  auto* patches = app.add_subcommand("denoise-patches", "Denoise the right half from left-half patches");
  patches->add_option("image", image, "Clean P6 PPM")->required();
  add_noise_opts(patches, noise);
  patches->add_option("-o,--output", image_out, "Output PPM");
  patches->add_option("--json", json_out, "Write the summary JSON here");

  std::vector<int> sides{16, 32, 64};
  int bench_labels = 512;
  auto* bench = app.add_subcommand("bench", "Per-stage wall clock on grid instances");
  bench->add_option("--sides", sides, "Grid side lengths")->capture_default_str();
  bench->add_option("--labels", bench_labels, "Label count")->capture_default_str();
  bench->add_option("--seed", c.seed, "Instance seed")->capture_default_str();
  bench->add_option("--json", json_out, "Write timings JSON here");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(c, stage2, out);
    if (*oracle) return cmd_oracle(c, method, out);
    if (*gap) return cmd_gap(c, method, out);
    if (*rplus) return cmd_rplus(c, out);
    if (*reduce) return cmd_reduce(c, out);
    if (*lower) return cmd_lowerbound(c, lb, measure, out);
    if (*denoise) return cmd_denoise(image, noise, c.seed, runs, name, json_out, image_out, out);
    if (*patches) return cmd_denoise_patches(image, noise, image_out, json_out, out);
    if (*bench) return cmd_bench(sides, bench_labels, c.seed, json_out, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace snn::cli
