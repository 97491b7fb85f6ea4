// Instances and results cross the boundary as JSON text in the same schemas
// the CLI reads and writes; python/snn/__init__.py converts them to dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "snn/denoise.hpp"
#include "snn/error.hpp"
#include "snn/generators.hpp"
#include "snn/graph.hpp"
#include "snn/image.hpp"
#include "snn/inn.hpp"
#include "snn/instance.hpp"
#include "snn/instance_io.hpp"
#include "snn/sparse_solver.hpp"
#include "snn/zero_extension.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace snn;

namespace {

SnnInstance parse(const std::string& text) {
  SnnInstance inst = instance_from_json(json::parse(text));
  inst.validate();
  return inst;
}

ExactMethod method_of(const std::string& s) {
  if (s == "enumeration") return ExactMethod::enumeration;
  if (s == "elimination") return ExactMethod::elimination;
  throw std::invalid_argument("unknown exact method '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_snn, m) {
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);

  m.def("cost", [](const std::string& inst, const std::vector<PointId>& labels) {
    const SnnInstance i = parse(inst);
    return assignment_to_json(i, cost(i, labels)).dump();
  });

  m.def(
      "solve",
      [](const std::string& inst, const std::string& stage2, std::uint64_t seed) {
        const SnnInstance i = parse(inst);
        Stage2Solver solver;
        solver.kind = stage2_from_string(stage2);
        solver.seed = seed;
        const InnResult r = inn_solve(i, solver);
        json j = assignment_to_json(i, r.assignment);
        j["stage2"] = to_string(r.used);
        j["pruned_labels"] = r.pruned_labels;
        return j.dump();
      },
      py::arg("instance"), py::arg("stage2") = "auto", py::arg("seed") = 42);

  m.def(
      "oracle",
      [](const std::string& inst, const std::string& method, double guard) {
        const SnnInstance i = parse(inst);
        return assignment_to_json(i, exact_opt(i, i.labels, method_of(method), guard)).dump();
      },
      py::arg("instance"), py::arg("method") = "enumeration", py::arg("guard") = 0.0);

  m.def(
      "gap",
      [](const std::string& inst, const std::string& method) {
        return gap_to_json(pruning_gap(parse(inst), method_of(method))).dump();
      },
      py::arg("instance"), py::arg("method") = "enumeration");

  m.def("rplus", [](const std::string& inst) {
    const SnnInstance i = parse(inst);
    const Orientation o = orient_edges(i.graph);
    json j = assignment_to_json(i, rplus_solve(i, o));
    j["r"] = o.r;
    j["owner"] = o.owner;
    return j.dump();
  });

  m.def("reduce", [](const std::string& inst) {
    const SnnInstance i = parse(inst);
    return zero_ext_to_json(snn_to_zero_extension(i, nearest_labels(i))).dump();
  });

  m.def(
      "lower_bound_instance",
      [](int k, int d, int mult, std::uint64_t seed) {
        return instance_to_json(build_lower_bound_instance({k, d, mult}, seed)).dump();
      },
      py::arg("k"), py::arg("d") = 3, py::arg("mult") = 2, py::arg("seed") = 42);

  m.def(
      "denoise",
      [](const std::string& path, int runs, std::uint64_t seed, const std::string& noise, double noise_param,
         std::uint64_t noise_seed) {
        if (runs < 1) throw std::invalid_argument("runs must be positive");
        const Image noisy = add_noise(load_ppm(path), noise_kind_from_string(noise), noise_param, noise_seed);
        std::vector<std::uint64_t> seeds;
        for (int r = 0; r < runs; ++r) seeds.push_back(seed + static_cast<std::uint64_t>(r));
        py::gil_scoped_release release;
        return report_to_json(denoise_experiment(noisy, seeds)).dump();
      },
      py::arg("path"), py::arg("runs") = 20, py::arg("seed") = 42, py::arg("noise") = "salt-and-pepper",
      py::arg("noise_param") = 0.05, py::arg("noise_seed") = 42);
}
