#include "snn/inn.hpp"

#include <cmath>
#include <stdexcept>

#include "snn/sparse_solver.hpp"
#include "snn/tree_labeling.hpp"

namespace snn {

std::string to_string(Stage2Kind kind) {
  switch (kind) {
    case Stage2Kind::automatic:
      return "auto";
    case Stage2Kind::exact:
      return "exact";
    case Stage2Kind::tree:
      return "tree";
    case Stage2Kind::rplus:
      return "rplus";
  }
  return "unknown";
}

Stage2Kind stage2_from_string(const std::string& s) {
  if (s == "auto") return Stage2Kind::automatic;
  if (s == "exact") return Stage2Kind::exact;
  if (s == "tree") return Stage2Kind::tree;
  if (s == "rplus") return Stage2Kind::rplus;
  throw std::invalid_argument("unknown stage-2 solver '" + s + "'");
}

InnResult inn_solve(const SnnInstance& inst, const Stage2Solver& solver) {
  inst.validate();
  InnResult r;
  r.nn_map = nearest_labels(inst);
  r.pruned_labels = dedup(r.nn_map);
  const SnnInstance pruned = with_labels(inst, r.pruned_labels);

  Stage2Kind kind = solver.kind;
  if (kind == Stage2Kind::automatic) {
    const double space = std::pow(static_cast<double>(r.pruned_labels.size()), static_cast<double>(inst.k()));
    if (inst.k() <= 8 && space <= solver.guard) kind = Stage2Kind::exact;
    else if (inst.space.kind() == MetricKind::euclidean) kind = Stage2Kind::tree;
    else kind = Stage2Kind::rplus;
  }
  r.used = kind;
  switch (kind) {
    case Stage2Kind::exact:
      r.assignment = brute_force_opt(pruned, r.pruned_labels, solver.guard);
      break;
    case Stage2Kind::tree:
      r.assignment = tree_labeling_solve(pruned, solver.seed);
      break;
    case Stage2Kind::rplus:
      r.assignment = rplus_solve(pruned, orient_edges(pruned.graph));
      break;
    case Stage2Kind::automatic:
      break;
  }
  return r;
}

}  // namespace snn
