#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snn/instance.hpp"

namespace snn {

enum class Stage2Kind {
  automatic,  // exact for k <= 8 when enumeration fits, else tree (euclidean) or rplus
  exact,
  tree,
  rplus,
};

std::string to_string(Stage2Kind kind);
Stage2Kind stage2_from_string(const std::string& s);

struct Stage2Solver {
  Stage2Kind kind = Stage2Kind::automatic;
  std::uint64_t seed = 42;    // tree heuristic
  double guard = kEnumerationGuard;  // exact oracle
};

struct InnResult {
  Assignment assignment;
  std::vector<PointId> nn_map;          // p_hat_i per query
  std::vector<PointId> pruned_labels;   // deduplicated P_hat
  Stage2Kind used = Stage2Kind::exact;
};

/// Independent nearest neighbors: prune P to P_hat = {nearest(q_i)}, then
/// solve over P_hat with the chosen stage-2 solver.
InnResult inn_solve(const SnnInstance& inst, const Stage2Solver& solver = {});

}  // namespace snn
