#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "snn/instance.hpp"

namespace snn {

inline constexpr const char* kInstanceSchema = "snn-instance/1";
inline constexpr const char* kAssignmentSchema = "snn-assignment/1";
inline constexpr const char* kGapSchema = "snn-gap/1";

/// Instance JSON layout:
///
///   { "schema": "snn-instance/1",
///     "space":  { "kind": "euclidean", "dim": d }
///             | { "kind": "explicit-matrix", "matrix": [[...], ...] }
///             | { "kind": "graph-shortest-path", "n": n, "graph": [[u, v, w], ...] },
///     "labels":  [[coords], ...]  (euclidean) or [id, ...],
///     "queries": same form as labels,
///     "edges":   [[i, j] | [i, j, mult], ...]   (query indices),
///     "kappa":   [..]  optional, one per query,
///     "lambda":  [..]  optional, one per edges entry }
///
/// Euclidean instances are loaded into a universe that lists the labels first,
/// then the queries.
nlohmann::json instance_to_json(const SnnInstance& inst);
SnnInstance instance_from_json(const nlohmann::json& j);

SnnInstance load_instance(const std::filesystem::path& path);
void save_instance(const SnnInstance& inst, const std::filesystem::path& path);

/// Labels are written as ids; for euclidean instances their coordinates too.
nlohmann::json assignment_to_json(const SnnInstance& inst, const Assignment& a);
Assignment assignment_from_json(const nlohmann::json& j);

nlohmann::json gap_to_json(const PruningReport& r);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace snn
