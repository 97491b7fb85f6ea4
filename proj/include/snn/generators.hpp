#pragma once

#include <cstdint>
#include <random>

#include "snn/instance.hpp"

namespace snn {

struct LowerBoundParams {
  int k = 16;            // queries (expander vertices)
  int d = 3;             // expander degree
  int multiplicity = 2;  // copies per expander edge, also the leaf edge weight
};

/// Expander-plus-leaves family: a random connected d-regular graph H on
/// v_0..v_{k-1} (unit weights), each v_i with a pendant leaf u_i at distance
/// `multiplicity`. Space ids 0..k-1 are the v_i, k..2k-1 the u_i. P is every
/// vertex, Q = {u_i}, and G repeats each H edge `multiplicity` times between
/// the corresponding queries.
SnnInstance build_lower_bound_instance(const LowerBoundParams& p, std::uint64_t seed);

/// Cost of the labeling p_i = v_i on a lower-bound instance:
/// k * mult + (k * d / 2) * mult.
double lower_bound_reference_cost(const LowerBoundParams& p);

enum class RandomMetric { euclidean, matrix, any };

struct RandomInstanceSpec {
  int max_k = 6;
  int max_labels = 8;
  RandomMetric metric = RandomMetric::any;
  int max_mult = 2;
  double edge_prob = 0.5;
};

/// Small random instance for oracle sweeps: euclidean points in 1-3
/// dimensions, or a shortest-path closure of random weights (a valid finite
/// metric over labels and queries). Random multigraph over the queries.
SnnInstance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng);

/// Random Erdos-Renyi multigraph with edge multiplicities in [1, max_mult].
CompatGraph random_graph(int n, double edge_prob, int max_mult, std::mt19937_64& rng);

}  // namespace snn
