#pragma once

#include <cstdint>

#include "mps/graph.hpp"

namespace mps {

struct OracleResult {
    std::int64_t max_weight = 0; ///< weight of a maximum planar edge selection
    std::int64_t skewness = 0;   ///< minimum deleted weight = total - max_weight
    EdgeSelection selection;     ///< one optimal selection (deterministic)
};

/// Brute-force maximum planar subgraph by iterative deepening over the total
/// deleted weight: for D = 0, 1, 2, ... enumerate all edge subsets of weight
/// exactly D and test planarity of the complement. Exact but exponential;
/// refuses instances with more than `max_edges` edges.
/// Throws InstanceTooLarge.
OracleResult oracle_mps(const WeightedGraph& g, int max_edges = 30);

std::int64_t oracle_skewness(const WeightedGraph& g, int max_edges = 30);

} // namespace mps
