#pragma once

#include <cstdint>
#include <vector>

#include "mps/graph.hpp"

namespace mps::testsupport {

WeightedGraph complete_graph(int n);
WeightedGraph complete_bipartite(int a, int b);
WeightedGraph petersen();
WeightedGraph grid_graph(int rows, int cols);
WeightedGraph path_graph(int n);
WeightedGraph cycle_graph(int n);

/// K5 with edge {0,1} replaced by the path 0-5-1 (n=6, m=11).
WeightedGraph k5_subdivided_once();

/// Deterministic connected random graph: random spanning tree plus extra
/// edges, unit weights. extra_edges is a target; duplicates are skipped, so
/// the result has between n-1 and n-1+extra_edges edges.
WeightedGraph random_connected(int n, int extra_edges, std::uint64_t seed);

/// Same shape but with random weights in [1, max_weight].
WeightedGraph random_connected_weighted(int n, int extra_edges, std::int64_t max_weight, std::uint64_t seed);

/// All graphs on exactly n labeled nodes (one per edge subset).
/// Caller beware: 2^(n choose 2) graphs.
std::vector<WeightedGraph> all_graphs_on(int n);

} // namespace mps::testsupport
