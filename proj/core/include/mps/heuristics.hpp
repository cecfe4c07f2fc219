#pragma once

#include <cstdint>

#include "mps/graph.hpp"

namespace mps {

/// Maximal planar subgraph heuristic: greedily packs node-disjoint triangles
/// into a cactus (heaviest triangle first), then augments edge by edge in
/// weight-then-id order, re-testing planarity per candidate, until maximal.
/// Deterministic; `seed` is reserved for randomized restarts and ignored by
/// the default strategy. Throws Disconnected.
EdgeSelection cactus_heuristic(const WeightedGraph& g, std::uint64_t seed = 0);

/// True iff no single unselected edge can be added while staying planar.
/// Throws NotPlanarInput if sel itself is not planar.
bool maximality_check(const WeightedGraph& g, const EdgeSelection& sel);

} // namespace mps
