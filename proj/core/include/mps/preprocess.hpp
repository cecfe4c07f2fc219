#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mps/graph.hpp"

namespace mps {

/// One non-planar core produced by the reduction, with the data needed to map
/// its solutions back to the original graph.
struct CoreLift {
    WeightedGraph core;
    /// core edge id -> original edge ids on the path it represents
    std::vector<std::vector<EdgeId>> edge_lift;
    /// core node id -> original node id
    std::vector<NodeId> node_map;
    /// original connected component this core came from
    int component = 0;
};

/// Result of the reduction: a set of biconnected non-planar cores plus the
/// weight that is secured no matter what (planar components/blocks, and the
/// surplus of suppressed paths over their min-weight edges).
struct NpcReduction {
    std::vector<CoreLift> cores;
    std::int64_t secured_weight = 0;
    /// secured weight per original connected component
    std::vector<std::int64_t> component_offsets;
    int component_count = 0;
    /// original node id -> connected component id
    std::vector<int> node_component;
};

/// Reduction: split into connected components, then biconnected blocks;
/// planar blocks are secured wholesale; each non-planar block becomes a core
/// after repeatedly suppressing degree-2 nodes (merging the two incident
/// edges into one of weight min(w1, w2), skipping merges that would create a
/// parallel edge). Skewness is preserved: skew(g) = sum of core skewnesses.
NpcReduction reduce(const WeightedGraph& g);

/// Maps per-core planar selections back to an original-graph selection. A
/// deleted core edge deletes exactly one minimum-weight original edge on its
/// path (first by edge id); everything else is kept. The lifted selection's
/// weight is secured_weight + sum of core selection weights.
/// Throws LengthMismatch (selection count/size off) and NonPlanarCoreSolution
/// (a core selection fails the planarity test).
EdgeSelection lift(const WeightedGraph& g, const NpcReduction& red,
                   std::span<const EdgeSelection> core_selections);

} // namespace mps
