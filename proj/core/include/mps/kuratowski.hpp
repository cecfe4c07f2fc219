#pragma once

#include <vector>

#include "mps/graph.hpp"

namespace mps {

enum class KuratowskiKind { K5, K33 };

/// A subdivision of K5 or K3,3 inside a host graph: the certificate that a
/// selection is non-planar.
struct KuratowskiSubdivision {
    KuratowskiKind kind;
    std::vector<EdgeId> edges;       ///< sorted host edge ids
    std::vector<NodeId> branch_nodes; ///< the 5 (K5) or 6 (K33) nodes of degree >= 3, sorted
};

/// Extracts up to `limit` distinct Kuratowski subdivisions contained in the
/// selected subgraph. Always finds at least one. Works by greedily deleting
/// edges while non-planarity survives (an edge-minimal non-planar graph is a
/// Kuratowski subdivision), then re-running from perturbed deletion orders and
/// from the selection minus single subdivision edges to collect alternatives.
/// Throws NotNonPlanar if the selection is planar.
std::vector<KuratowskiSubdivision> extract_kuratowskis(const WeightedGraph& g, const EdgeSelection& sel,
                                                       int limit);

} // namespace mps
