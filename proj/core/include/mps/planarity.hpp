#pragma once

#include <optional>
#include <vector>

#include "mps/graph.hpp"

namespace mps {

/// Rotation system: for every node, the clockwise cyclic order of its incident
/// arcs (each arc listed at its tail). Nodes without selected edges have an
/// empty rotation.
struct CombinatorialEmbedding {
    std::vector<std::vector<ArcId>> rotation;
};

struct PlanarityResult {
    bool planar = false;
    /// Present iff planar.
    std::optional<CombinatorialEmbedding> embedding;
};

/// Left-right planarity test of the subgraph given by `sel`. Produces a
/// combinatorial embedding on success. Runs once per connected component of
/// the selected subgraph; isolated nodes are fine.
PlanarityResult test_planarity(const WeightedGraph& g, const EdgeSelection& sel);
PlanarityResult test_planarity(const WeightedGraph& g);

bool is_planar(const WeightedGraph& g, const EdgeSelection& sel);
bool is_planar(const WeightedGraph& g);

/// Faces of an embedding, each a closed walk of arcs.
struct FaceCensus {
    std::vector<std::vector<ArcId>> faces;
    int face_count() const { return static_cast<int>(faces.size()); }
};

/// Traces all facial walks of `emb` (next arc after a = rotation successor of
/// reverse(a) at head(a)). Assumes a structurally valid rotation.
FaceCensus trace_faces(const WeightedGraph& g, const EdgeSelection& sel, const CombinatorialEmbedding& emb);

/// Checks that the rotation covers exactly the selected arcs (each selected
/// arc once at its tail, nothing else) and returns the face census. Euler's
/// formula is the caller's business: genus > 0 rotations are legal input here.
/// Throws InconsistentRotation on structural violations.
FaceCensus verify_embedding(const WeightedGraph& g, const EdgeSelection& sel, const CombinatorialEmbedding& emb);

/// True iff face-tracing `emb` gives n - m + f = 2 on every connected
/// component of the selected subgraph that has at least one edge (i.e. the
/// rotation system is a genus-0 embedding of every component).
bool embedding_is_planar(const WeightedGraph& g, const EdgeSelection& sel, const FaceCensus& census);

} // namespace mps
