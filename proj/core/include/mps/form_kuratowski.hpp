#pragma once

#include "mps/graph.hpp"
#include "mps/pb_model.hpp"

namespace mps {

struct KuratowskiConfig {
    int max_constraints_per_round = 50;
    int max_extractions_per_round = 250;
    /// Rank rounds by constraint size ascending (smaller support cuts deeper
    /// at 0/1 points); when false, extraction order is kept.
    bool keep_most_violated = true;
    /// Rounding thresholds for separating on fractional points when an
    /// external LP solver is attached; unused by the native solver, which
    /// only ever separates integral assignments.
    double round_threshold_first = 0.99;
    double round_threshold_second = 0.9;
};

/// Model over one selection variable per edge (named s_<u>_<v>, ids aligned
/// with edge ids), objective = edge weights, the Euler edge-count bound
/// (emitted for n >= 3), and the subdivision constraints of the selected
/// subgraph installed as a lazy separator.
PBModel build_kuratowski_model(const WeightedGraph& g, const KuratowskiConfig& cfg = {});

/// The lazy family: extracts subdivisions of the subgraph selected by the
/// first edge_count entries of `assignment` and returns one constraint
/// "sum of the subdivision's s-vars <= |edges| - 1" per subdivision, at most
/// cfg.max_constraints_per_round of them chosen from up to
/// cfg.max_extractions_per_round extractions. Empty for planar selections.
std::vector<LinConstraint> separate_kuratowski(const WeightedGraph& g, const Assignment& assignment,
                                               const KuratowskiConfig& cfg = {});

} // namespace mps
