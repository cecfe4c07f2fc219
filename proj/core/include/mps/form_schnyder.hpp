#pragma once

#include <vector>

#include "mps/graph.hpp"
#include "mps/pb_model.hpp"

namespace mps {

struct SchnyderConfig {
    /// Cap each ordered pair at two of the three orders. Any non-trivial
    /// solution satisfies this anyway; keeping it on prunes earlier.
    bool intersection_constraints = true;
    /// Pin the realizing orders of one triangle (or of two adjacent edges in
    /// triangle-free graphs) by zeroing the other witness variables.
    bool symmetry_breaking = true;
    enum class Transitivity { Explicit, Lazy };
    /// Transitivity rows are emitted up front by default; Lazy separates the
    /// violated ones instead.
    Transitivity transitivity = Transitivity::Explicit;
};

/// Planarity via order dimension: three total orders on the nodes, encoded by
/// t_<i>_<u>_<v> ("u before v in order i"), must witness every selected edge
/// against every non-incident node through a_<i>_<u>_<w>_<z> variables
/// (edge {u,w}, u < w, witness node z). The edge block comes first, then the
/// t block (order-major), then the a block (order-major).
/// Throws TooFewNodes for n < 3.
PBModel build_schnyder_model(const WeightedGraph& g, const SchnyderConfig& cfg = {});

/// Every transitivity row violated by `assignment`, in (i, u, v, w) order,
/// capped at 1000 per round.
std::vector<LinConstraint> separate_transitivity(const WeightedGraph& g,
                                                 const Assignment& assignment);

} // namespace mps
