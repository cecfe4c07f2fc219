#pragma once

#include "mps/graph.hpp"
#include "mps/pb_model.hpp"

namespace mps {

/// Shared variable-layout rule for every formulation: the selection variables
/// come first and are aligned with edge ids, so variable e is named
/// s_<u>_<v> (u < v) and carries the edge weight as objective coefficient.
/// Auxiliary variables of a formulation always follow this block.
void add_selection_vars(PBModel& model, const WeightedGraph& g);

/// Selected subgraph encoded by the leading edge_count entries of `a`.
/// Throws LengthMismatch if `a` is shorter than the edge count.
EdgeSelection selection_from_assignment(const WeightedGraph& g, const Assignment& a);

} // namespace mps
