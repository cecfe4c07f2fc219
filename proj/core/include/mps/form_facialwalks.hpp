#pragma once

#include <cstdint>
#include <optional>

#include "mps/graph.hpp"
#include "mps/pb_model.hpp"

namespace mps {

struct FacialWalkConfig {
    /// Force the first three face slots to be used. Valid for connected
    /// inputs: any optimal selection of a non-planar connected graph keeps at
    /// least n + 1 edges and so has at least three faces, and planar inputs
    /// keep everything.
    bool force_first_three_faces = true;
    /// Break face-slot symmetry by using slots in order of their indices.
    bool symmetry_faces_descending = true;
    /// Replace the per-pair successor variables of every degree-3 node by a
    /// single orientation bit and the specialized coupling inequalities. Off
    /// by default for native solves; the ILP-export profile turns it on.
    bool degree3_specialization = false;
};

/// Upper bound on the number of faces any planar subgraph can attain:
/// 2 - n + min(m, 3n - 6). Throws TooFewNodes for n < 3.
std::int64_t face_bound(const WeightedGraph& g);

/// Face-counting model: selection variables s (edge block first), face slots
/// x_<i> (1-based), arc-to-face assignment c_<i>_<tail>_<head>, and successor
/// variables p_<v>_<u>_<w> (or a single p_<v> at specialized degree-3 nodes).
/// All coupling constraints are explicit; the cuts that forbid a node's
/// successor relation from splitting into several cycles are installed as a
/// lazy separator, composed with subdivision cuts as a completeness guard:
/// when a candidate's rotation is cycle-consistent but its selection is
/// non-planar (possible only for disconnected selections, which can trade
/// genus against the face count), the guard cuts it off.
/// Throws TooFewNodes for n < 3.
PBModel build_facialwalk_model(const WeightedGraph& g, const FacialWalkConfig& cfg = {});

/// The successor-cycle cut family on its own. Reads the s block and the
/// p variables of `assignment`; for every node whose successor relation on
/// selected neighbors splits into k >= 2 cycles, emits k - 1 constraints.
/// Each uses one extra cycle U and demands at least one successor pair
/// crossing from U to the other neighbors whenever the minimum-id selected
/// neighbors inside and outside U are both selected. Nodes whose successor
/// rows are not exactly-one (impossible under the explicit constraints) are
/// skipped. Degree-3-specialized nodes carry no pair variables and are not
/// examined.
std::vector<LinConstraint> separate_successor_cycles(const WeightedGraph& g,
                                                     const Assignment& assignment,
                                                     const FacialWalkConfig& cfg = {});

/// Full assignment describing the planar selection `sel`: embeds it, traces
/// the faces, and fills x/c/p accordingly. Returns nullopt when `sel` is
/// non-planar or is not connected and spanning (its face count would then
/// contradict the face-count row).
std::optional<Assignment> facialwalk_warm_start(const WeightedGraph& g, const EdgeSelection& sel,
                                                const FacialWalkConfig& cfg = {});

} // namespace mps
