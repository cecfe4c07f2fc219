#pragma once

#include <optional>
#include <vector>

#include "mps/graph.hpp"
#include "mps/pb_model.hpp"
#include "mps/pb_solver.hpp"

namespace mps {

/// Options for the left-right edge-coloring model.
struct LeftRightConfig {
    /// Pin tree arcs and unselected edges to the blue color class, cutting
    /// off color-swapped copies of every solution.
    bool symmetry_blue = true;
    /// Force the unique first-feasible-edge DFS tree for every selection:
    /// no arc enters the root, every other node has exactly one tree parent,
    /// and at each node the earliest kept edge in adjacency order is the one
    /// that enters the tree.
    bool unique_tree = true;
    /// Use dfs_branch_rule instead of the solver's default variable choice.
    /// Consumed by callers that assemble SolveOptions; the model itself is
    /// identical either way.
    bool dfs_branching = true;
    /// Cap on coloring constraints emitted per separation round; values <= 0
    /// mean unlimited.
    int max_coloring_constraints_per_round = 1000;
};

/// Builds the left-right edge-coloring model over graph `g`.
///
/// Variables (ids in this order): selection bits s_<u>_<v> per edge, tree
/// bits t_<tail>_<head> per arc (arc ids 2e and 2e+1), order bits l_<u>_<v>
/// for every ordered node pair including the diagonal (l_u_v == 1 means u
/// lies on the root path of v), and color bits r_<u>_<v> per edge (1 = red).
/// A feasible integral point selects a planar subgraph, a Trémaux tree of it
/// spanning all nodes, the exact ancestor order of that tree, and a cotree
/// coloring consistent with the left-right planarity criterion.
///
/// The explicit rows force the tree/order structure; the criterion itself
/// (same color for T-alike cotree pairs, different colors for T-opposite
/// ones) is exponential and installed as the lazy family "bicoloring",
/// separated by separate_bicoloring with the configured per-round cap.
///
/// Throws Disconnected when g is not connected and Error when root is not a
/// node of g.
PBModel build_leftright_model(const WeightedGraph& g, const LeftRightConfig& cfg = {},
                              NodeId root = 0);

/// Finds coloring constraints violated by an integral assignment over the
/// layout of build_leftright_model.
///
/// Decodes the selection, the tree and the order, then scans cotree arc
/// pairs (sorted by source then target node) for the three inducing
/// configurations: a third cotree arc below both that forces equal colors,
/// and the one- and two-extra-arc patterns that force opposite colors. Each
/// match fixes witness nodes (lowest ids that make the corresponding row
/// tight) and contributes the violated member of its row pair, up to `limit`
/// rows (limit <= 0 means unlimited).
///
/// If some node has two incoming arcs — reachable at integral points only
/// when the single-parent equalities are disabled via LeftRightConfig — the
/// round instead returns pairwise in-degree rows (t_a + t_b <= 1) restoring
/// them lazily, one per offending node.
///
/// Throws LengthMismatch when the assignment length is wrong, MalformedTree
/// when the t bits do not otherwise encode a spanning tree of the selection
/// or the l bits are not exactly its ancestor closure, and Error when the
/// selection is non-planar yet no violated row exists (broken matcher guard;
/// the criterion says this cannot happen).
std::vector<LinConstraint> separate_bicoloring(const WeightedGraph& g, const Assignment& a,
                                               int limit = 0);

/// One decision of the DFS branching scheme: walks the locally kept edges
/// (upper bound of s_e is 1) depth-first from the root in adjacency order,
/// descending through arcs already fixed into the tree, and stops at the
/// first tree-candidate edge not yet committed. The first child drops the
/// edge, the second fixes it into the tree (two variables at once). An edge
/// whose s bit is already 1 branches on the arc bit alone, and one whose
/// arc bit is already 0 branches on the s bit alone.
///
/// Throws NoFreeEdge when the walk finds no undecided candidate.
BranchPlan dfs_branch_plan(const WeightedGraph& g, NodeId root, const NodeBounds& bounds);

/// The same scheme packaged as a solver branch rule; NoFreeEdge becomes a
/// fallback to the solver's default rule.
BranchRule dfs_branch_rule(const WeightedGraph& g, NodeId root = 0);

/// Turns a planar, spanning, connected selection into a full assignment:
/// canonical DFS tree from `root` over the selected edges, its ancestor
/// closure, and a cotree coloring obtained by propagating the equal/opposite
/// color relations through a union-find with parity. Returns nullopt when
/// the selection is non-planar or does not span all nodes, or when the
/// relation propagation contradicts itself (cannot happen on planar input).
std::optional<Assignment> leftright_warm_start(const WeightedGraph& g, const EdgeSelection& sel,
                                               NodeId root = 0);

} // namespace mps
