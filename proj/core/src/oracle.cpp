#include "mps/oracle.hpp"

#include <string>

#include "mps/planarity.hpp"

namespace mps {
namespace {

/// Finds a deleted-edge set of weight exactly `remaining` (considering edges
/// id >= idx) whose removal from `work` leaves a planar graph. On success
/// `work` holds the planar complement.
bool search_exact_deletion(const WeightedGraph& g, EdgeSelection& work, EdgeId idx,
                           std::int64_t remaining, const std::vector<std::int64_t>& suffix_weight) {
    if (remaining == 0) return is_planar(g, work);
    if (idx >= g.edge_count()) return false;
    if (suffix_weight[static_cast<size_t>(idx)] < remaining) return false;
    // Delete edge idx if it fits the budget.
    if (g.weight(idx) <= remaining) {
        work.set(idx, false);
        if (search_exact_deletion(g, work, idx + 1, remaining - g.weight(idx), suffix_weight)) return true;
        work.set(idx, true);
    }
    return search_exact_deletion(g, work, idx + 1, remaining, suffix_weight);
}

} // namespace

OracleResult oracle_mps(const WeightedGraph& g, int max_edges) {
    if (g.edge_count() > max_edges)
        throw InstanceTooLarge("oracle refuses m=" + std::to_string(g.edge_count()) + " > " +
                               std::to_string(max_edges) + " edges");
    std::vector<std::int64_t> suffix_weight(static_cast<size_t>(g.edge_count()) + 1, 0);
    for (EdgeId e = g.edge_count() - 1; e >= 0; --e)
        suffix_weight[static_cast<size_t>(e)] = suffix_weight[static_cast<size_t>(e) + 1] + g.weight(e);

    for (std::int64_t deleted = 0; deleted <= g.total_weight(); ++deleted) {
        EdgeSelection work = EdgeSelection::all_of(g);
        if (search_exact_deletion(g, work, 0, deleted, suffix_weight)) {
            OracleResult res;
            res.skewness = deleted;
            res.max_weight = g.total_weight() - deleted;
            res.selection = std::move(work);
            return res;
        }
    }
    throw Error("internal: oracle found no planar subgraph (unreachable: the empty selection is planar)");
}

std::int64_t oracle_skewness(const WeightedGraph& g, int max_edges) {
    return oracle_mps(g, max_edges).skewness;
}

} // namespace mps
