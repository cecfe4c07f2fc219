#include "mps/kuratowski.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "mps/planarity.hpp"

namespace mps {
namespace {

/// One-pass greedy minimization: planarity is monotone under edge deletion,
/// so an edge that cannot be deleted now can never be deleted later, and a
/// single sweep already yields an edge-minimal non-planar subgraph.
EdgeSelection minimize_nonplanar(const WeightedGraph& g, const EdgeSelection& start,
                                 const std::vector<EdgeId>& order, size_t rot) {
    EdgeSelection cur = start;
    for (size_t i = 0; i < order.size(); ++i) {
        const EdgeId e = order[(i + rot) % order.size()];
        if (!cur.contains(e)) continue;
        cur.set(e, false);
        if (is_planar(g, cur)) cur.set(e, true);
    }
    return cur;
}

/// Classifies an edge-minimal non-planar edge set as a K5 or K3,3 subdivision
/// by contracting its degree-2 paths.
KuratowskiSubdivision classify(const WeightedGraph& g, const EdgeSelection& sub) {
    std::vector<int> deg(static_cast<size_t>(g.node_count()), 0);
    std::vector<EdgeId> edges = sub.to_edge_list();
    for (EdgeId e : edges) {
        ++deg[static_cast<size_t>(g.edge(e).u)];
        ++deg[static_cast<size_t>(g.edge(e).v)];
    }
    std::vector<NodeId> branch;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (deg[static_cast<size_t>(v)] >= 3) branch.push_back(v);
        if (deg[static_cast<size_t>(v)] == 1)
            throw Error("internal: minimal non-planar subgraph has a degree-1 node");
    }
    // Walk each branch-to-branch path through degree-2 nodes.
    std::map<std::pair<NodeId, NodeId>, int> contracted;
    std::set<ArcId> walked;
    for (NodeId b : branch) {
        for (size_t i = 0; i < g.neighbors(b).size(); ++i) {
            const EdgeId e0 = g.incident_edges(b)[i];
            if (!sub.contains(e0)) continue;
            const ArcId start = g.arc_from(e0, b);
            if (walked.count(start)) continue;
            NodeId prev = b;
            NodeId cur = g.neighbors(b)[i];
            walked.insert(start);
            while (deg[static_cast<size_t>(cur)] == 2) {
                const auto nbs = g.neighbors(cur);
                const auto eids = g.incident_edges(cur);
                NodeId nxt = -1;
                for (size_t j = 0; j < nbs.size(); ++j) {
                    if (!sub.contains(eids[j]) || nbs[j] == prev) continue;
                    nxt = nbs[j];
                    walked.insert(g.arc_from(eids[j], cur));
                    break;
                }
                if (nxt == -1) throw Error("internal: broken subdivision path");
                prev = cur;
                cur = nxt;
            }
            walked.insert(g.arc_from(*g.find_edge(prev, cur), cur));
            const NodeId x = std::min(b, cur), y = std::max(b, cur);
            if (x == y) throw Error("internal: subdivision path loops back");
            ++contracted[{x, y}];
        }
    }
    for (auto& [pair, cnt] : contracted) {
        // The reverse arc of each walked path is marked, so every branch pair
        // is recorded exactly once; K5/K3,3 have no parallel branch paths.
        if (cnt != 1) throw Error("internal: subdivision path multiplicity " + std::to_string(cnt));
    }
    KuratowskiSubdivision out;
    out.edges = std::move(edges);
    out.branch_nodes = branch;
    if (branch.size() == 5 && contracted.size() == 10) {
        out.kind = KuratowskiKind::K5;
        for (NodeId b : branch)
            if (deg[static_cast<size_t>(b)] != 4) throw Error("internal: K5 branch node of wrong degree");
        return out;
    }
    if (branch.size() == 6 && contracted.size() == 9) {
        out.kind = KuratowskiKind::K33;
        for (NodeId b : branch)
            if (deg[static_cast<size_t>(b)] != 3) throw Error("internal: K33 branch node of wrong degree");
        // The contracted graph must be K3,3: 3-regular bipartite with 3+3 parts.
        std::map<NodeId, int> color;
        color[branch[0]] = 0;
        std::vector<NodeId> stack{branch[0]};
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (const auto& [pair, cnt] : contracted) {
                NodeId other = -1;
                if (pair.first == v) other = pair.second;
                if (pair.second == v) other = pair.first;
                if (other == -1) continue;
                if (!color.count(other)) {
                    color[other] = 1 - color[v];
                    stack.push_back(other);
                } else if (color[other] == color[v]) {
                    throw Error("internal: contracted 6-branch graph is not bipartite");
                }
            }
        }
        int zeros = 0;
        for (const auto& [node, c] : color) zeros += (c == 0);
        if (color.size() != 6 || zeros != 3)
            throw Error("internal: contracted 6-branch graph is not 3+3 bipartite");
        return out;
    }
    throw Error("internal: minimal non-planar subgraph contracts to neither K5 nor K3,3");
}

} // namespace

std::vector<KuratowskiSubdivision> extract_kuratowskis(const WeightedGraph& g, const EdgeSelection& sel,
                                                       int limit) {
    if (limit < 1) throw Error("extraction limit must be >= 1");
    if (is_planar(g, sel)) throw NotNonPlanar("selection is planar; nothing to extract");

    const std::vector<EdgeId> base_order = sel.to_edge_list();
    std::vector<KuratowskiSubdivision> results;
    std::set<std::vector<EdgeId>> seen;

    auto try_extract = [&](const EdgeSelection& start, size_t rot) -> const KuratowskiSubdivision* {
        EdgeSelection minimal = minimize_nonplanar(g, start, base_order, rot);
        KuratowskiSubdivision k = classify(g, minimal);
        if (!seen.insert(k.edges).second) return nullptr;
        results.push_back(std::move(k));
        return &results.back();
    };

    // Round 1: perturbed deletion orders over the full selection.
    const size_t rot_step = std::max<size_t>(1, base_order.size() / 8);
    for (size_t rot = 0; rot < base_order.size() && static_cast<int>(results.size()) < limit;
         rot += rot_step) {
        try_extract(sel, rot);
        if (rot_step == 0) break;
    }

    // Round 2: drop one edge of an already-found subdivision and re-extract,
    // breadth-first over discoveries.
    std::set<EdgeId> dropped_tried;
    for (size_t qi = 0; qi < results.size() && static_cast<int>(results.size()) < limit; ++qi) {
        const std::vector<EdgeId> edges = results[qi].edges; // copy: results grows
        for (EdgeId e : edges) {
            if (static_cast<int>(results.size()) >= limit) break;
            if (!dropped_tried.insert(e).second) continue;
            EdgeSelection cand = sel;
            cand.set(e, false);
            if (!is_planar(g, cand)) try_extract(cand, 0);
        }
    }
    return results;
}

} // namespace mps
