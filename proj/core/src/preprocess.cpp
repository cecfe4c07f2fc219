#include "mps/preprocess.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "mps/planarity.hpp"

namespace mps {
namespace {

/// Edge lists of the biconnected blocks (Tarjan lowpoint DFS with an edge
/// stack). Bridges form single-edge blocks.
std::vector<std::vector<EdgeId>> biconnected_blocks(const WeightedGraph& g) {
    const int n = g.node_count();
    std::vector<int> disc(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<EdgeId> edge_stack;
    std::vector<std::vector<EdgeId>> blocks;
    int timer = 0;

    struct Frame {
        NodeId v;
        NodeId parent;
        size_t next_i = 0;
    };
    for (NodeId root = 0; root < n; ++root) {
        if (disc[static_cast<size_t>(root)] != -1) continue;
        std::vector<Frame> stack;
        disc[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = timer++;
        stack.push_back({root, -1});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto nbs = g.neighbors(f.v);
            const auto eids = g.incident_edges(f.v);
            if (f.next_i < nbs.size()) {
                const NodeId w = nbs[f.next_i];
                const EdgeId e = eids[f.next_i];
                ++f.next_i;
                if (disc[static_cast<size_t>(w)] == -1) {
                    edge_stack.push_back(e);
                    disc[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = timer++;
                    stack.push_back({w, f.v});
                } else if (w != f.parent && disc[static_cast<size_t>(w)] < disc[static_cast<size_t>(f.v)]) {
                    edge_stack.push_back(e);
                    low[static_cast<size_t>(f.v)] = std::min(low[static_cast<size_t>(f.v)], disc[static_cast<size_t>(w)]);
                }
            } else {
                const NodeId v = f.v;
                const NodeId parent = f.parent;
                stack.pop_back();
                if (parent == -1) continue;
                low[static_cast<size_t>(parent)] = std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(v)]);
                if (low[static_cast<size_t>(v)] >= disc[static_cast<size_t>(parent)]) {
                    // parent is a cut vertex (or the root): pop one block
                    std::vector<EdgeId> block;
                    const EdgeId tree_edge = *g.find_edge(parent, v);
                    while (!edge_stack.empty()) {
                        const EdgeId e = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(e);
                        if (e == tree_edge) break;
                    }
                    std::sort(block.begin(), block.end());
                    blocks.push_back(std::move(block));
                }
            }
        }
    }
    return blocks;
}

/// Mutable edge record during degree-2 suppression.
struct WorkEdge {
    NodeId u, v;              // endpoints among original node ids
    std::int64_t w;           // min original weight along the represented path
    std::vector<EdgeId> lift; // original edge ids on the path
    bool alive = true;
};

} // namespace

NpcReduction reduce(const WeightedGraph& g) {
    NpcReduction red;
    const int n = g.node_count();

    // Connected components.
    red.node_component.assign(static_cast<size_t>(n), -1);
    for (NodeId s = 0; s < n; ++s) {
        if (red.node_component[static_cast<size_t>(s)] != -1) continue;
        const int c = red.component_count++;
        std::vector<NodeId> stack{s};
        red.node_component[static_cast<size_t>(s)] = c;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbors(v))
                if (red.node_component[static_cast<size_t>(w)] == -1) {
                    red.node_component[static_cast<size_t>(w)] = c;
                    stack.push_back(w);
                }
        }
    }
    red.component_offsets.assign(static_cast<size_t>(red.component_count), 0);

    auto secure_edges = [&](const std::vector<EdgeId>& edges) {
        for (EdgeId e : edges) {
            red.secured_weight += g.weight(e);
            red.component_offsets[static_cast<size_t>(red.node_component[static_cast<size_t>(g.edge(e).u)])] +=
                g.weight(e);
        }
    };

    for (const auto& block : biconnected_blocks(g)) {
        // Planar blocks (always true for bridges) are secured wholesale.
        EdgeSelection block_sel(g.edge_count());
        for (EdgeId e : block) block_sel.set(e, true);
        if (test_planarity(g, block_sel).planar) {
            secure_edges(block);
            continue;
        }

        // Non-planar block: suppress degree-2 nodes until fixpoint.
        std::vector<WorkEdge> work;
        work.reserve(block.size());
        for (EdgeId e : block) work.push_back({g.edge(e).u, g.edge(e).v, g.weight(e), {e}, true});

        auto degree_of = [&](NodeId v) {
            int d = 0;
            for (const auto& we : work)
                if (we.alive && (we.u == v || we.v == v)) ++d;
            return d;
        };
        auto edge_between = [&](NodeId a, NodeId b) {
            for (const auto& we : work)
                if (we.alive && ((we.u == a && we.v == b) || (we.u == b && we.v == a))) return true;
            return false;
        };

        std::vector<NodeId> block_nodes;
        for (const auto& we : work) {
            block_nodes.push_back(we.u);
            block_nodes.push_back(we.v);
        }
        std::sort(block_nodes.begin(), block_nodes.end());
        block_nodes.erase(std::unique(block_nodes.begin(), block_nodes.end()), block_nodes.end());

        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeId x : block_nodes) {
                if (degree_of(x) != 2) continue;
                size_t i1 = work.size(), i2 = work.size();
                for (size_t i = 0; i < work.size(); ++i) {
                    if (!work[i].alive || (work[i].u != x && work[i].v != x)) continue;
                    (i1 == work.size() ? i1 : i2) = i;
                }
                const NodeId a = work[i1].u == x ? work[i1].v : work[i1].u;
                const NodeId b = work[i2].u == x ? work[i2].v : work[i2].u;
                if (a == b || edge_between(a, b)) continue; // would create a parallel edge
                WorkEdge merged;
                merged.u = std::min(a, b);
                merged.v = std::max(a, b);
                merged.w = std::min(work[i1].w, work[i2].w);
                merged.lift = work[i1].lift;
                merged.lift.insert(merged.lift.end(), work[i2].lift.begin(), work[i2].lift.end());
                work[i1].alive = false;
                work[i2].alive = false;
                work.push_back(std::move(merged));
                changed = true;
            }
        }

        // Assemble the core with canonical node relabeling (ascending original
        // id) and lexicographically sorted edges, so reduce is idempotent.
        CoreLift cl;
        cl.component = red.node_component[static_cast<size_t>(work.front().u)];
        std::vector<NodeId> core_nodes;
        for (const auto& we : work)
            if (we.alive) {
                core_nodes.push_back(we.u);
                core_nodes.push_back(we.v);
            }
        std::sort(core_nodes.begin(), core_nodes.end());
        core_nodes.erase(std::unique(core_nodes.begin(), core_nodes.end()), core_nodes.end());
        cl.node_map = core_nodes;
        std::map<NodeId, NodeId> to_core;
        for (size_t i = 0; i < core_nodes.size(); ++i) to_core[core_nodes[i]] = static_cast<NodeId>(i);

        std::vector<const WorkEdge*> alive;
        for (const auto& we : work)
            if (we.alive) alive.push_back(&we);
        std::sort(alive.begin(), alive.end(), [&](const WorkEdge* l, const WorkEdge* r) {
            return std::pair(std::min(l->u, l->v), std::max(l->u, l->v)) <
                   std::pair(std::min(r->u, r->v), std::max(r->u, r->v));
        });
        std::vector<EdgeInput> core_edges;
        std::int64_t core_weight = 0;
        for (const WorkEdge* we : alive) {
            core_edges.push_back({to_core[we->u], to_core[we->v], we->w});
            cl.edge_lift.push_back(we->lift);
            core_weight += we->w;
        }
        cl.core = build_graph(static_cast<int>(core_nodes.size()), core_edges);

        // Everything the core does not account for is secured: planar parts
        // plus the surplus of each suppressed path over its cheapest edge.
        std::int64_t block_weight = 0;
        for (EdgeId e : block) block_weight += g.weight(e);
        red.secured_weight += block_weight - core_weight;
        red.component_offsets[static_cast<size_t>(cl.component)] += block_weight - core_weight;

        red.cores.push_back(std::move(cl));
    }
    return red;
}

EdgeSelection lift(const WeightedGraph& g, const NpcReduction& red,
                   std::span<const EdgeSelection> core_selections) {
    if (core_selections.size() != red.cores.size())
        throw LengthMismatch("got " + std::to_string(core_selections.size()) + " core selections for " +
                             std::to_string(red.cores.size()) + " cores");
    EdgeSelection out = EdgeSelection::all_of(g);
    for (size_t ci = 0; ci < red.cores.size(); ++ci) {
        const CoreLift& cl = red.cores[ci];
        const EdgeSelection& sel = core_selections[ci];
        if (sel.size() != cl.core.edge_count())
            throw LengthMismatch("core " + std::to_string(ci) + " selection covers " +
                                 std::to_string(sel.size()) + " edges, core has " +
                                 std::to_string(cl.core.edge_count()));
        if (!test_planarity(cl.core, sel).planar)
            throw NonPlanarCoreSolution("core " + std::to_string(ci) + " selection is not planar");
        for (EdgeId ce = 0; ce < cl.core.edge_count(); ++ce) {
            if (sel.contains(ce)) continue;
            // Delete exactly one cheapest original edge on the path.
            const auto& path = cl.edge_lift[static_cast<size_t>(ce)];
            EdgeId victim = path.front();
            for (EdgeId e : path)
                if (g.weight(e) < g.weight(victim) || (g.weight(e) == g.weight(victim) && e < victim))
                    victim = e;
            out.set(victim, false);
        }
    }
    return out;
}

} // namespace mps
