#include "mps/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "mps/planarity.hpp"

namespace mps {
namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

struct Triangle {
    std::int64_t weight;
    NodeId a, b, c; // a < b < c
    EdgeId ab, bc, ac;
};

} // namespace

EdgeSelection cactus_heuristic(const WeightedGraph& g, std::uint64_t /*seed*/) {
    const int n = g.node_count();
    // Connectivity check.
    if (n > 0) {
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::vector<NodeId> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbors(v))
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        if (count != n) throw Disconnected("heuristic requires a connected graph");
    }

    // All triangles a < b < c.
    std::vector<Triangle> triangles;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const NodeId a = g.edge(e).u, b = g.edge(e).v; // a < b
        const auto nbs = g.neighbors(b);
        const auto eids = g.incident_edges(b);
        for (size_t i = 0; i < nbs.size(); ++i) {
            const NodeId c = nbs[i];
            if (c <= b) continue;
            const auto ac = g.find_edge(a, c);
            if (!ac) continue;
            triangles.push_back({g.weight(e) + g.weight(eids[i]) + g.weight(*ac), a, b, c, e, eids[i], *ac});
        }
    }
    std::sort(triangles.begin(), triangles.end(), [](const Triangle& l, const Triangle& r) {
        return std::tuple(-l.weight, l.a, l.b, l.c) < std::tuple(-r.weight, r.a, r.b, r.c);
    });

    // Greedy packing: a triangle enters the cactus iff its three nodes lie in
    // three distinct components, which keeps every edge on at most one cycle.
    EdgeSelection sel(g.edge_count());
    Dsu dsu(n);
    for (const Triangle& t : triangles) {
        const int ra = dsu.find(t.a), rb = dsu.find(t.b), rc = dsu.find(t.c);
        if (ra == rb || rb == rc || ra == rc) continue;
        sel.set(t.ab, true);
        sel.set(t.bc, true);
        sel.set(t.ac, true);
        dsu.unite(t.a, t.b);
        dsu.unite(t.b, t.c);
    }

    // Augmentation in weight-then-id order with a full planarity re-test per
    // candidate. One pass suffices: once an edge is rejected, every later
    // superset selection stays non-planar with it too.
    std::vector<EdgeId> order(static_cast<size_t>(g.edge_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](EdgeId l, EdgeId r) {
        return std::pair(-g.weight(l), l) < std::pair(-g.weight(r), r);
    });
    for (EdgeId e : order) {
        if (sel.contains(e)) continue;
        sel.set(e, true);
        if (!is_planar(g, sel)) sel.set(e, false);
    }
    return sel;
}

bool maximality_check(const WeightedGraph& g, const EdgeSelection& sel) {
    if (!is_planar(g, sel)) throw NotPlanarInput("maximality check expects a planar selection");
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (sel.contains(e)) continue;
        EdgeSelection more = sel;
        more.set(e, true);
        if (is_planar(g, more)) return false;
    }
    return true;
}

} // namespace mps
