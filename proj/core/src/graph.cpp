#include "mps/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace mps {

WeightedGraph build_graph(int node_count, std::span<const EdgeInput> edges) {
    if (node_count < 0) throw Error("node count must be non-negative");
    WeightedGraph g;
    g.n_ = node_count;
    g.edges_.reserve(edges.size());
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const EdgeInput& in : edges) {
        if (in.u < 0 || in.u >= node_count || in.v < 0 || in.v >= node_count)
            throw Error("edge endpoint out of range: {" + std::to_string(in.u) + "," + std::to_string(in.v) + "}");
        if (in.u == in.v)
            throw SelfLoop("self-loop at node " + std::to_string(in.u));
        if (in.w <= 0)
            throw NonPositiveWeight("edge {" + std::to_string(in.u) + "," + std::to_string(in.v) +
                                    "} has non-positive weight " + std::to_string(in.w));
        NodeId u = std::min(in.u, in.v), v = std::max(in.u, in.v);
        if (!seen.insert({u, v}).second)
            throw DuplicateEdge("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
        g.edges_.push_back({u, v, in.w});
        g.total_weight_ += in.w;
    }

    // CSR adjacency sorted by neighbor id.
    const size_t n = static_cast<size_t>(node_count);
    std::vector<std::size_t> deg(n + 1, 0);
    for (const auto& e : g.edges_) {
        ++deg[static_cast<size_t>(e.u) + 1];
        ++deg[static_cast<size_t>(e.v) + 1];
    }
    std::partial_sum(deg.begin(), deg.end(), deg.begin());
    g.adj_start_ = deg;
    g.adj_nodes_.resize(g.edges_.size() * 2);
    g.adj_edges_.resize(g.edges_.size() * 2);
    std::vector<std::size_t> fill(deg.begin(), deg.end() - 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges_[static_cast<size_t>(e)];
        g.adj_nodes_[fill[static_cast<size_t>(ed.u)]] = ed.v;
        g.adj_edges_[fill[static_cast<size_t>(ed.u)]++] = e;
        g.adj_nodes_[fill[static_cast<size_t>(ed.v)]] = ed.u;
        g.adj_edges_[fill[static_cast<size_t>(ed.v)]++] = e;
    }
    for (size_t v = 0; v < n; ++v) {
        const std::size_t lo = g.adj_start_[v], hi = g.adj_start_[v + 1];
        std::vector<std::pair<NodeId, EdgeId>> slot;
        slot.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) slot.emplace_back(g.adj_nodes_[i], g.adj_edges_[i]);
        std::sort(slot.begin(), slot.end());
        for (std::size_t i = lo; i < hi; ++i) {
            g.adj_nodes_[i] = slot[i - lo].first;
            g.adj_edges_[i] = slot[i - lo].second;
        }
    }
    return g;
}

WeightedGraph build_graph(int node_count, std::initializer_list<EdgeInput> edges) {
    return build_graph(node_count, std::span<const EdgeInput>(edges.begin(), edges.size()));
}

std::optional<EdgeId> WeightedGraph::find_edge(NodeId u, NodeId v) const {
    if (u == v) return std::nullopt;
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return incident_edges(u)[static_cast<size_t>(it - nb.begin())];
}

bool WeightedGraph::operator==(const WeightedGraph& other) const {
    if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
    for (size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].u != other.edges_[i].u || edges_[i].v != other.edges_[i].v ||
            edges_[i].w != other.edges_[i].w)
            return false;
    }
    return true;
}

int EdgeSelection::count() const {
    int c = 0;
    for (auto b : bits_) c += b;
    return c;
}

std::vector<EdgeId> EdgeSelection::to_edge_list() const {
    std::vector<EdgeId> out;
    for (size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(static_cast<EdgeId>(i));
    return out;
}

std::int64_t selection_weight(const WeightedGraph& g, const EdgeSelection& sel) {
    if (sel.size() != g.edge_count())
        throw LengthMismatch("selection covers " + std::to_string(sel.size()) + " edges, graph has " +
                             std::to_string(g.edge_count()));
    std::int64_t total = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (sel.contains(e)) total += g.weight(e);
    return total;
}

int euler_cap(const WeightedGraph& g) {
    if (g.node_count() < 3)
        throw TooFewNodes("Euler bound needs at least 3 nodes, got " + std::to_string(g.node_count()));
    return 3 * g.node_count() - 6;
}

} // namespace mps
