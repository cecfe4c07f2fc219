#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "mps/errors.hpp"

namespace mps {

using NodeId = int;
using EdgeId = int;
/// Directed view of an edge: arc 2*e points u->v with u < v, arc 2*e+1 points v->u.
using ArcId = int;

struct WeightedEdge {
    NodeId u; ///< smaller endpoint
    NodeId v; ///< larger endpoint
    std::int64_t w;
};

/// An input edge as supplied by callers; endpoints in either order.
struct EdgeInput {
    NodeId u;
    NodeId v;
    std::int64_t w = 1;
};

/// Simple undirected graph with positive integer edge weights.
///
/// Nodes are 0..n-1. Edge ids are dense 0..m-1 in input order; endpoints are
/// stored canonically with u < v. Adjacency lists are sorted by neighbor id so
/// that all iteration over the graph is deterministic.
class WeightedGraph {
public:
    WeightedGraph() = default;

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int arc_count() const { return 2 * edge_count(); }

    const WeightedEdge& edge(EdgeId e) const { return edges_[static_cast<size_t>(e)]; }
    std::int64_t weight(EdgeId e) const { return edges_[static_cast<size_t>(e)].w; }
    std::int64_t total_weight() const { return total_weight_; }

    /// Neighbors of v in increasing id order.
    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_nodes_.data() + adj_start_[static_cast<size_t>(v)],
                adj_nodes_.data() + adj_start_[static_cast<size_t>(v) + 1]};
    }
    /// Edge ids aligned with neighbors(v).
    std::span<const EdgeId> incident_edges(NodeId v) const {
        return {adj_edges_.data() + adj_start_[static_cast<size_t>(v)],
                adj_edges_.data() + adj_start_[static_cast<size_t>(v) + 1]};
    }
    int degree(NodeId v) const {
        return static_cast<int>(adj_start_[static_cast<size_t>(v) + 1] - adj_start_[static_cast<size_t>(v)]);
    }

    /// Edge id joining u and v, if present.
    std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

    NodeId arc_tail(ArcId a) const { return (a & 1) ? edges_[static_cast<size_t>(a >> 1)].v : edges_[static_cast<size_t>(a >> 1)].u; }
    NodeId arc_head(ArcId a) const { return (a & 1) ? edges_[static_cast<size_t>(a >> 1)].u : edges_[static_cast<size_t>(a >> 1)].v; }
    static ArcId reverse_arc(ArcId a) { return a ^ 1; }
    static EdgeId arc_edge(ArcId a) { return a >> 1; }
    /// Arc of edge e whose tail is `tail` (one of its endpoints).
    ArcId arc_from(EdgeId e, NodeId tail) const {
        return 2 * e + (edges_[static_cast<size_t>(e)].u == tail ? 0 : 1);
    }

    bool operator==(const WeightedGraph& other) const;

    friend WeightedGraph build_graph(int node_count, std::span<const EdgeInput> edges);

private:
    int n_ = 0;
    std::vector<WeightedEdge> edges_;
    std::int64_t total_weight_ = 0;
    // CSR adjacency, sorted by neighbor id within each node.
    std::vector<std::size_t> adj_start_;
    std::vector<NodeId> adj_nodes_;
    std::vector<EdgeId> adj_edges_;
};

/// Validates and builds a graph.
///
/// Throws SelfLoop, DuplicateEdge, NonPositiveWeight, or Error (endpoint out
/// of range / negative node count).
WeightedGraph build_graph(int node_count, std::span<const EdgeInput> edges);
WeightedGraph build_graph(int node_count, std::initializer_list<EdgeInput> edges);

/// Subset of a graph's edges, indexed by EdgeId.
class EdgeSelection {
public:
    EdgeSelection() = default;
    explicit EdgeSelection(int edge_count, bool selected = false)
        : bits_(static_cast<size_t>(edge_count), selected ? 1 : 0) {}

    static EdgeSelection all_of(const WeightedGraph& g) { return EdgeSelection(g.edge_count(), true); }
    static EdgeSelection none_of(const WeightedGraph& g) { return EdgeSelection(g.edge_count(), false); }

    int size() const { return static_cast<int>(bits_.size()); }
    bool contains(EdgeId e) const { return bits_[static_cast<size_t>(e)] != 0; }
    void set(EdgeId e, bool value) { bits_[static_cast<size_t>(e)] = value ? 1 : 0; }
    int count() const;
    std::vector<EdgeId> to_edge_list() const;

    bool operator==(const EdgeSelection&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Total weight of the selected edges. Throws LengthMismatch if the selection
/// was built for a different edge count.
std::int64_t selection_weight(const WeightedGraph& g, const EdgeSelection& sel);

/// Euler bound 3n - 6 on the edge count of any planar subgraph.
/// Throws TooFewNodes for n < 3.
int euler_cap(const WeightedGraph& g);

/// Length of a shortest cycle, or 0 when the graph is acyclic. Unweighted;
/// computed by breadth-first search from every node.
int girth(const WeightedGraph& g);

} // namespace mps
