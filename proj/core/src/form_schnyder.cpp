#include "mps/form_schnyder.hpp"

#include <array>
#include <string>

#include "mps/errors.hpp"
#include "mps/formulation.hpp"

namespace mps {

namespace {

constexpr int kMaxTransitivityPerRound = 1000;

/// s block first, then per order i the t block (tail-major, head ascending
/// with the tail skipped), then per order i the a block (edge-major, witness
/// ascending with the endpoints skipped).
struct Layout {
    int n = 0;
    int m = 0;
    VarId t0 = 0;
    VarId a0 = 0;

    VarId t(int i, NodeId u, NodeId v) const { // i in [3], u != v
        return t0 + static_cast<VarId>(i - 1) * n * (n - 1) + u * (n - 1) + (v < u ? v : v - 1);
    }
    VarId a(int i, const WeightedGraph& g, EdgeId e, NodeId v) const { // v not on e
        const WeightedEdge& we = g.edge(e);
        const int skip = (v > we.u ? 1 : 0) + (v > we.v ? 1 : 0);
        return a0 + static_cast<VarId>(i - 1) * m * (n - 2) + e * (n - 2) + v - skip;
    }
};

Layout make_layout(const WeightedGraph& g) {
    if (g.node_count() < 3)
        throw TooFewNodes("order-dimension model needs at least 3 nodes");
    Layout L;
    L.n = g.node_count();
    L.m = g.edge_count();
    L.t0 = L.m;
    L.a0 = L.t0 + 3 * L.n * (L.n - 1);
    return L;
}

LinConstraint transitivity_row(const Layout& L, int i, NodeId u, NodeId v, NodeId w) {
    return {{{1, L.t(i, u, v)}, {1, L.t(i, v, w)}, {-1, L.t(i, u, w)}}, Cmp::LessEq, 1};
}

} // namespace

PBModel build_schnyder_model(const WeightedGraph& g, const SchnyderConfig& cfg) {
    const Layout L = make_layout(g);
    const int n = L.n;
    PBModel model;
    add_selection_vars(model, g);
    for (int i = 1; i <= 3; ++i)
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = 0; v < n; ++v)
                if (u != v)
                    model.add_var("t_" + std::to_string(i) + "_" + std::to_string(u) + "_" +
                                  std::to_string(v));
    for (int i = 1; i <= 3; ++i)
        for (EdgeId e = 0; e < L.m; ++e) {
            const WeightedEdge& we = g.edge(e);
            for (NodeId v = 0; v < n; ++v)
                if (v != we.u && v != we.v)
                    model.add_var("a_" + std::to_string(i) + "_" + std::to_string(we.u) + "_" +
                                  std::to_string(we.v) + "_" + std::to_string(v));
        }

    // A selected edge needs a witnessing order for every non-incident node.
    for (EdgeId e = 0; e < L.m; ++e) {
        const WeightedEdge& we = g.edge(e);
        for (NodeId v = 0; v < n; ++v) {
            if (v == we.u || v == we.v)
                continue;
            LinConstraint c;
            for (int i = 1; i <= 3; ++i)
                c.terms.push_back({1, L.a(i, g, e, v)});
            c.terms.push_back({-1, e});
            c.cmp = Cmp::GreaterEq;
            c.rhs = 0;
            model.add_constraint(std::move(c));
        }
    }
    // A witness puts both endpoints below the node.
    for (int i = 1; i <= 3; ++i)
        for (EdgeId e = 0; e < L.m; ++e) {
            const WeightedEdge& we = g.edge(e);
            for (NodeId v = 0; v < n; ++v) {
                if (v == we.u || v == we.v)
                    continue;
                for (const NodeId u : {we.u, we.v})
                    model.add_constraint(
                        {{{1, L.t(i, u, v)}, {-1, L.a(i, g, e, v)}}, Cmp::GreaterEq, 0});
            }
        }
    // No pair may be comparable the same way in all three orders.
    if (cfg.intersection_constraints)
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = 0; v < n; ++v) {
                if (u == v)
                    continue;
                LinConstraint c;
                for (int i = 1; i <= 3; ++i)
                    c.terms.push_back({1, L.t(i, u, v)});
                c.cmp = Cmp::LessEq;
                c.rhs = 2;
                model.add_constraint(std::move(c));
            }
    // Transitivity, explicit or lazily separated.
    if (cfg.transitivity == SchnyderConfig::Transitivity::Explicit) {
        for (int i = 1; i <= 3; ++i)
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v) {
                    if (v == u)
                        continue;
                    for (NodeId w = 0; w < n; ++w)
                        if (w != u && w != v)
                            model.add_constraint(transitivity_row(L, i, u, v, w));
                }
    } else {
        model.set_lazy_separator(
            [g](const Assignment& a) { return separate_transitivity(g, a); }, {"transitivity"});
    }
    // Totality.
    for (int i = 1; i <= 3; ++i)
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                model.add_constraint({{{1, L.t(i, u, v)}, {1, L.t(i, v, u)}}, Cmp::Eq, 1});
    // Pin the witnesses of one triangle (or of two adjacent edges when the
    // graph is triangle-free): edge e_k of the triple must be witnessed for
    // the opposite node v_k by order k alone.
    if (cfg.symmetry_breaking) {
        std::vector<EdgeId> edge_at(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
        for (EdgeId e = 0; e < L.m; ++e) {
            const WeightedEdge& we = g.edge(e);
            edge_at[static_cast<size_t>(we.u) * n + we.v] = e;
            edge_at[static_cast<size_t>(we.v) * n + we.u] = e;
        }
        auto eid = [&](NodeId x, NodeId y) { return edge_at[static_cast<size_t>(x) * n + y]; };
        bool emitted = false;
        for (NodeId x = 0; x < n && !emitted; ++x)
            for (NodeId y = x + 1; y < n && !emitted; ++y)
                for (NodeId z = y + 1; z < n && !emitted; ++z) {
                    if (eid(x, y) < 0 || eid(x, z) < 0 || eid(y, z) < 0)
                        continue;
                    const std::array<EdgeId, 3> te = {eid(x, y), eid(x, z), eid(y, z)};
                    const std::array<NodeId, 3> opposite = {z, y, x};
                    for (int i = 1; i <= 3; ++i) {
                        LinConstraint c;
                        for (int j = 1; j <= 3; ++j)
                            if (j != i)
                                c.terms.push_back({1, L.a(j, g, te[static_cast<size_t>(i - 1)],
                                                          opposite[static_cast<size_t>(i - 1)])});
                        c.cmp = Cmp::Eq;
                        c.rhs = 0;
                        model.add_constraint(std::move(c));
                    }
                    emitted = true;
                }
        if (!emitted) {
            // First adjacent edge pair by ids; the missing third edge leaves
            // only two rows, the sums keeping both other orders.
            for (EdgeId e = 0; e < L.m && !emitted; ++e)
                for (EdgeId f = e + 1; f < L.m && !emitted; ++f) {
                    const WeightedEdge& a = g.edge(e);
                    const WeightedEdge& b = g.edge(f);
                    NodeId shared = -1;
                    if (a.u == b.u || a.u == b.v)
                        shared = a.u;
                    else if (a.v == b.u || a.v == b.v)
                        shared = a.v;
                    if (shared < 0)
                        continue;
                    const NodeId u = (a.u == shared) ? a.v : a.u;
                    const NodeId w = (b.u == shared) ? b.v : b.u;
                    const std::array<EdgeId, 2> te = {e, f};
                    const std::array<NodeId, 2> opposite = {w, u};
                    for (int i = 1; i <= 2; ++i) {
                        LinConstraint c;
                        for (int j = 1; j <= 3; ++j)
                            if (j != i)
                                c.terms.push_back({1, L.a(j, g, te[static_cast<size_t>(i - 1)],
                                                          opposite[static_cast<size_t>(i - 1)])});
                        c.cmp = Cmp::Eq;
                        c.rhs = 0;
                        model.add_constraint(std::move(c));
                    }
                    emitted = true;
                }
        }
    }
    return model;
}

std::vector<LinConstraint> separate_transitivity(const WeightedGraph& g,
                                                 const Assignment& assignment) {
    const Layout L = make_layout(g);
    if (assignment.size() < static_cast<size_t>(L.a0))
        throw LengthMismatch("assignment shorter than the order-variable block");
    std::vector<LinConstraint> cuts;
    for (int i = 1; i <= 3; ++i)
        for (NodeId u = 0; u < L.n; ++u)
            for (NodeId v = 0; v < L.n; ++v) {
                if (v == u)
                    continue;
                for (NodeId w = 0; w < L.n; ++w) {
                    if (w == u || w == v)
                        continue;
                    if (assignment[static_cast<size_t>(L.t(i, u, v))] &&
                        assignment[static_cast<size_t>(L.t(i, v, w))] &&
                        !assignment[static_cast<size_t>(L.t(i, u, w))]) {
                        cuts.push_back(transitivity_row(L, i, u, v, w));
                        if (static_cast<int>(cuts.size()) >= kMaxTransitivityPerRound)
                            return cuts;
                    }
                }
            }
    return cuts;
}

} // namespace mps
