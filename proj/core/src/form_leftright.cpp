#include "mps/form_leftright.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mps/errors.hpp"
#include "mps/formulation.hpp"
#include "mps/planarity.hpp"

namespace mps {

namespace {

/// Variable ids: s per edge, then t per arc, then l row-major over ordered
/// node pairs (diagonal included), then r per edge.
struct Layout {
    int n = 0;
    int m = 0;
    VarId t0 = 0;
    VarId l0 = 0;
    VarId r0 = 0;

    VarId t(ArcId d) const { return t0 + d; }
    VarId l(NodeId u, NodeId v) const { return l0 + u * n + v; }
    VarId r(EdgeId e) const { return r0 + e; }
    size_t var_count() const { return static_cast<size_t>(r0 + m); }
};

Layout make_layout(const WeightedGraph& g) {
    Layout L;
    L.n = g.node_count();
    L.m = g.edge_count();
    L.t0 = L.m;
    L.l0 = 3 * L.m;
    L.r0 = 3 * L.m + L.n * L.n;
    return L;
}

bool graph_connected(const WeightedGraph& g) {
    const int n = g.node_count();
    if (n <= 1)
        return true;
    std::vector<std::uint8_t> seen(static_cast<size_t>(n), 0);
    std::vector<NodeId> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        for (const NodeId y : g.neighbors(x))
            if (!seen[static_cast<size_t>(y)]) {
                seen[static_cast<size_t>(y)] = 1;
                ++reached;
                stack.push_back(y);
            }
    }
    return reached == n;
}

std::string pair_name(const char* prefix, NodeId a, NodeId b) {
    return std::string(prefix) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

/// Decoded tree-and-order structure of an integral assignment.
struct TremauxView {
    int n = 0;
    std::vector<std::uint8_t> selected; ///< per edge
    std::vector<std::uint8_t> in_tree;  ///< per edge
    std::vector<NodeId> parent;         ///< per node, -1 at the root
    std::vector<std::uint8_t> ell;      ///< ancestor closure, n*n row-major
    std::vector<ArcId> cotree;          ///< source->target arcs, sorted by (source, target)

    bool leq(NodeId u, NodeId v) const { return ell[static_cast<size_t>(u * n + v)] != 0; }
};

TremauxView decode_view(const WeightedGraph& g, const Layout& L, const Assignment& a) {
    const int n = g.node_count();
    const int m = g.edge_count();
    TremauxView t;
    t.n = n;
    t.selected.assign(static_cast<size_t>(m), 0);
    for (EdgeId e = 0; e < m; ++e)
        t.selected[static_cast<size_t>(e)] = a[static_cast<size_t>(e)] ? 1 : 0;

    t.in_tree.assign(static_cast<size_t>(m), 0);
    t.parent.assign(static_cast<size_t>(n), -1);
    int tree_arcs = 0;
    for (ArcId d = 0; d < g.arc_count(); ++d) {
        if (!a[static_cast<size_t>(L.t(d))])
            continue;
        ++tree_arcs;
        const EdgeId e = WeightedGraph::arc_edge(d);
        if (!t.selected[static_cast<size_t>(e)])
            throw MalformedTree("tree arc on an unselected edge");
        if (t.in_tree[static_cast<size_t>(e)])
            throw MalformedTree("both arcs of one edge are in the tree");
        t.in_tree[static_cast<size_t>(e)] = 1;
        const NodeId child = g.arc_head(d);
        if (t.parent[static_cast<size_t>(child)] != -1)
            throw MalformedTree("node with two tree parents");
        t.parent[static_cast<size_t>(child)] = g.arc_tail(d);
    }
    if (tree_arcs != n - 1)
        throw MalformedTree("tree arc count differs from node count minus one");

    NodeId root = -1;
    for (NodeId v = 0; v < n; ++v)
        if (t.parent[static_cast<size_t>(v)] == -1) {
            if (root != -1)
                throw MalformedTree("more than one parentless node");
            root = v;
        }
    if (root == -1)
        throw MalformedTree("no parentless node");

    std::vector<std::vector<NodeId>> children(static_cast<size_t>(n));
    for (NodeId v = 0; v < n; ++v)
        if (t.parent[static_cast<size_t>(v)] != -1)
            children[static_cast<size_t>(t.parent[static_cast<size_t>(v)])].push_back(v);
    std::vector<NodeId> stack = {root};
    int reached = 0;
    while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        ++reached;
        for (const NodeId y : children[static_cast<size_t>(x)])
            stack.push_back(y);
    }
    if (reached != n)
        throw MalformedTree("tree arcs contain a cycle");

    t.ell.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId anc = v; anc != -1; anc = t.parent[static_cast<size_t>(anc)])
            t.ell[static_cast<size_t>(anc * n + v)] = 1;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v)
            if ((a[static_cast<size_t>(L.l(u, v))] != 0) != t.leq(u, v))
                throw MalformedTree("order bits are not the ancestor closure of the tree");

    for (EdgeId e = 0; e < m; ++e) {
        if (!t.selected[static_cast<size_t>(e)] || t.in_tree[static_cast<size_t>(e)])
            continue;
        const WeightedEdge& we = g.edge(e);
        NodeId src;
        if (t.leq(we.u, we.v))
            src = we.u;
        else if (t.leq(we.v, we.u))
            src = we.v;
        else
            throw MalformedTree("selected edge joins incomparable nodes");
        t.cotree.push_back(g.arc_from(e, src));
    }
    std::sort(t.cotree.begin(), t.cotree.end(), [&g](ArcId x, ArcId y) {
        return std::make_pair(g.arc_tail(x), g.arc_head(x)) <
               std::make_pair(g.arc_tail(y), g.arc_head(y));
    });
    return t;
}

/// One induced coloring relation between the cotree edges of alpha and beta,
/// together with the third (and fourth) arc and the witness nodes that make
/// the corresponding row tight.
struct Relation {
    bool alike = false;
    ArcId alpha = -1;
    ArcId beta = -1;
    ArcId gamma = -1;
    ArcId delta = -1; ///< -1 except in the two-extra-arc pattern
    NodeId u = -1;
    NodeId v = -1;
    NodeId w = -1; ///< -1 except in the two-extra-arc pattern
};

std::optional<std::pair<NodeId, NodeId>> alike_witness(const TremauxView& t, NodeId sb, NodeId ta,
                                                       NodeId tb, NodeId tg) {
    for (NodeId u = 0; u < t.n; ++u) {
        if (u == sb || !t.leq(sb, u) || !t.leq(u, tg))
            continue;
        for (NodeId v = 0; v < t.n; ++v)
            if (v != u && t.leq(u, v) && t.leq(v, ta) && t.leq(v, tb) && !t.leq(v, tg))
                return std::make_pair(u, v);
    }
    return std::nullopt;
}

std::optional<std::pair<NodeId, NodeId>> opposite_witness(const TremauxView& t, NodeId sb,
                                                          NodeId ta, NodeId tb, NodeId tg) {
    for (NodeId u = 0; u < t.n; ++u) {
        if (u == sb || !t.leq(sb, u) || !t.leq(u, ta))
            continue;
        for (NodeId v = 0; v < t.n; ++v)
            if (v != u && t.leq(u, v) && !t.leq(v, ta) && t.leq(v, tb) && t.leq(v, tg))
                return std::make_pair(u, v);
    }
    return std::nullopt;
}

std::optional<std::array<NodeId, 3>> branch_witness(const TremauxView& t, NodeId sa, NodeId ta,
                                                    NodeId tb, NodeId tg, NodeId td) {
    for (NodeId u = 0; u < t.n; ++u) {
        if (u == sa || !t.leq(sa, u) || !t.leq(u, ta) || !t.leq(u, tb))
            continue;
        NodeId fv = -1;
        for (NodeId v = 0; v < t.n && fv == -1; ++v)
            if (t.leq(u, v) && t.leq(v, ta) && t.leq(v, tg) && !t.leq(v, tb) && !t.leq(v, td))
                fv = v;
        if (fv == -1)
            continue;
        for (NodeId w = 0; w < t.n; ++w)
            if (w != fv && t.leq(u, w) && t.leq(w, tb) && t.leq(w, td) && !t.leq(w, ta) &&
                !t.leq(w, tg))
                return std::array<NodeId, 3>{u, fv, w};
    }
    return std::nullopt;
}

/// Calls `sink` for every induced relation, using the first third (and
/// fourth) arc and the lowest-id witnesses per ordered cotree pair. Stops
/// early when the sink returns false.
template <typename Sink>
void enumerate_relations(const WeightedGraph& g, const TremauxView& t, Sink&& sink) {
    const std::vector<ArcId>& D = t.cotree;
    for (size_t ia = 0; ia < D.size(); ++ia) {
        for (size_t ib = 0; ib < D.size(); ++ib) {
            if (ib == ia)
                continue;
            const ArcId alpha = D[ia];
            const ArcId beta = D[ib];
            const NodeId sa = g.arc_tail(alpha), ta = g.arc_head(alpha);
            const NodeId sb = g.arc_tail(beta), tb = g.arc_head(beta);

            if (t.leq(sa, sb)) { // equal-color pattern: one arc from strictly below
                for (size_t ig = 0; ig < D.size(); ++ig) {
                    if (ig == ia || ig == ib)
                        continue;
                    const NodeId sg = g.arc_tail(D[ig]), tg = g.arc_head(D[ig]);
                    if (sg == sa || !t.leq(sg, sa))
                        continue;
                    if (const auto wit = alike_witness(t, sb, ta, tb, tg)) {
                        if (!sink(Relation{true, alpha, beta, D[ig], -1, wit->first, wit->second,
                                           -1}))
                            return;
                        break;
                    }
                }
            }
            if (sa != sb && t.leq(sa, sb)) { // opposite colors via one other arc
                for (size_t ig = 0; ig < D.size(); ++ig) {
                    if (ig == ia || ig == ib)
                        continue;
                    const NodeId sg = g.arc_tail(D[ig]), tg = g.arc_head(D[ig]);
                    if (sg == sa || !t.leq(sg, sa))
                        continue;
                    if (const auto wit = opposite_witness(t, sb, ta, tb, tg)) {
                        if (!sink(Relation{false, alpha, beta, D[ig], -1, wit->first, wit->second,
                                           -1}))
                            return;
                        break;
                    }
                }
            }
            if (sa == sb) { // opposite colors via two arcs from one lower node
                bool done = false;
                for (size_t ig = 0; ig < D.size() && !done; ++ig) {
                    if (ig == ia || ig == ib)
                        continue;
                    const NodeId sg = g.arc_tail(D[ig]), tg = g.arc_head(D[ig]);
                    if (sg == sa || !t.leq(sg, sa))
                        continue;
                    for (size_t id = 0; id < D.size() && !done; ++id) {
                        if (id == ia || id == ib || id == ig)
                            continue;
                        if (g.arc_tail(D[id]) != sg)
                            continue;
                        const NodeId td = g.arc_head(D[id]);
                        if (const auto wit = branch_witness(t, sa, ta, tb, tg, td)) {
                            if (!sink(Relation{false, alpha, beta, D[ig], D[id], (*wit)[0],
                                               (*wit)[1], (*wit)[2]}))
                                return;
                            done = true;
                        }
                    }
                }
            }
        }
    }
}

/// Accumulates the variable part and constant of a P-term.
struct TermBuilder {
    std::map<VarId, std::int64_t> coeff;
    std::int64_t constant = 0;

    void add(VarId v, std::int64_t c) { coeff[v] += c; }
};

/// Adds sign * (l_d + s_edge(d) - t_d - t_reverse(d) - 2) for one arc.
void add_cotree_cert(TermBuilder& b, const WeightedGraph& g, const Layout& L, ArcId d,
                     std::int64_t sign) {
    b.add(L.l(g.arc_tail(d), g.arc_head(d)), sign);
    b.add(static_cast<VarId>(WeightedGraph::arc_edge(d)), sign);
    b.add(L.t(d), -sign);
    b.add(L.t(WeightedGraph::reverse_arc(d)), -sign);
    b.constant += -2 * sign;
}

/// Builds the relation's P-term (zero exactly when the pattern holds, at
/// most -1 otherwise).
TermBuilder p_term(const WeightedGraph& g, const Layout& L, const Relation& rel) {
    TermBuilder b;
    const NodeId sa = g.arc_tail(rel.alpha), ta = g.arc_head(rel.alpha);
    const NodeId sb = g.arc_tail(rel.beta), tb = g.arc_head(rel.beta);
    const NodeId sg = g.arc_tail(rel.gamma), tg = g.arc_head(rel.gamma);
    add_cotree_cert(b, g, L, rel.alpha, 1);
    add_cotree_cert(b, g, L, rel.beta, 1);
    add_cotree_cert(b, g, L, rel.gamma, 1);
    b.add(L.l(sg, sa), 1);
    b.add(L.l(rel.u, rel.v), 1);
    b.constant += -2;
    if (rel.delta < 0) {
        b.add(L.l(sa, sb), 1);
        b.add(L.l(sb, rel.u), 1);
        if (rel.alike) {
            b.add(L.l(rel.u, tg), 1);
            b.add(L.l(rel.v, tg), -1);
            b.add(L.l(rel.v, ta), 1);
            b.add(L.l(rel.v, tb), 1);
        } else {
            b.add(L.l(rel.u, ta), 1);
            b.add(L.l(rel.v, ta), -1);
            b.add(L.l(rel.v, tb), 1);
            b.add(L.l(rel.v, tg), 1);
        }
        b.constant += -5;
    } else {
        const NodeId td = g.arc_head(rel.delta);
        add_cotree_cert(b, g, L, rel.delta, 1);
        b.add(L.l(sa, rel.u), 1);
        b.add(L.l(rel.u, rel.v), 1);
        b.add(L.l(rel.u, rel.w), 1);
        b.add(L.l(rel.u, ta), 1);
        b.add(L.l(rel.u, tb), 1);
        b.add(L.l(rel.v, ta), 1);
        b.add(L.l(rel.v, tb), -1);
        b.add(L.l(rel.v, tg), 1);
        b.add(L.l(rel.v, td), -1);
        b.add(L.l(rel.w, ta), -1);
        b.add(L.l(rel.w, tb), 1);
        b.add(L.l(rel.w, tg), -1);
        b.add(L.l(rel.w, td), 1);
        b.constant += -9;
    }
    return b;
}

LinConstraint assemble_row(const std::map<VarId, std::int64_t>& coeff, Cmp cmp, std::int64_t rhs) {
    LinConstraint row;
    row.cmp = cmp;
    row.rhs = rhs;
    for (const auto& [var, c] : coeff)
        if (c != 0)
            row.terms.push_back({c, var});
    return row;
}

/// The candidate rows of one relation: an equal-color relation yields the
/// two difference rows, an opposite-color relation the sum's lower and
/// upper row.
std::vector<LinConstraint> relation_rows(const WeightedGraph& g, const Layout& L,
                                         const Relation& rel) {
    const TermBuilder b = p_term(g, L, rel);
    const VarId ra = L.r(WeightedGraph::arc_edge(rel.alpha));
    const VarId rb = L.r(WeightedGraph::arc_edge(rel.beta));
    std::vector<LinConstraint> rows;
    if (rel.alike) {
        for (int swap = 0; swap < 2; ++swap) {
            std::map<VarId, std::int64_t> coeff;
            for (const auto& [var, c] : b.coeff)
                coeff[var] -= c;
            coeff[swap ? rb : ra] += 1;
            coeff[swap ? ra : rb] -= 1;
            rows.push_back(assemble_row(coeff, Cmp::GreaterEq, b.constant));
        }
    } else {
        std::map<VarId, std::int64_t> lower;
        for (const auto& [var, c] : b.coeff)
            lower[var] -= c;
        lower[ra] += 1;
        lower[rb] += 1;
        rows.push_back(assemble_row(lower, Cmp::GreaterEq, 1 + b.constant));
        std::map<VarId, std::int64_t> upper = b.coeff;
        upper[ra] += 1;
        upper[rb] += 1;
        rows.push_back(assemble_row(upper, Cmp::LessEq, 1 - b.constant));
    }
    return rows;
}

} // namespace

PBModel build_leftright_model(const WeightedGraph& g, const LeftRightConfig& cfg, NodeId root) {
    if (root < 0 || root >= g.node_count())
        throw Error("left-right model: root node out of range");
    if (!graph_connected(g))
        throw Disconnected("left-right model requires a connected graph");
    const Layout L = make_layout(g);
    const int n = g.node_count();
    const int m = g.edge_count();

    PBModel model;
    add_selection_vars(model, g);
    for (ArcId d = 0; d < g.arc_count(); ++d)
        model.add_var(pair_name("t", g.arc_tail(d), g.arc_head(d)));
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v)
            model.add_var(pair_name("l", u, v));
    for (EdgeId e = 0; e < m; ++e)
        model.add_var(pair_name("r", g.edge(e).u, g.edge(e).v));

    { // the tree has one arc less than nodes
        LinConstraint c;
        c.cmp = Cmp::Eq;
        c.rhs = n - 1;
        for (ArcId d = 0; d < g.arc_count(); ++d)
            c.terms.push_back({1, L.t(d)});
        if (!c.terms.empty())
            model.add_constraint(std::move(c));
    }
    for (ArcId d = 0; d < g.arc_count(); ++d) // tree arcs only on kept edges
        model.add_constraint(
            {{{1, L.t(d)}, {-1, static_cast<VarId>(WeightedGraph::arc_edge(d))}}, Cmp::LessEq, 0});
    for (ArcId d = 0; d < g.arc_count(); ++d) // tree arcs seed the order
        model.add_constraint(
            {{{1, L.t(d)}, {-1, L.l(g.arc_tail(d), g.arc_head(d))}}, Cmp::LessEq, 0});
    for (NodeId u = 0; u < n; ++u) { // children of one node stay incomparable
        const auto nbrs = g.neighbors(u);
        const auto edges = g.incident_edges(u);
        for (size_t i = 0; i < nbrs.size(); ++i)
            for (size_t j = i + 1; j < nbrs.size(); ++j) {
                const NodeId v = nbrs[i], w = nbrs[j];
                model.add_constraint({{{1, L.l(v, w)},
                                       {1, L.l(w, v)},
                                       {1, L.t(g.arc_from(edges[i], u))},
                                       {1, L.t(g.arc_from(edges[j], u))}},
                                      Cmp::LessEq,
                                      2});
            }
    }
    for (NodeId u = 0; u < n; ++u) // two ancestors of one node are comparable
        for (NodeId v = u + 1; v < n; ++v)
            for (NodeId w = 0; w < n; ++w) {
                if (w == u || w == v)
                    continue;
                model.add_constraint(
                    {{{1, L.l(u, w)}, {1, L.l(v, w)}, {-1, L.l(u, v)}, {-1, L.l(v, u)}},
                     Cmp::LessEq,
                     1});
            }
    for (NodeId u = 0; u < n; ++u) // transitivity
        for (NodeId v = 0; v < n; ++v) {
            if (v == u)
                continue;
            for (NodeId w = 0; w < n; ++w) {
                if (w == u || w == v)
                    continue;
                model.add_constraint(
                    {{{1, L.l(u, v)}, {1, L.l(v, w)}, {-1, L.l(u, w)}}, Cmp::LessEq, 1});
            }
        }
    for (NodeId u = 0; u < n; ++u) // antisymmetry
        for (NodeId v = u + 1; v < n; ++v)
            model.add_constraint({{{1, L.l(u, v)}, {1, L.l(v, u)}}, Cmp::LessEq, 1});
    for (NodeId v = 0; v < n; ++v) // reflexivity
        model.add_constraint({{{1, L.l(v, v)}}, Cmp::Eq, 1});
    for (EdgeId e = 0; e < m; ++e) { // kept edges join comparable nodes
        const WeightedEdge& we = g.edge(e);
        model.add_constraint(
            {{{1, static_cast<VarId>(e)}, {-1, L.l(we.u, we.v)}, {-1, L.l(we.v, we.u)}},
             Cmp::LessEq,
             0});
    }

    if (cfg.symmetry_blue) {
        for (EdgeId e = 0; e < m; ++e) // tree edges are blue
            model.add_constraint(
                {{{1, L.t(2 * e)}, {1, L.t(2 * e + 1)}, {1, L.r(e)}}, Cmp::LessEq, 1});
        for (EdgeId e = 0; e < m; ++e) // dropped edges are blue
            model.add_constraint({{{1, L.r(e)}, {-1, static_cast<VarId>(e)}}, Cmp::LessEq, 0});
    }
    if (cfg.unique_tree) {
        { // no arc enters the root
            LinConstraint c;
            c.cmp = Cmp::Eq;
            c.rhs = 0;
            for (const EdgeId e : g.incident_edges(root))
                c.terms.push_back({1, L.t(WeightedGraph::reverse_arc(g.arc_from(e, root)))});
            if (!c.terms.empty())
                model.add_constraint(std::move(c));
        }
        for (NodeId v = 0; v < n; ++v) { // everyone else has exactly one parent
            if (v == root)
                continue;
            LinConstraint c;
            c.cmp = Cmp::Eq;
            c.rhs = 1;
            for (const EdgeId e : g.incident_edges(v))
                c.terms.push_back({1, L.t(WeightedGraph::reverse_arc(g.arc_from(e, v)))});
            if (!c.terms.empty())
                model.add_constraint(std::move(c));
        }
        for (NodeId u = 0; u < n; ++u) { // earliest kept edge enters the tree first
            const auto nbrs = g.neighbors(u);
            const auto edges = g.incident_edges(u);
            for (size_t i = 0; i < nbrs.size(); ++i)
                for (size_t j = i + 1; j < nbrs.size(); ++j)
                    model.add_constraint({{{1, L.t(g.arc_from(edges[j], u))},
                                           {1, L.l(nbrs[j], nbrs[i])},
                                           {1, static_cast<VarId>(edges[i])}},
                                          Cmp::LessEq,
                                          2});
        }
    }

    const int limit = cfg.max_coloring_constraints_per_round;
    model.set_lazy_separator(
        [g, limit](const Assignment& a) { return separate_bicoloring(g, a, limit); },
        {"bicoloring"});
    return model;
}

namespace {

/// Pairwise in-degree rows for nodes whose arc bits name two parents. When the
/// explicit single-parent equalities are disabled, these restore them lazily;
/// an empty result certifies that every node has at most one incoming arc.
std::vector<LinConstraint> indegree_cuts(const WeightedGraph& g, const Layout& L,
                                         const Assignment& a, size_t cap) {
    std::vector<LinConstraint> cuts;
    for (NodeId v = 0; v < g.node_count() && cuts.size() < cap; ++v) {
        std::vector<VarId> in;
        const auto nbrs = g.neighbors(v);
        const auto edges = g.incident_edges(v);
        for (size_t i = 0; i < nbrs.size(); ++i) {
            const ArcId d = g.arc_from(edges[i], nbrs[i]);
            if (a[static_cast<size_t>(L.t(d))])
                in.push_back(L.t(d));
        }
        if (in.size() < 2)
            continue;
        LinConstraint c;
        c.cmp = Cmp::LessEq;
        c.rhs = 1;
        c.terms = {{1, std::min(in[0], in[1])}, {1, std::max(in[0], in[1])}};
        cuts.push_back(std::move(c));
    }
    return cuts;
}

} // namespace

std::vector<LinConstraint> separate_bicoloring(const WeightedGraph& g, const Assignment& a,
                                               int limit) {
    const Layout L = make_layout(g);
    if (a.size() != L.var_count())
        throw LengthMismatch("assignment length does not match the left-right layout");
    const size_t cap =
        limit <= 0 ? std::numeric_limits<size_t>::max() : static_cast<size_t>(limit);
    if (auto structural = indegree_cuts(g, L, a, cap); !structural.empty())
        return structural;
    const TremauxView t = decode_view(g, L, a);
    std::vector<LinConstraint> cuts;
    enumerate_relations(g, t, [&](const Relation& rel) {
        for (LinConstraint& row : relation_rows(g, L, rel))
            if (!satisfies(row, a))
                cuts.push_back(std::move(row));
        return cuts.size() < cap;
    });
    if (cuts.empty()) {
        EdgeSelection sel(g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            sel.set(e, a[static_cast<size_t>(e)] != 0);
        if (!test_planarity(g, sel).planar)
            throw Error("left-right coloring separator found no violated row "
                        "on a non-planar selection");
    }
    return cuts;
}

BranchPlan dfs_branch_plan(const WeightedGraph& g, NodeId root, const NodeBounds& bounds) {
    const Layout L = make_layout(g);
    const int n = g.node_count();
    std::vector<std::uint8_t> visited(static_cast<size_t>(n), 0);
    std::vector<std::pair<NodeId, size_t>> stack;
    visited[static_cast<size_t>(root)] = 1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
        auto& [x, idx] = stack.back();
        const auto nbrs = g.neighbors(x);
        if (idx >= nbrs.size()) {
            stack.pop_back();
            continue;
        }
        const NodeId y = nbrs[idx];
        const EdgeId e = g.incident_edges(x)[idx];
        ++idx;
        const VarId sv = static_cast<VarId>(e);
        if (bounds.upper(sv) == 0)
            continue; // locally dropped
        if (visited[static_cast<size_t>(y)])
            continue; // settled elsewhere; at best a cotree edge
        const VarId tv = L.t(g.arc_from(e, x));
        if (bounds.lower(tv) == 1) { // committed tree arc: descend
            visited[static_cast<size_t>(y)] = 1;
            stack.emplace_back(y, 0);
            continue;
        }
        if (bounds.upper(tv) == 1) { // free arc: drop the edge or grow the tree
            BranchPlan plan;
            if (bounds.is_free(sv)) {
                plan.first = {{sv, false}};
                plan.second = {{tv, true}, {sv, true}};
            } else { // edge already kept: tree membership is the open question
                plan.first = {{tv, false}};
                plan.second = {{tv, true}};
            }
            return plan;
        }
        if (bounds.is_free(sv)) { // arc banned, edge undecided
            BranchPlan plan;
            plan.first = {{sv, false}};
            plan.second = {{sv, true}};
            return plan;
        }
        // arc banned, edge kept: settled cotree edge, keep scanning
    }
    throw NoFreeEdge("every tree-candidate edge is already decided");
}

BranchRule dfs_branch_rule(const WeightedGraph& g, NodeId root) {
    BranchRule rule;
    rule.custom = [g, root](const NodeBounds& bounds) -> std::optional<BranchPlan> {
        try {
            return dfs_branch_plan(g, root, bounds);
        } catch (const NoFreeEdge&) {
            return std::nullopt;
        }
    };
    return rule;
}

namespace {

/// Union-find with parity toward the representative.
class ParityDSU {
public:
    explicit ParityDSU(int size) : parent_(static_cast<size_t>(size)), parity_(static_cast<size_t>(size), 0) {
        for (int i = 0; i < size; ++i)
            parent_[static_cast<size_t>(i)] = i;
    }

    std::pair<int, std::uint8_t> find(int x) {
        std::uint8_t p = 0;
        int r = x;
        while (parent_[static_cast<size_t>(r)] != r) {
            p ^= parity_[static_cast<size_t>(r)];
            r = parent_[static_cast<size_t>(r)];
        }
        // path compression
        int cur = x;
        std::uint8_t cur_p = p;
        while (parent_[static_cast<size_t>(cur)] != r) {
            const int next = parent_[static_cast<size_t>(cur)];
            const std::uint8_t next_p = cur_p ^ parity_[static_cast<size_t>(cur)];
            parent_[static_cast<size_t>(cur)] = r;
            parity_[static_cast<size_t>(cur)] = cur_p;
            cur = next;
            cur_p = next_p;
        }
        return {r, p};
    }

    bool unite(int a, int b, std::uint8_t rel) {
        const auto [ra, pa] = find(a);
        const auto [rb, pb] = find(b);
        if (ra == rb)
            return static_cast<std::uint8_t>(pa ^ pb) == rel;
        parent_[static_cast<size_t>(rb)] = ra;
        parity_[static_cast<size_t>(rb)] = static_cast<std::uint8_t>(pa ^ pb ^ rel);
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<std::uint8_t> parity_;
};

} // namespace

std::optional<Assignment> leftright_warm_start(const WeightedGraph& g, const EdgeSelection& sel,
                                               NodeId root) {
    if (root < 0 || root >= g.node_count())
        throw Error("left-right warm start: root node out of range");
    if (!test_planarity(g, sel).planar)
        return std::nullopt;
    const Layout L = make_layout(g);
    const int n = g.node_count();

    std::vector<NodeId> parent(static_cast<size_t>(n), -1);
    std::vector<EdgeId> parent_edge(static_cast<size_t>(n), -1);
    std::vector<std::uint8_t> visited(static_cast<size_t>(n), 0);
    std::vector<std::pair<NodeId, size_t>> stack;
    visited[static_cast<size_t>(root)] = 1;
    stack.emplace_back(root, 0);
    int reached = 1;
    while (!stack.empty()) {
        auto& [x, idx] = stack.back();
        const auto nbrs = g.neighbors(x);
        if (idx >= nbrs.size()) {
            stack.pop_back();
            continue;
        }
        const NodeId y = nbrs[idx];
        const EdgeId e = g.incident_edges(x)[idx];
        ++idx;
        if (!sel.contains(e) || visited[static_cast<size_t>(y)])
            continue;
        visited[static_cast<size_t>(y)] = 1;
        parent[static_cast<size_t>(y)] = x;
        parent_edge[static_cast<size_t>(y)] = e;
        ++reached;
        stack.emplace_back(y, 0);
    }
    if (reached != n)
        return std::nullopt; // selection does not span all nodes

    Assignment a(L.var_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (sel.contains(e))
            a[static_cast<size_t>(e)] = 1;
    for (NodeId v = 0; v < n; ++v)
        if (parent[static_cast<size_t>(v)] != -1)
            a[static_cast<size_t>(
                L.t(g.arc_from(parent_edge[static_cast<size_t>(v)], parent[static_cast<size_t>(v)])))] = 1;
    for (NodeId v = 0; v < n; ++v)
        for (NodeId anc = v; anc != -1; anc = parent[static_cast<size_t>(anc)])
            a[static_cast<size_t>(L.l(anc, v))] = 1;

    const TremauxView t = decode_view(g, L, a);
    ParityDSU dsu(g.edge_count());
    bool consistent = true;
    enumerate_relations(g, t, [&](const Relation& rel) {
        consistent = dsu.unite(WeightedGraph::arc_edge(rel.alpha),
                               WeightedGraph::arc_edge(rel.beta), rel.alike ? 0 : 1);
        return consistent;
    });
    if (!consistent)
        return std::nullopt;
    for (const ArcId d : t.cotree) {
        const EdgeId e = WeightedGraph::arc_edge(d);
        if (dsu.find(e).second)
            a[static_cast<size_t>(L.r(e))] = 1;
    }
    return a;
}

} // namespace mps
