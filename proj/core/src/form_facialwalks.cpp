#include "mps/form_facialwalks.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "mps/errors.hpp"
#include "mps/form_kuratowski.hpp"
#include "mps/formulation.hpp"
#include "mps/planarity.hpp"

namespace mps {

namespace {

/// Variable ids are a pure function of (graph, config): the edge block first,
/// then the face slots, the arc-to-face block (face-major), and finally one
/// successor block per node in id order.
struct Layout {
    std::int64_t fbar = 0;
    VarId x0 = 0;
    VarId c0 = 0;
    std::vector<VarId> p_base;
    std::vector<std::uint8_t> specialized;
    VarId var_count = 0;

    VarId x(std::int64_t i) const { return x0 + static_cast<VarId>(i) - 1; } // 1-based
    VarId c(std::int64_t i, ArcId a, int arc_count) const {
        return c0 + static_cast<VarId>((i - 1) * arc_count) + a;
    }
    VarId p(NodeId v, int u_pos, int w_pos, int deg) const {
        return p_base[static_cast<size_t>(v)] + u_pos * deg + w_pos;
    }
};

Layout make_layout(const WeightedGraph& g, const FacialWalkConfig& cfg) {
    Layout L;
    L.fbar = std::max<std::int64_t>(face_bound(g), 0);
    L.x0 = g.edge_count();
    L.c0 = L.x0 + static_cast<VarId>(L.fbar);
    VarId next = L.c0 + static_cast<VarId>(L.fbar) * g.arc_count();
    L.p_base.resize(static_cast<size_t>(g.node_count()));
    L.specialized.assign(static_cast<size_t>(g.node_count()), 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const int deg = static_cast<int>(g.neighbors(v).size());
        L.p_base[static_cast<size_t>(v)] = next;
        if (cfg.degree3_specialization && deg == 3) {
            L.specialized[static_cast<size_t>(v)] = 1;
            next += 1;
        } else {
            next += deg * deg;
        }
    }
    L.var_count = next;
    return L;
}

int neighbor_position(std::span<const NodeId> nbrs, NodeId u) {
    for (size_t k = 0; k < nbrs.size(); ++k)
        if (nbrs[k] == u)
            return static_cast<int>(k);
    throw Error("node is not a neighbor");
}

/// The eight coupling inequalities of one specialized degree-3 node, for all
/// face slots i and all cyclic shifts j over the sorted neighbors u0 < u1 < u2.
/// With the orientation bit at 1 the successor of u_j is u_{j+1} (u_{j+2} when
/// u_{j+1} is unselected); at 0 the cyclic order is reversed.
void add_degree3_block(PBModel& model, const WeightedGraph& g, const Layout& L, NodeId v) {
    std::array<NodeId, 3> u;
    std::array<EdgeId, 3> e;
    {
        const auto nbrs = g.neighbors(v);
        const auto inc = g.incident_edges(v);
        std::array<int, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return nbrs[static_cast<size_t>(a)] < nbrs[static_cast<size_t>(b)]; });
        for (int k = 0; k < 3; ++k) {
            u[static_cast<size_t>(k)] = nbrs[static_cast<size_t>(order[static_cast<size_t>(k)])];
            e[static_cast<size_t>(k)] = inc[static_cast<size_t>(order[static_cast<size_t>(k)])];
        }
    }
    const VarId pv = L.p_base[static_cast<size_t>(v)];
    const int A = g.arc_count();
    std::array<ArcId, 3> out, in;
    for (size_t k = 0; k < 3; ++k) {
        out[k] = g.arc_from(e[k], v);
        in[k] = g.arc_from(e[k], u[k]);
    }
    auto add = [&](std::vector<LinTerm> terms, std::int64_t rhs) {
        model.add_constraint({std::move(terms), Cmp::GreaterEq, rhs});
    };
    for (std::int64_t i = 1; i <= L.fbar; ++i) {
        for (size_t j = 0; j < 3; ++j) {
            const size_t j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            add({{1, L.c(i, out[j1], A)}, {-1, L.c(i, in[j], A)}, {-1, pv}, {-1, e[j1]}}, -2);
            add({{1, L.c(i, out[j2], A)}, {-1, L.c(i, in[j], A)}, {-1, pv}, {-1, e[j2]}, {1, e[j1]}},
                -2);
            add({{1, L.c(i, in[j], A)}, {-1, L.c(i, out[j1], A)}, {-1, pv}, {-1, e[j]}}, -2);
            add({{1, L.c(i, in[j], A)}, {-1, L.c(i, out[j2], A)}, {-1, pv}, {-1, e[j]}, {1, e[j1]}},
                -2);
            add({{1, L.c(i, out[j], A)}, {-1, L.c(i, in[j1], A)}, {1, pv}, {-1, e[j]}}, -1);
            add({{1, L.c(i, out[j], A)}, {-1, L.c(i, in[j2], A)}, {1, pv}, {-1, e[j]}, {1, e[j1]}},
                -1);
            add({{1, L.c(i, in[j1], A)}, {-1, L.c(i, out[j], A)}, {1, pv}, {-1, e[j1]}}, -1);
            add({{1, L.c(i, in[j2], A)}, {-1, L.c(i, out[j], A)}, {1, pv}, {-1, e[j2]}, {1, e[j1]}},
                -1);
        }
    }
}

} // namespace

std::int64_t face_bound(const WeightedGraph& g) {
    return 2 - g.node_count() +
           std::min<std::int64_t>(g.edge_count(), euler_cap(g)); // euler_cap guards n >= 3
}

PBModel build_facialwalk_model(const WeightedGraph& g, const FacialWalkConfig& cfg) {
    const Layout L = make_layout(g, cfg);
    const int A = g.arc_count();
    PBModel model;
    add_selection_vars(model, g);
    for (std::int64_t i = 1; i <= L.fbar; ++i)
        model.add_var("x_" + std::to_string(i));
    for (std::int64_t i = 1; i <= L.fbar; ++i)
        for (ArcId a = 0; a < A; ++a)
            model.add_var("c_" + std::to_string(i) + "_" + std::to_string(g.arc_tail(a)) + "_" +
                          std::to_string(g.arc_head(a)));
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (L.specialized[static_cast<size_t>(v)]) {
            model.add_var("p_" + std::to_string(v));
            continue;
        }
        for (const NodeId u : g.neighbors(v))
            for (const NodeId w : g.neighbors(v))
                model.add_var("p_" + std::to_string(v) + "_" + std::to_string(u) + "_" +
                              std::to_string(w));
    }

    // Face-count row: n + sum x = 2 + sum s.
    {
        LinConstraint c;
        for (std::int64_t i = 1; i <= L.fbar; ++i)
            c.terms.push_back({1, L.x(i)});
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            c.terms.push_back({-1, e});
        c.cmp = Cmp::Eq;
        c.rhs = 2 - g.node_count();
        model.add_constraint(std::move(c));
    }
    if (cfg.force_first_three_faces)
        for (std::int64_t i = 1; i <= std::min<std::int64_t>(3, L.fbar); ++i)
            model.add_constraint({{{1, L.x(i)}}, Cmp::Eq, 1});
    if (cfg.symmetry_faces_descending)
        for (std::int64_t i = 1; i + 1 <= L.fbar; ++i)
            model.add_constraint({{{1, L.x(i)}, {-1, L.x(i + 1)}}, Cmp::GreaterEq, 0});
    // A used face has at least three arcs.
    for (std::int64_t i = 1; i <= L.fbar; ++i) {
        LinConstraint c;
        for (ArcId a = 0; a < A; ++a)
            c.terms.push_back({1, L.c(i, a, A)});
        c.terms.push_back({-3, L.x(i)});
        c.cmp = Cmp::GreaterEq;
        c.rhs = 0;
        model.add_constraint(std::move(c));
    }
    // An arc can only bound an existing face.
    for (std::int64_t i = 1; i <= L.fbar; ++i)
        for (ArcId a = 0; a < A; ++a)
            model.add_constraint({{{1, L.x(i)}, {-1, L.c(i, a, A)}}, Cmp::GreaterEq, 0});
    // Every selected arc bounds exactly one face.
    for (ArcId a = 0; a < A; ++a) {
        LinConstraint c;
        for (std::int64_t i = 1; i <= L.fbar; ++i)
            c.terms.push_back({1, L.c(i, a, A)});
        c.terms.push_back({-1, WeightedGraph::arc_edge(a)});
        c.cmp = Cmp::Eq;
        c.rhs = 0;
        model.add_constraint(std::move(c));
    }
    // Per face and node, inbound arc count equals outbound arc count.
    for (std::int64_t i = 1; i <= L.fbar; ++i) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
            const auto nbrs = g.neighbors(v);
            const auto inc = g.incident_edges(v);
            if (nbrs.empty())
                continue;
            LinConstraint c;
            for (size_t k = 0; k < nbrs.size(); ++k) {
                c.terms.push_back({1, L.c(i, g.arc_from(inc[k], nbrs[k]), A)});
                c.terms.push_back({-1, L.c(i, g.arc_from(inc[k], v), A)});
            }
            c.cmp = Cmp::Eq;
            c.rhs = 0;
            model.add_constraint(std::move(c));
        }
    }
    // Successor structure per node.
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (L.specialized[static_cast<size_t>(v)]) {
            add_degree3_block(model, g, L, v);
            continue;
        }
        const auto nbrs = g.neighbors(v);
        const auto inc = g.incident_edges(v);
        const int deg = static_cast<int>(nbrs.size());
        // Walks respect the successor relation, in both directions.
        for (int ui = 0; ui < deg; ++ui) {
            const ArcId into_v = g.arc_from(inc[static_cast<size_t>(ui)], nbrs[static_cast<size_t>(ui)]);
            for (int wi = 0; wi < deg; ++wi) {
                const ArcId out_of_v = g.arc_from(inc[static_cast<size_t>(wi)], v);
                const VarId pv = L.p(v, ui, wi, deg);
                for (std::int64_t i = 1; i <= L.fbar; ++i) {
                    model.add_constraint(
                        {{{1, L.c(i, out_of_v, A)}, {-1, L.c(i, into_v, A)}, {-1, pv}},
                         Cmp::GreaterEq,
                         -1});
                    model.add_constraint(
                        {{{1, L.c(i, into_v, A)}, {-1, L.c(i, out_of_v, A)}, {-1, pv}},
                         Cmp::GreaterEq,
                         -1});
                }
            }
        }
        // A selected edge has exactly one successor and one predecessor.
        for (int ui = 0; ui < deg; ++ui) {
            LinConstraint row;
            for (int wi = 0; wi < deg; ++wi)
                row.terms.push_back({1, L.p(v, ui, wi, deg)});
            row.terms.push_back({-1, inc[static_cast<size_t>(ui)]});
            row.cmp = Cmp::Eq;
            row.rhs = 0;
            model.add_constraint(std::move(row));
        }
        for (int wi = 0; wi < deg; ++wi) {
            LinConstraint col;
            for (int ui = 0; ui < deg; ++ui)
                col.terms.push_back({1, L.p(v, ui, wi, deg)});
            col.terms.push_back({-1, inc[static_cast<size_t>(wi)]});
            col.cmp = Cmp::Eq;
            col.rhs = 0;
            model.add_constraint(std::move(col));
        }
    }

    // Cycle cuts, guarded by subdivision cuts: a cycle-consistent candidate
    // whose selection is non-planar (a disconnected selection hiding genus in
    // the face count) must still be cut off.
    model.set_lazy_separator(
        [g, cfg](const Assignment& a) {
            std::vector<LinConstraint> cuts = separate_successor_cycles(g, a, cfg);
            if (cuts.empty() && !test_planarity(g, selection_from_assignment(g, a)).planar)
                cuts = separate_kuratowski(g, a);
            return cuts;
        },
        {"successor_cycles", "kuratowski"});
    return model;
}

std::vector<LinConstraint> separate_successor_cycles(const WeightedGraph& g,
                                                     const Assignment& assignment,
                                                     const FacialWalkConfig& cfg) {
    const Layout L = make_layout(g, cfg);
    if (assignment.size() < static_cast<size_t>(L.var_count))
        throw LengthMismatch("assignment shorter than the facial-walk variable block");
    std::vector<LinConstraint> cuts;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (L.specialized[static_cast<size_t>(v)])
            continue;
        const auto nbrs = g.neighbors(v);
        const auto inc = g.incident_edges(v);
        const int deg = static_cast<int>(nbrs.size());
        std::vector<std::uint8_t> selected(static_cast<size_t>(deg), 0);
        std::vector<int> by_id; // selected positions, ascending neighbor id
        for (int k = 0; k < deg; ++k)
            if (assignment[static_cast<size_t>(inc[static_cast<size_t>(k)])])
                by_id.push_back(k);
        for (const int k : by_id)
            selected[static_cast<size_t>(k)] = 1;
        if (by_id.size() <= 1)
            continue;
        std::sort(by_id.begin(), by_id.end(), [&](int a, int b) {
            return nbrs[static_cast<size_t>(a)] < nbrs[static_cast<size_t>(b)];
        });
        // Successor of each selected position; skip the node on malformed rows.
        std::vector<int> succ(static_cast<size_t>(deg), -1);
        bool well_formed = true;
        for (const int k : by_id) {
            int found = -1;
            for (int w = 0; w < deg && well_formed; ++w) {
                if (!assignment[static_cast<size_t>(L.p(v, k, w, deg))])
                    continue;
                if (found >= 0 || !selected[static_cast<size_t>(w)])
                    well_formed = false;
                else
                    found = w;
            }
            if (found < 0)
                well_formed = false;
            if (!well_formed)
                break;
            succ[static_cast<size_t>(k)] = found;
        }
        if (!well_formed)
            continue;
        // Cycle decomposition, cycles in ascending order of their minimum id.
        std::vector<std::uint8_t> visited(static_cast<size_t>(deg), 0);
        bool first_cycle = true;
        const EdgeId global_min_edge = inc[static_cast<size_t>(by_id.front())];
        for (const int start : by_id) {
            if (visited[static_cast<size_t>(start)])
                continue;
            std::vector<int> cycle;
            for (int k = start; !visited[static_cast<size_t>(k)]; k = succ[static_cast<size_t>(k)]) {
                visited[static_cast<size_t>(k)] = 1;
                cycle.push_back(k);
            }
            if (first_cycle) {
                first_cycle = false;
                continue;
            }
            std::vector<std::uint8_t> in_u(static_cast<size_t>(deg), 0);
            for (const int k : cycle)
                in_u[static_cast<size_t>(k)] = 1;
            int witness = cycle.front(); // position of the cycle's minimum id
            for (const int k : cycle)
                if (nbrs[static_cast<size_t>(k)] < nbrs[static_cast<size_t>(witness)])
                    witness = k;
            LinConstraint cut;
            for (int a = 0; a < deg; ++a) {
                if (!in_u[static_cast<size_t>(a)])
                    continue;
                for (int w = 0; w < deg; ++w)
                    if (!in_u[static_cast<size_t>(w)])
                        cut.terms.push_back({1, L.p(v, a, w, deg)});
            }
            cut.terms.push_back({-1, inc[static_cast<size_t>(witness)]});
            cut.terms.push_back({-1, global_min_edge});
            cut.cmp = Cmp::GreaterEq;
            cut.rhs = -1;
            cuts.push_back(std::move(cut));
        }
    }
    return cuts;
}

std::optional<Assignment> facialwalk_warm_start(const WeightedGraph& g, const EdgeSelection& sel,
                                                const FacialWalkConfig& cfg) {
    const Layout L = make_layout(g, cfg);
    const int A = g.arc_count();
    const PlanarityResult pr = test_planarity(g, sel);
    if (!pr.planar)
        return std::nullopt;
    const FaceCensus census = trace_faces(g, sel, *pr.embedding);
    const std::int64_t faces = census.face_count();
    // The face-count row assumes a connected spanning selection; anything
    // else would need a different face count and cannot seed the model.
    if (faces != 2 - g.node_count() + sel.count() || faces > L.fbar)
        return std::nullopt;
    if (cfg.force_first_three_faces && faces < std::min<std::int64_t>(3, L.fbar))
        return std::nullopt;
    Assignment a(static_cast<size_t>(L.var_count), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        a[static_cast<size_t>(e)] = sel.contains(e) ? 1 : 0;
    for (std::int64_t i = 1; i <= faces; ++i)
        a[static_cast<size_t>(L.x(i))] = 1;
    for (size_t f = 0; f < census.faces.size(); ++f)
        for (const ArcId arc : census.faces[f])
            a[static_cast<size_t>(L.c(static_cast<std::int64_t>(f) + 1, arc, A))] = 1;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& rot = pr.embedding->rotation[static_cast<size_t>(v)];
        const size_t d = rot.size();
        if (L.specialized[static_cast<size_t>(v)]) {
            // Orientation bit: 1 unless all three edges are selected and the
            // rotation runs against ascending neighbor order. With fewer
            // selected edges the cyclic order is unique and either bit works.
            std::uint8_t bit = 1;
            if (d == 3) {
                std::array<NodeId, 3> seq = {g.arc_head(rot[0]), g.arc_head(rot[1]),
                                             g.arc_head(rot[2])};
                std::array<NodeId, 3> sorted = seq;
                std::sort(sorted.begin(), sorted.end());
                for (size_t k = 0; k < 3; ++k)
                    if (seq[k] == sorted[0])
                        bit = (seq[(k + 1) % 3] == sorted[1]) ? 1 : 0;
            }
            a[static_cast<size_t>(L.p_base[static_cast<size_t>(v)])] = bit;
            continue;
        }
        const auto nbrs = g.neighbors(v);
        const int deg = static_cast<int>(nbrs.size());
        for (size_t k = 0; k < d; ++k) {
            const int ui = neighbor_position(nbrs, g.arc_head(rot[k]));
            const int wi = neighbor_position(nbrs, g.arc_head(rot[(k + 1) % d]));
            a[static_cast<size_t>(L.p(v, ui, wi, deg))] = 1;
        }
    }
    return a;
}

} // namespace mps
