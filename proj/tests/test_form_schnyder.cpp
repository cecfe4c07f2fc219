#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "mps/errors.hpp"
#include "mps/form_kuratowski.hpp"
#include "mps/form_schnyder.hpp"
#include "mps/formulation.hpp"
#include "mps/oracle.hpp"
#include "mps/pb_export.hpp"
#include "mps/pb_solver.hpp"
#include "mps/planarity.hpp"
#include "support/named_graphs.hpp"

using namespace mps;
using namespace mps::testsupport;

namespace {

VarId vid(const PBModel& m, const std::string& name) {
    const auto& names = m.var_names();
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return static_cast<VarId>(i);
    FAIL("no variable named ", name);
    return -1;
}

bool before(const WeightedGraph&, const PBModel& m, const Assignment& a, int i, NodeId u,
            NodeId v) {
    return a[static_cast<size_t>(vid(m, "t_" + std::to_string(i) + "_" + std::to_string(u) + "_" +
                                            std::to_string(v)))] != 0;
}

/// Post-solve checks: three strict total orders, empty intersection, and a
/// witnessing order for every selected edge against every other node.
void check_orders(const WeightedGraph& g, const PBModel& m, const Assignment& a) {
    const int n = g.node_count();
    for (int i = 1; i <= 3; ++i) {
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                CHECK(before(g, m, a, i, u, v) + before(g, m, a, i, v, u) == 1);
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = 0; v < n; ++v)
                for (NodeId w = 0; w < n; ++w) {
                    if (u == v || v == w || u == w)
                        continue;
                    if (before(g, m, a, i, u, v) && before(g, m, a, i, v, w))
                        CHECK(before(g, m, a, i, u, w));
                }
    }
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v)
            if (u != v)
                CHECK(!(before(g, m, a, 1, u, v) && before(g, m, a, 2, u, v) &&
                        before(g, m, a, 3, u, v)));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!a[static_cast<size_t>(e)])
            continue;
        const WeightedEdge& we = g.edge(e);
        for (NodeId z = 0; z < n; ++z) {
            if (z == we.u || z == we.v)
                continue;
            bool witnessed = false;
            for (int i = 1; i <= 3; ++i)
                witnessed = witnessed ||
                            (before(g, m, a, i, we.u, z) && before(g, m, a, i, we.v, z));
            CHECK(witnessed);
        }
    }
}

/// t-variable id under the documented layout: edge block, then the order
/// blocks (tail-major, head ascending with the tail skipped).
VarId t_id(const WeightedGraph& g, int i, NodeId u, NodeId v) {
    const int n = g.node_count();
    return g.edge_count() + (i - 1) * n * (n - 1) + u * (n - 1) + (v < u ? v : v - 1);
}

} // namespace

TEST_SUITE("formschnyder") {

TEST_CASE("model shape on K4") {
    const auto g = complete_graph(4);
    const PBModel m = build_schnyder_model(g);
    CHECK(m.var_count() == 6 + 3 * 4 * 3 + 3 * 6 * 2); // s, t, a blocks
    CHECK(m.var_name(0) == "s_0_1");
    CHECK(m.var_name(6) == "t_1_0_1");
    CHECK(m.var_name(6 + 36) == "a_1_0_1_2");
    // Cover rows 12, order bounds 72, intersection caps 12, transitivity
    // 72, totality 18, triangle pinning 3.
    CHECK(m.constraints().size() == 12 + 72 + 12 + 72 + 18 + 3);
    CHECK(!m.lazy_separator());
    CHECK(vid(m, "t_2_3_0") == t_id(g, 2, 3, 0)); // documented layout holds
}

TEST_CASE("triangle pinning rows on K4 use the lexicographically first triangle") {
    const auto g = complete_graph(4);
    const PBModel m = build_schnyder_model(g);
    // Triangle {0,1,2}: edge {0,1} pinned for node 2 to order 1, {0,2} for
    // node 1 to order 2, {1,2} for node 0 to order 3.
    const std::vector<LinConstraint> want = {
        {{{1, vid(m, "a_2_0_1_2")}, {1, vid(m, "a_3_0_1_2")}}, Cmp::Eq, 0},
        {{{1, vid(m, "a_1_0_2_1")}, {1, vid(m, "a_3_0_2_1")}}, Cmp::Eq, 0},
        {{{1, vid(m, "a_1_1_2_0")}, {1, vid(m, "a_2_1_2_0")}}, Cmp::Eq, 0},
    };
    for (const LinConstraint& c : want)
        CHECK(std::count(m.constraints().begin(), m.constraints().end(), c) == 1);
    SchnyderConfig off;
    off.symmetry_breaking = false;
    CHECK(build_schnyder_model(g, off).constraints().size() == m.constraints().size() - 3);
}

TEST_CASE("triangle-free graphs pin two adjacent edges instead") {
    const auto g = complete_bipartite(3, 3); // girth 4
    const PBModel m = build_schnyder_model(g);
    // First adjacent pair by edge id: {0,3} and {0,4}, shared node 0, so
    // {0,3} is pinned for node 4 to order 1 and {0,4} for node 3 to order 2.
    const std::vector<LinConstraint> want = {
        {{{1, vid(m, "a_2_0_3_4")}, {1, vid(m, "a_3_0_3_4")}}, Cmp::Eq, 0},
        {{{1, vid(m, "a_1_0_4_3")}, {1, vid(m, "a_3_0_4_3")}}, Cmp::Eq, 0},
    };
    for (const LinConstraint& c : want)
        CHECK(std::count(m.constraints().begin(), m.constraints().end(), c) == 1);
    SchnyderConfig off;
    off.symmetry_breaking = false;
    CHECK(build_schnyder_model(g, off).constraints().size() == m.constraints().size() - 2);
}

TEST_CASE("a single-edge graph has nothing to pin") {
    const auto g = build_graph(3, {{0, 1}});
    const PBModel pinned = build_schnyder_model(g);
    SchnyderConfig off;
    off.symmetry_breaking = false;
    CHECK(pinned.constraints().size() == build_schnyder_model(g, off).constraints().size());
    const SolveResult r = solve(pinned);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective_value == 1);
    CHECK_THROWS_AS((void)build_schnyder_model(path_graph(2)), TooFewNodes);
}

TEST_CASE("K5 solves to nine edges") {
    const auto g = complete_graph(5);
    const PBModel m = build_schnyder_model(g);
    const SolveResult r = solve(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective_value == 9);
    CHECK(r.dual_bound == 9);
    CHECK(is_planar(g, selection_from_assignment(g, r.incumbent)));
    check_orders(g, m, r.incumbent);
}

TEST_CASE("K3,3 solves to eight edges") {
    const auto g = complete_bipartite(3, 3);
    const PBModel m = build_schnyder_model(g);
    const SolveResult r = solve(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective_value == 8);
    CHECK(is_planar(g, selection_from_assignment(g, r.incumbent)));
    check_orders(g, m, r.incumbent);
}

TEST_CASE("a path is realizable with every edge kept") {
    const auto g = path_graph(4);
    const PBModel m = build_schnyder_model(g);
    const SolveResult r = solve(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective_value == 3);
    check_orders(g, m, r.incumbent);
}

TEST_CASE("transitivity separator: consistent orders give nothing") {
    const auto g = complete_graph(3);
    const PBModel m = build_schnyder_model(g);
    Assignment a(static_cast<size_t>(m.var_count()), 0);
    for (int i = 1; i <= 3; ++i) // all three orders 0 < 1 < 2
        for (NodeId u = 0; u < 3; ++u)
            for (NodeId v = 0; v < 3; ++v)
                if (u < v)
                    a[static_cast<size_t>(vid(m, "t_" + std::to_string(i) + "_" +
                                                     std::to_string(u) + "_" +
                                                     std::to_string(v)))] = 1;
    CHECK(separate_transitivity(g, a).empty());
    CHECK_THROWS_AS((void)separate_transitivity(g, Assignment(4, 0)), LengthMismatch);
}

TEST_CASE("transitivity separator: a 3-cycle yields its three rotations") {
    const auto g = complete_graph(3);
    const PBModel m = build_schnyder_model(g);
    Assignment a(static_cast<size_t>(m.var_count()), 0);
    auto set_t = [&](int i, NodeId u, NodeId v) {
        a[static_cast<size_t>(vid(m, "t_" + std::to_string(i) + "_" + std::to_string(u) + "_" +
                                        std::to_string(v)))] = 1;
    };
    set_t(1, 0, 1); // cyclic: 0 < 1 < 2 < 0
    set_t(1, 1, 2);
    set_t(1, 2, 0);
    for (const int i : {2, 3}) { // proper orders
        set_t(i, 0, 1);
        set_t(i, 0, 2);
        set_t(i, 1, 2);
    }
    const auto cuts = separate_transitivity(g, a);
    REQUIRE(cuts.size() == 3); // only order 1, once per rotation
    for (const LinConstraint& c : cuts) {
        CHECK(c.cmp == Cmp::LessEq);
        CHECK(c.rhs == 1);
        CHECK(constraint_activity(c, a) == 2);
        for (const LinTerm& t : c.terms) {
            const std::string& name = m.var_name(t.var);
            CHECK(name.substr(0, 4) == "t_1_");
        }
    }
    // (i, u, v, w) order: (1,0,1,2) then (1,1,2,0) then (1,2,0,1).
    CHECK(cuts[0].terms[0].var == vid(m, "t_1_0_1"));
    CHECK(cuts[1].terms[0].var == vid(m, "t_1_1_2"));
    CHECK(cuts[2].terms[0].var == vid(m, "t_1_2_0"));
}

TEST_CASE("transitivity separator caps a flood of violations at 1000") {
    const auto g = complete_graph(15);
    // Rotational tournament in every order: u before v iff (v - u) mod 15
    // is in [1, 7]. Dense in cyclic triples.
    Assignment a(static_cast<size_t>(g.edge_count() + 3 * 15 * 14), 0);
    for (int i = 1; i <= 3; ++i)
        for (NodeId u = 0; u < 15; ++u)
            for (NodeId v = 0; v < 15; ++v)
                if (u != v && ((v - u) % 15 + 15) % 15 <= 7)
                    a[static_cast<size_t>(t_id(g, i, u, v))] = 1;
    int violated = 0;
    for (int i = 1; i <= 3; ++i)
        for (NodeId u = 0; u < 15; ++u)
            for (NodeId v = 0; v < 15; ++v)
                for (NodeId w = 0; w < 15; ++w) {
                    if (u == v || v == w || u == w)
                        continue;
                    if (a[static_cast<size_t>(t_id(g, i, u, v))] &&
                        a[static_cast<size_t>(t_id(g, i, v, w))] &&
                        !a[static_cast<size_t>(t_id(g, i, u, w))])
                        ++violated;
                }
    REQUIRE(violated > 1000);
    const auto cuts = separate_transitivity(g, a);
    CHECK(cuts.size() == 1000);
    for (const LinConstraint& c : cuts)
        CHECK(constraint_activity(c, a) == 2);
}

TEST_CASE("lazy transitivity reaches the same optimum") {
    const auto g = complete_graph(5);
    SchnyderConfig cfg;
    cfg.transitivity = SchnyderConfig::Transitivity::Lazy;
    const PBModel m = build_schnyder_model(g, cfg);
    CHECK(m.lazy_families() == std::vector<std::string>{"transitivity"});
    const SolveResult r = solve(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective_value == 9);
    check_orders(g, m, r.incumbent);
}

TEST_CASE("ablations never change the optimum") {
    const auto g = complete_graph(5);
    for (const bool pin : {true, false})
        for (const bool intersect : {true, false}) {
            SchnyderConfig cfg;
            cfg.symmetry_breaking = pin;
            cfg.intersection_constraints = intersect;
            const SolveResult r = solve(build_schnyder_model(g, cfg));
            REQUIRE(r.status == SolveStatus::Optimal);
            CHECK(r.objective_value == 9);
        }
}

TEST_CASE("cross-formulation agreement with the subdivision model") {
    for (int i = 0; i < 3; ++i) {
        const auto g = random_connected(6, 4 + i % 2, 8800 + static_cast<std::uint64_t>(i));
        const std::int64_t truth = oracle_mps(g).max_weight;
        const SolveResult rs = solve(build_schnyder_model(g));
        REQUIRE(rs.status == SolveStatus::Optimal);
        CHECK(rs.objective_value == truth);
        const SolveResult rk = solve(build_kuratowski_model(g));
        REQUIRE(rk.status == SolveStatus::Optimal);
        CHECK(rk.objective_value == truth);
    }
}

TEST_CASE("export round-trip") {
    const PBModel m = build_schnyder_model(complete_graph(4));
    CHECK(structurally_equal(m, parse_lp(export_lp(m))));
}

TEST_CASE("two solves are bit-identical") {
    const auto g = complete_graph(5);
    const PBModel m = build_schnyder_model(g);
    const SolveResult a = solve(m);
    const SolveResult b = solve(m);
    CHECK(a.incumbent == b.incumbent);
    CHECK(a.stats.bnb_nodes == b.stats.bnb_nodes);
}

} // TEST_SUITE
