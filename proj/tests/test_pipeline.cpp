#include "doctest.h"

#include <cstdint>
#include <vector>

#include "mps/errors.hpp"
#include "mps/heuristics.hpp"
#include "mps/oracle.hpp"
#include "mps/pipeline.hpp"
#include "mps/planarity.hpp"
#include "support/named_graphs.hpp"

using namespace mps;
using namespace mps::testsupport;

namespace {

/// Two disjoint K5 blocks joined by nothing; exercises per-component cores.
WeightedGraph double_k5() {
    std::vector<EdgeInput> edges;
    for (NodeId u = 0; u < 5; ++u)
        for (NodeId v = u + 1; v < 5; ++v) {
            edges.push_back({u, v, 1});
            edges.push_back({static_cast<NodeId>(u + 5), static_cast<NodeId>(v + 5), 1});
        }
    return build_graph(10, edges);
}

} // namespace

TEST_SUITE("pipeline") {

TEST_CASE("formulation names round-trip") {
    for (const Formulation f : all_formulations) {
        const auto parsed = parse_formulation(formulation_name(f));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == f);
    }
    CHECK(!parse_formulation("simplex").has_value());
    CHECK(!parse_formulation("").has_value());
}

TEST_CASE("planar inputs skip the solver entirely") {
    const auto g = complete_graph(4);
    for (const Formulation f : all_formulations) {
        PipelineConfig cfg;
        cfg.formulation = f;
        const PipelineResult r = solve_mps(g, cfg);
        CHECK(r.status == SolveStatus::Optimal);
        CHECK(r.objective == 6);
        CHECK(r.dual_bound == 6);
        CHECK(r.core_count == 0);
        CHECK(r.stats.bnb_nodes == 0);
        CHECK(r.selection.to_edge_list().size() == 6);
    }
}

TEST_CASE("K5 reaches nine with every formulation") {
    const auto g = complete_graph(5);
    for (const Formulation f : all_formulations) {
        PipelineConfig cfg;
        cfg.formulation = f;
        const PipelineResult r = solve_mps(g, cfg);
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.objective == 9);
        CHECK(r.dual_bound == 9);
        CHECK(r.core_count == 1);
        CHECK(is_planar(g, r.selection));
        CHECK(selection_weight(g, r.selection) == 9);
        if (f != Formulation::Schnyder)
            CHECK(r.warm_starts_accepted);
    }
}

TEST_CASE("secured parts survive around a core") {
    // K5 with a pendant path hanging off node 4: the path is secured by the
    // reduction and must come back untouched.
    std::vector<EdgeInput> edges;
    for (NodeId u = 0; u < 5; ++u)
        for (NodeId v = u + 1; v < 5; ++v)
            edges.push_back({u, v, 1});
    edges.push_back({4, 5, 7});
    edges.push_back({5, 6, 2});
    const auto g = build_graph(7, edges);
    PipelineConfig cfg;
    cfg.formulation = Formulation::LeftRight;
    const PipelineResult r = solve_mps(g, cfg);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective == 9 + 9);
    CHECK(r.core_count == 1);
    CHECK(r.selection.contains(10));
    CHECK(r.selection.contains(11));
    CHECK(is_planar(g, r.selection));
}

TEST_CASE("disconnected inputs solve component by component") {
    const auto g = double_k5();
    PipelineConfig cfg;
    cfg.formulation = Formulation::Kuratowski;
    const PipelineResult r = solve_mps(g, cfg);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective == 18);
    CHECK(r.core_count == 2);
    CHECK(is_planar(g, r.selection));
}

TEST_CASE("weighted instances match the oracle") {
    for (int i = 0; i < 2; ++i) {
        const auto g = random_connected_weighted(7, 5, 9, 4400 + static_cast<std::uint64_t>(i));
        const std::int64_t truth = oracle_mps(g).max_weight;
        for (const Formulation f : {Formulation::Kuratowski, Formulation::LeftRight}) {
            PipelineConfig cfg;
            cfg.formulation = f;
            const PipelineResult r = solve_mps(g, cfg);
            REQUIRE(r.status == SolveStatus::Optimal);
            CHECK(r.objective == truth);
            CHECK(selection_weight(g, r.selection) == truth);
        }
    }
}

TEST_CASE("a zero time budget falls back to the heuristic floor") {
    const auto g = petersen();
    PipelineConfig cfg;
    cfg.formulation = Formulation::Kuratowski;
    cfg.limits.time_sec = 0.0;
    const PipelineResult r = solve_mps(g, cfg);
    CHECK(r.status == SolveStatus::TimeLimit);
    const std::int64_t floor = selection_weight(g, cactus_heuristic(g, cfg.heuristic_seed));
    CHECK(r.objective >= floor);
    CHECK(r.objective < r.dual_bound);
    CHECK(r.dual_bound == 15); // untouched core counts in full
    CHECK(is_planar(g, r.selection));
}

TEST_CASE("a node budget stops after the first core") {
    const auto g = double_k5();
    PipelineConfig cfg;
    cfg.formulation = Formulation::Kuratowski;
    cfg.warm_start = false; // warm-started K5 proves optimal at the root
    cfg.limits.nodes = 1;
    const PipelineResult r = solve_mps(g, cfg);
    CHECK(r.status == SolveStatus::NodeLimit);
    CHECK(r.objective >= 16); // both cores still carry at least the heuristic
    CHECK(is_planar(g, r.selection));
    CHECK(r.objective <= r.dual_bound);
}

TEST_CASE("cold starts still solve") {
    const auto g = complete_bipartite(3, 3);
    PipelineConfig cfg;
    cfg.formulation = Formulation::FacialWalks;
    cfg.warm_start = false;
    const PipelineResult r = solve_mps(g, cfg);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective == 8);
}

} // TEST_SUITE
