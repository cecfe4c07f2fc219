#include "doctest.h"

#include "mps/pb_export.hpp"
#include "mps/pb_solver.hpp"

using namespace mps;

namespace {

PBModel knapsack_model() {
    PBModel m;
    m.add_var("s_0_1", 3);
    m.add_var("s_0_2", 2);
    m.add_var("s_1_2", 1);
    m.add_constraint({{{1, 0}, {1, 1}, {1, 2}}, Cmp::LessEq, 2});
    m.add_constraint({{{1, 0}, {-2, 2}}, Cmp::GreaterEq, -1});
    m.add_constraint({{{1, 1}, {1, 2}}, Cmp::Eq, 1});
    return m;
}

} // namespace

TEST_SUITE("pbexport") {

TEST_CASE("opb text for a one-variable model") {
    PBModel m;
    m.add_var("s_0_1", 1);
    const std::string text = export_opb(m);
    CHECK(text == "* #variable= 1 #constraint= 0\n"
                  "min: -1 x1;\n");
}

TEST_CASE("opb rewrites <= by negation and keeps >= and =") {
    const std::string text = export_opb(knapsack_model());
    CHECK(text == "* #variable= 3 #constraint= 3\n"
                  "min: -3 x1 -2 x2 -1 x3;\n"
                  "-1 x1 -1 x2 -1 x3 >= -2;\n"
                  "+1 x1 -2 x3 >= -1;\n"
                  "+1 x2 +1 x3 = 1;\n");
}

TEST_CASE("opb lists lazily separated families in the header") {
    PBModel m;
    m.add_var("s_0_1", 1);
    m.set_lazy_separator([](const Assignment&) { return std::vector<LinConstraint>{}; },
                         {"kuratowski"});
    const std::string text = export_opb(m);
    CHECK(text.find("* incomplete: lazily separated families kuratowski") != std::string::npos);
}

TEST_CASE("opb export is byte-deterministic") {
    CHECK(export_opb(knapsack_model()) == export_opb(knapsack_model()));
}

TEST_CASE("lp text sections") {
    PBModel m;
    m.add_var("s_0_1", 2);
    m.add_var("aux", 0);
    m.add_constraint({{{1, 0}, {1, 1}}, Cmp::LessEq, 1});
    const std::string text = export_lp(m);
    CHECK(text == "Maximize\n"
                  " obj: +2 s_0_1\n"
                  "Subject To\n"
                  " c0: +1 s_0_1 +1 aux <= 1\n"
                  "Binary\n"
                  " s_0_1\n"
                  " aux\n"
                  "End\n");
}

TEST_CASE("lp export is byte-deterministic") {
    CHECK(export_lp(knapsack_model()) == export_lp(knapsack_model()));
}

TEST_CASE("lp round-trip reproduces the model structurally") {
    const PBModel m = knapsack_model();
    const PBModel back = parse_lp(export_lp(m));
    CHECK(structurally_equal(m, back));
}

TEST_CASE("round-trip ignores the separator but keeps explicit constraints") {
    PBModel m = knapsack_model();
    m.set_lazy_separator([](const Assignment&) { return std::vector<LinConstraint>{}; },
                         {"family"});
    const PBModel back = parse_lp(export_lp(m));
    CHECK(structurally_equal(m, back));
    CHECK_FALSE(back.lazy_separator());
}

TEST_CASE("round-trip keeps negative and zero objective coefficients") {
    PBModel m;
    m.add_var("a", -4);
    m.add_var("b", 0);
    m.add_var("c", 7);
    m.add_constraint({{{-3, 0}, {5, 2}}, Cmp::GreaterEq, 2});
    const PBModel back = parse_lp(export_lp(m));
    CHECK(structurally_equal(m, back));
    CHECK(back.objective_coeff(1) == 0);
}

TEST_CASE("parse_lp rejects malformed input") {
    CHECK_THROWS_AS(parse_lp("nope"), ParseError);
    CHECK_THROWS_AS(parse_lp("Maximize\n obj: +1 a\nBinary\n a\nEnd\n"), ParseError);
    CHECK_THROWS_AS(parse_lp("Maximize\n obj: +1 ghost\nSubject To\nBinary\n a\nEnd\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_lp("Maximize\n obj: +1 a\nSubject To\n c0: +1 a ?? 1\nBinary\n a\nEnd\n"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_lp("Maximize\n obj: +1 a\nSubject To\n c0: +x a <= 1\nBinary\n a\nEnd\n"),
        ParseError);
    try {
        parse_lp("Maximize\n obj: +1 a\nSubject To\n c0: bad\nBinary\n a\nEnd\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_no == 4);
    }
}

TEST_CASE("solving a parsed model matches solving the original") {
    const PBModel m = knapsack_model();
    const PBModel back = parse_lp(export_lp(m));
    const SolveResult a = solve(m);
    const SolveResult b = solve(back);
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK(a.objective_value == b.objective_value);
    CHECK(a.incumbent == b.incumbent);
}

} // TEST_SUITE
