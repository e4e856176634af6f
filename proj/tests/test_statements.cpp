#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faithcheck/errors.hpp"
#include "faithcheck/rng.hpp"
#include "faithcheck/statements.hpp"
#include "helpers.hpp"

using fc::CISet;
using fc::CIStatement;
using fc::Goal;
using fc::InputError;
using fc::JointTable;
using fc::Semantics;

TEST_CASE("universe sizes and canonical order") {
    CHECK(fc::statement_universe(1).empty());
    CHECK(fc::statement_universe(2).size() == 1);
    auto u3 = fc::statement_universe(3);
    REQUIRE(u3.size() == 9);
    std::vector<std::string> expect = {
        "X _||_ Y",     "X _||_ Z",     "Y _||_ Z",
        "X _||_ Y | Z", "X _||_ Z | Y", "Y _||_ Z | X",
        "X _||_ Y,Z",   "X,Y _||_ Z",   "X,Z _||_ Y",
    };
    for (size_t i = 0; i < 9; ++i) CHECK(fc::format_statement(u3[i], xyz()) == expect[i]);
    CHECK(fc::statement_universe(4).size() == 55);
}

TEST_CASE("statement parse, canonical form, round trip") {
    CHECK(stmt("Y _||_ X") == stmt("X _||_ Y"));
    CHECK(stmt("Y,Z _||_ X") == stmt("X _||_ Y,Z"));
    CHECK(stmt(" X _||_  Z | Y ") == stmt("X _||_ Z | Y"));
    CHECK(fc::format_statement(stmt("Z _||_ Y | X"), xyz()) == "Y _||_ Z | X");
    for (const auto& st : fc::statement_universe(3))
        CHECK(fc::parse_statement(fc::format_statement(st, xyz()), xyz()) == st);
    CHECK_THROWS_AS(stmt("X _||_ X"), InputError);
    CHECK_THROWS_AS(stmt("X _||_ Y | X"), InputError);
    CHECK_THROWS_AS(fc::parse_statement("X Y", xyz()), fc::ParseError);
    CHECK_THROWS_AS(stmt("X _||_ W"), fc::ParseError);
}

TEST_CASE("extraction: exact sets for the bundled examples") {
    auto extracted = [](int id, Semantics sem) {
        return fc::extract_ci_set(fc::example_table(id), sem);
    };
    const CISet all9 = ciset({"X _||_ Y", "X _||_ Z", "Y _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y",
                              "Y _||_ Z | X", "X _||_ Y,Z", "X,Y _||_ Z", "X,Z _||_ Y"},
                             true);
    CHECK(extracted(1, Semantics::kStrict) == all9);
    CHECK(extracted(2, Semantics::kStrict) == ciset({"X _||_ Y", "X _||_ Z", "Y _||_ Z"}));
    CHECK(extracted(3, Semantics::kStrict) ==
          ciset({"X _||_ Y", "X _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y", "X _||_ Y,Z"}));
    CHECK(extracted(4, Semantics::kStrict) == ciset({"X _||_ Y | Z", "X _||_ Z | Y"}));
    CHECK(extracted(5, Semantics::kStrict) ==
          ciset({"X _||_ Y", "X _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y", "X _||_ Y,Z"}));
    CHECK(extracted(6, Semantics::kStrict) ==
          ciset({"X _||_ Y | Z", "X _||_ Z | Y", "Y _||_ Z | X"}));
    CHECK(extracted(7, Semantics::kStrict) ==
          ciset({"X _||_ Y", "X _||_ Z", "Y _||_ Z", "X _||_ Y | Z", "X _||_ Y,Z", "X,Y _||_ Z",
                 "X,Z _||_ Y"},
                true));
    CHECK(extracted(8, Semantics::kStrict) ==
          ciset({"X _||_ Z", "Y _||_ Z", "X _||_ Z | Y", "Y _||_ Z | X", "X,Y _||_ Z"}));
    CHECK(extracted(9, Semantics::kStrict) ==
          ciset({"X _||_ Y", "X _||_ Z", "Y _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y", "X _||_ Y,Z",
                 "X,Y _||_ Z", "X,Z _||_ Y"},
                true));
    CHECK(extracted(10, Semantics::kStrict) ==
          ciset({"X _||_ Y", "X _||_ Z", "Y _||_ Z", "X _||_ Y,Z", "X,Y _||_ Z", "X,Z _||_ Y"},
                true));
    // standard semantics waives the zero-mass conditioning values
    CHECK(extracted(10, Semantics::kStandard) == all9);
    CHECK(extracted(7, Semantics::kStandard) == all9);
    CHECK(extracted(9, Semantics::kStandard) == all9);
    CHECK(extracted(4, Semantics::kStandard) == ciset({"X _||_ Y | Z", "X _||_ Z | Y"}));
}

TEST_CASE("serialization order is deterministic") {
    CISet set = ciset({"Y _||_ Z | X", "X _||_ Y", "X _||_ Y,Z"});
    CHECK(set.serialize(xyz()) == "X _||_ Y\nY _||_ Z | X\nX _||_ Y,Z\n");
    CHECK(ciset({}, true).serialize(xyz()) == "mutual\n");
}

TEST_CASE("semigraphoid closure: decomposition and weak union from a joint statement") {
    CISet closed = fc::semigraphoid_closure(ciset({"X _||_ Y,Z"}));
    CHECK(closed == ciset({"X _||_ Y", "X _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y", "X _||_ Y,Z"}));
}

TEST_CASE("semigraphoid closure: contraction") {
    CISet closed = fc::semigraphoid_closure(ciset({"X _||_ Y | Z", "X _||_ Z"}));
    CHECK(closed == ciset({"X _||_ Y", "X _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y", "X _||_ Y,Z"}));
    CHECK(fc::semigraphoid_closure(ciset({})) == ciset({}));
}

TEST_CASE("closure is idempotent and monotone") {
    const auto u3 = fc::statement_universe(3);
    fc::SplitMix64 rng{3};
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<CIStatement> small, big;
        for (const auto& st : u3) {
            switch (rng.next() % 4) {
                case 0: small.push_back(st); big.push_back(st); break;
                case 1: big.push_back(st); break;
                default: break;
            }
        }
        CISet s = CISet::of(3, small), b = CISet::of(3, big);
        CISet cs = fc::semigraphoid_closure(s);
        CHECK(fc::semigraphoid_closure(cs) == cs);
        CHECK(cs.statements_subset_of(fc::semigraphoid_closure(b)));
    }
}

TEST_CASE("standard-semantics extraction is a semigraphoid fixed point") {
    fc::SplitMix64 rng{5};
    for (int i = 0; i < 60; ++i) {
        JointTable t = fc::random_table(xyz(), rng, 30, false);
        CISet ex = fc::extract_ci_set(t, Semantics::kStandard);
        CHECK(fc::semigraphoid_closure(ex) == ex);
    }
}

TEST_CASE("intersection rule") {
    CISet in = ciset({"X _||_ Y | Z", "X _||_ Z | Y"});
    CISet pos = fc::intersection_closure(in, true);
    CHECK(pos.contains(stmt("X _||_ Y,Z")));
    CHECK(pos == ciset({"X _||_ Y", "X _||_ Z", "X _||_ Y | Z", "X _||_ Z | Y", "X _||_ Y,Z"}));
    CHECK(fc::intersection_closure(in, false) == in);
    CHECK(fc::intersection_closure(ciset({}), true) == ciset({}));
}

TEST_CASE("positive tables are intersection fixed points; examples 4 and 6 violate it") {
    fc::SplitMix64 rng{9};
    for (int i = 0; i < 40; ++i) {
        JointTable t = fc::random_table(xyz(), rng, 30, true);
        CISet ex = fc::extract_ci_set(t, Semantics::kStrict);
        CHECK(fc::intersection_closure(ex, true) == ex);
    }
    for (int id : {4, 6}) {
        JointTable t = fc::example_table(id);
        CISet ex = fc::extract_ci_set(t, Semantics::kStrict);
        CISet closed = fc::intersection_closure(ex, true);
        CHECK(closed.contains(stmt("X _||_ Y,Z")));
        CHECK_FALSE(ex.contains(stmt("X _||_ Y,Z")));
        CHECK_FALSE(t.is_ci(1, 6, 0, Semantics::kStrict));  // the added statement truly fails
    }
}

TEST_CASE("theorem 2 biconditional") {
    CHECK(fc::check_theorem2(fc::example_table(1)));
    CHECK(fc::check_theorem2(fc::example_table(2)));
    CHECK(fc::check_theorem2(fc::example_table(3)));
    CHECK_THROWS_AS(fc::check_theorem2(fc::example_table(8)), InputError);  // P(Z=1) = 0
    fc::SplitMix64 rng{13};
    for (int i = 0; i < 60; ++i)
        CHECK(fc::check_theorem2(fc::random_table(xyz(), rng, 20, true)));
}

TEST_CASE("derived mutual flag equals the direct product test") {
    fc::SplitMix64 rng{17};
    for (int i = 0; i < 60; ++i) {
        JointTable t = fc::random_table(xyz(), rng, 16, false);
        CISet ex = fc::extract_ci_set(t, Semantics::kStrict);
        CHECK(ex.mutual() == fc::derived_mutual(3, ex.statements()));
    }
    for (int id = 1; id <= 10; ++id) {
        JointTable t = fc::example_table(id);
        CISet ex = fc::extract_ci_set(t, Semantics::kStrict);
        CHECK(ex.mutual() == fc::derived_mutual(3, ex.statements()));
    }
}

TEST_CASE("check_implication finds the intersection-rule counterexample") {
    fc::Verdict v = fc::check_implication(xyz(), ciset({"X _||_ Y | Z", "X _||_ Z | Y"}),
                                          Goal::of(stmt("X _||_ Y,Z")), Semantics::kStrict, 0, 20000, 8);
    REQUIRE(v.found());
    const JointTable& t = *v.counterexample;
    CHECK(t.is_ci(1, 2, 4, Semantics::kStrict));
    CHECK(t.is_ci(1, 4, 2, Semantics::kStrict));
    CHECK_FALSE(t.is_ci(1, 6, 0, Semantics::kStrict));
}

TEST_CASE("check_implication on sound implications reports no counterexample") {
    // theorem-2 forward direction
    fc::Verdict v1 = fc::check_implication(
        xyz(), ciset({"X _||_ Y", "X _||_ Z", "Y _||_ Z", "X _||_ Y | Z"}), Goal::mutual(),
        Semantics::kStrict, 0, 4000, 6);
    CHECK_FALSE(v1.found());
    CHECK(v1.tried == 4000);
    // decomposition
    fc::Verdict v2 = fc::check_implication(xyz(), ciset({"X _||_ Y,Z"}), Goal::of(stmt("X _||_ Y")),
                                           Semantics::kStrict, 0, 4000, 6);
    CHECK_FALSE(v2.found());
}

TEST_CASE("check_implication is deterministic and validates input") {
    auto run = [] {
        return fc::check_implication(xyz(), ciset({"X _||_ Y"}), Goal::of(stmt("X _||_ Y | Z")),
                                     Semantics::kStrict, 42, 9000, 4);
    };
    fc::Verdict a = run(), b = run();
    REQUIRE(a.found());
    REQUIRE(b.found());
    CHECK(a.counterexample->cells_str() == b.counterexample->cells_str());
    CHECK(a.tried == b.tried);
    CHECK_THROWS_AS(fc::check_implication(xyz(), ciset({"X _||_ Y"}), Goal::mutual(),
                                          Semantics::kStrict, 0, 0, 8),
                    InputError);
    CHECK_THROWS_AS(fc::check_implication(fc::VarSet::of({"A", "B"}), ciset({"X _||_ Y"}),
                                          Goal::mutual(), Semantics::kStrict, 0, 10, 8),
                    InputError);
}

TEST_CASE("goal parsing") {
    CHECK(fc::parse_goal("mutual", xyz()).is_mutual());
    CHECK(fc::parse_goal(" mutual ", xyz()).is_mutual());
    CHECK_FALSE(fc::parse_goal("X _||_ Y", xyz()).is_mutual());
    CHECK(fc::format_goal(Goal::mutual(), xyz()) == "mutual");
}
