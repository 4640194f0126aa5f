#include <random>

#include "doctest.h"
#include "t3/stl/parser.hpp"
#include "t3/stl/robustness.hpp"
#include "test_util.hpp"

using namespace t3;
using namespace t3::stl;
using t3::testutil::make_test_scenario;
using t3::testutil::oracle_robustness;
using t3::testutil::random_formula;
using t3::testutil::random_trajectory;

namespace {

signal::TimedTrajectory traj_of(std::initializer_list<signal::Sample> samples) {
    signal::TimedTrajectory t;
    t.samples = samples;
    return t;
}

}  // namespace

TEST_CASE("parser maps concrete syntax to the expected AST") {
    FormulaPtr f = parse_stl("F[0,30] (in(Kitchen))");
    REQUIRE(f->kind == NodeKind::Finally);
    CHECK(f->interval == Interval{0, 30});
    CHECK(f->lhs->kind == NodeKind::Predicate);
    CHECK(f->lhs->pred_name == "Kitchen");

    FormulaPtr g = parse_stl("G[0,30] (not in(Wall))");
    REQUIRE(g->kind == NodeKind::Globally);
    REQUIRE(g->lhs->kind == NodeKind::Not);
    CHECK(g->lhs->lhs->pred_name == "Wall");

    // The Fig-5-style conditional: entering the LivingRoom obliges a
    // timely visit to the ExerciseRoom.
    FormulaPtr h = parse_stl("(in(LivingRoom) -> F[0,6] (in(ExerciseRoom)))");
    REQUIRE(h->kind == NodeKind::Implies);
    CHECK(h->lhs->pred_name == "LivingRoom");
    REQUIRE(h->rhs->kind == NodeKind::Finally);
    CHECK(h->rhs->interval == Interval{0, 6});
}

TEST_CASE("parser precedence and associativity") {
    // not > and > or > -> > <->
    FormulaPtr f = parse_stl("not in(A) and in(B) or in(Goal) -> in(Obst) <-> in(A)");
    REQUIRE(f->kind == NodeKind::Iff);
    REQUIRE(f->lhs->kind == NodeKind::Implies);
    REQUIRE(f->lhs->lhs->kind == NodeKind::Or);
    REQUIRE(f->lhs->lhs->lhs->kind == NodeKind::And);
    CHECK(f->lhs->lhs->lhs->lhs->kind == NodeKind::Not);

    FormulaPtr g = parse_stl("in(A) and in(B) and in(Goal)");
    REQUIRE(g->kind == NodeKind::And);
    CHECK(g->lhs->kind == NodeKind::And);  // left-associative
}

TEST_CASE("parser handles until, missing intervals and holds") {
    FormulaPtr f = parse_stl("(in(A) U[1,5] in(B))");
    REQUIRE(f->kind == NodeKind::Until);
    CHECK(f->interval == Interval{1, 5});

    FormulaPtr g = parse_stl("F (holds(K1))");
    CHECK(g->interval.unbounded());
    CHECK(g->interval.lo == 0.0);
    CHECK(g->lhs->pred_kind == PredicateKind::Holds);

    FormulaPtr h = parse_stl("G[2,inf] (in(A))");
    CHECK(h->interval.unbounded());
    CHECK(h->interval.lo == 2.0);
}

TEST_CASE("parser reports line/column and expected tokens") {
    try {
        parse_stl("F[0,30] (in(Kitchen) and )");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 26);
        CHECK(!e.expected.empty());
    }
    CHECK_THROWS_AS(parse_stl("F[5,2] (in(A))"), ParseError);
    CHECK_THROWS_AS(parse_stl("in(A) in(B)"), ParseError);
    CHECK_THROWS_AS(parse_stl(""), ParseError);
    // Unknown predicate names are fine at parse time; binding rejects them.
    CHECK_NOTHROW(parse_stl("in(NoSuchRoom)"));
}

TEST_CASE("print/parse round-trip on generated ASTs") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        FormulaPtr f = random_formula(rng, 4, 20.0);
        FormulaPtr back = parse_stl(print_stl(f));
        CHECK(equal(f, back));
    }
}

TEST_CASE("robustness of predicates matches signed distance") {
    world::Scenario sc = make_test_scenario();
    auto traj = traj_of({{0.5, 0.5, 0.0}, {0.5, 0.5, 1.0}});
    CHECK(robustness(parse_stl("in(A)"), traj, sc, 0.0).value == doctest::Approx(0.5));
    CHECK(robustness(parse_stl("not in(A)"), traj, sc, 0.0).value == doctest::Approx(-0.5));
}

TEST_CASE("finally over a trajectory that never reaches the goal") {
    world::Scenario sc = make_test_scenario();
    // Goal is [5,5]x[6,6]; all samples stay well away from it.
    auto traj = traj_of({{0.0, 0.0, 0.0}, {1.0, 1.0, 4.0}, {2.0, 2.0, 8.0}});
    // Frozen from the brute-force oracle: max over samples of signed
    // distance = -(min distance to Goal) = -hypot(5-2, 5-2).
    double expected = oracle_robustness(parse_stl("F[0,10] (in(Goal))"), traj, sc, 0.0);
    CHECK(expected == doctest::Approx(-std::hypot(3.0, 3.0)));
    CHECK(robustness(parse_stl("F[0,10] (in(Goal))"), traj, sc, 0.0).value ==
          doctest::Approx(expected));
}

TEST_CASE("empty clipped window is a hard error") {
    world::Scenario sc = make_test_scenario();
    auto traj = traj_of({{0.0, 0.0, 0.0}, {1.0, 0.0, 1.0}});
    CHECK_THROWS(robustness(parse_stl("F[5,10] (in(A))"), traj, sc, 0.0));
}

TEST_CASE("unbound predicates are rejected at bind time") {
    world::Scenario sc = make_test_scenario();
    CHECK_THROWS(bind_check(parse_stl("in(NoSuchRoom)"), sc));
    CHECK_THROWS(bind_check(parse_stl("holds(NoSuchKey)"), sc));
    CHECK_NOTHROW(bind_check(parse_stl("holds(K1) and holds(charged) and in(Goal)"), sc));
}

TEST_CASE("untimed erases every interval") {
    FormulaPtr f = parse_stl("F[5,10] (in(A))");
    FormulaPtr u = untimed(f);
    CHECK(u->interval.lo == 0.0);
    CHECK(u->interval.unbounded());

    FormulaPtr nested = untimed(parse_stl("F[0,9] (in(B) and F[0,6] (in(Goal)))"));
    CHECK(nested->interval.unbounded());
    CHECK(nested->lhs->rhs->interval.unbounded());

    FormulaPtr g = untimed(parse_stl("G[0,30] (not in(Obst))"));
    CHECK(g->interval.unbounded());
}

TEST_CASE("horizon sums nested upper bounds") {
    CHECK(horizon(parse_stl("F[0,30] (in(A))")) == 30.0);
    CHECK(horizon(parse_stl("F[0,9] (F[0,6] (in(A)))")) == 15.0);
    CHECK(std::isinf(horizon(parse_stl("G[0,inf] (not in(A))"))));
    CHECK(horizon(parse_stl("F[0,9] (in(A)) and G[0,30] (in(B))")) == 30.0);
}

TEST_CASE("engine matches brute-force oracle on random instances") {
    world::Scenario sc = make_test_scenario();
    std::mt19937 rng(42);
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        FormulaPtr f = random_formula(rng, 4, 10.0);
        signal::TimedTrajectory traj =
            signal::derive_channels(random_trajectory(rng), sc);
        double got = 0.0, want = 0.0;
        bool engine_threw = false, oracle_threw = false;
        try {
            got = robustness(f, traj, sc, traj.start_time()).value;
        } catch (const std::exception&) {
            engine_threw = true;
        }
        try {
            want = oracle_robustness(f, traj, sc, traj.start_time());
        } catch (const std::exception&) {
            oracle_threw = true;
        }
        REQUIRE(engine_threw == oracle_threw);
        if (!engine_threw) {
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
            ++compared;
        }
    }
    CHECK(compared > 100);  // most random instances must be evaluable
}

TEST_CASE("sign soundness and min/max monotonicity properties") {
    world::Scenario sc = make_test_scenario();
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        FormulaPtr f = random_formula(rng, 3, 8.0);
        FormulaPtr g = random_formula(rng, 3, 8.0);
        signal::TimedTrajectory traj = signal::derive_channels(random_trajectory(rng), sc);
        double t = traj.start_time();
        try {
            double rf = robustness(f, traj, sc, t).value;
            double rnf = robustness(mk_not(f), traj, sc, t).value;
            CHECK(rf == -rnf);
            double rg = robustness(g, traj, sc, t).value;
            CHECK(robustness(mk_and(f, g), traj, sc, t).value == std::min(rf, rg));
            CHECK(robustness(mk_or(f, g), traj, sc, t).value == std::max(rf, rg));
        } catch (const std::exception&) {
            continue;  // short trajectory for this formula's horizon
        }
    }
}

TEST_CASE("moving samples toward a convex region center never lowers G in(A)") {
    world::Scenario sc = make_test_scenario();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const world::Box box = sc.require("B").box;  // [2,0]x[4,2]
    for (int i = 0; i < 50; ++i) {
        signal::TimedTrajectory traj;
        double t = 0.0;
        for (int k = 0; k < 5; ++k) {
            traj.samples.push_back({2.0 + 2.0 * u(rng), 2.0 * u(rng), t});
            t += 1.0;
        }
        FormulaPtr f = parse_stl("G (in(B))");
        double before = robustness(f, traj, sc, 0.0).value;
        signal::TimedTrajectory pulled = traj;
        double pull = 0.3 * u(rng);
        for (auto& s : pulled.samples) {
            s.x += (box.cx() - s.x) * pull;
            s.y += (box.cy() - s.y) * pull;
        }
        double after = robustness(f, pulled, sc, 0.0).value;
        CHECK(after >= before - 1e-12);
    }
}

TEST_CASE("robustness_trace names the violated subformula") {
    world::Scenario sc = make_test_scenario();
    auto traj = traj_of({{3.0, 3.5, 0.0}, {3.0, 3.5, 1.0}});  // inside Obst
    auto tr = robustness_trace(*parse_stl("G[0,1] (not in(Obst))"), traj, sc, 0.0);
    CHECK(tr.value < 0.0);
    CHECK(tr.violated_path.find("Obst") != std::string::npos);
}

TEST_CASE("interval scaling multiplies bounds") {
    FormulaPtr f = parse_stl("F[2,10] (in(A) and G[0,4] (in(B)))");
    FormulaPtr s = scale_intervals(f, 0.5);
    CHECK(s->interval == Interval{1, 5});
    CHECK(s->lhs->rhs->interval == Interval{0, 2});
}
