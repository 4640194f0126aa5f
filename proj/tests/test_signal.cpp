#include <random>

#include "doctest.h"
#include "t3/signal/trajectory.hpp"
#include "t3/stl/parser.hpp"
#include "t3/stl/robustness.hpp"
#include "test_util.hpp"

using namespace t3;
using t3::testutil::make_test_scenario;

TEST_CASE("resample interpolates linearly and keeps endpoints") {
    signal::TimedTrajectory traj;
    traj.samples = {{0, 0, 0}, {1, 0, 1}};
    auto r = signal::resample(traj, 0.5);
    REQUIRE(r.samples.size() == 3);
    CHECK(r.samples[0].x == doctest::Approx(0.0));
    CHECK(r.samples[1].x == doctest::Approx(0.5));
    CHECK(r.samples[1].t == doctest::Approx(0.5));
    CHECK(r.samples[2].x == doctest::Approx(1.0));
    CHECK(r.samples.front().t == traj.samples.front().t);
    CHECK(r.samples.back().t == traj.samples.back().t);
}

TEST_CASE("resample at the existing spacing is the identity") {
    signal::TimedTrajectory traj;
    traj.samples = {{0, 0, 0}, {1, 2, 0.5}, {2, 4, 1.0}, {3, 6, 1.5}};
    auto r = signal::resample(traj, 0.5);
    REQUIRE(r.samples.size() == traj.samples.size());
    for (size_t i = 0; i < r.samples.size(); ++i) {
        CHECK(r.samples[i].x == doctest::Approx(traj.samples[i].x));
        CHECK(r.samples[i].y == doctest::Approx(traj.samples[i].y));
        CHECK(r.samples[i].t == doctest::Approx(traj.samples[i].t));
    }
}

TEST_CASE("resample rejects bad input and never extrapolates") {
    signal::TimedTrajectory traj;
    traj.samples = {{0, 0, 0}, {1, 0, 1}};
    CHECK_THROWS(signal::resample(traj, 0.0));
    CHECK_THROWS(signal::resample(traj, -0.1));
    signal::TimedTrajectory single;
    single.samples = {{0, 0, 0}};
    CHECK_THROWS(signal::resample(single, 0.1));

    std::mt19937 rng(3);
    auto rt = t3::testutil::random_trajectory(rng, 8);
    auto rr = signal::resample(rt, 0.03);
    for (const auto& s : rr.samples) {
        CHECK(s.t >= rt.start_time() - 1e-12);
        CHECK(s.t <= rt.end_time() + 1e-12);
    }
}

TEST_CASE("denser resampling changes robustness only within the segment bound") {
    // Lipschitz bound: along a straight segment the signed distance moves
    // at most the distance travelled, so refining sampling can shift rho
    // by at most the longest original inter-sample displacement.
    world::Scenario sc = make_test_scenario();
    std::mt19937 rng(11);
    for (int it = 0; it < 20; ++it) {
        auto traj = t3::testutil::random_trajectory(rng, 5);
        auto dense = signal::resample(traj, 0.01);
        double max_seg = 0.0;
        for (size_t i = 1; i < traj.samples.size(); ++i)
            max_seg = std::max(max_seg, std::hypot(traj.samples[i].x - traj.samples[i - 1].x,
                                                   traj.samples[i].y - traj.samples[i - 1].y));
        auto f = stl::parse_stl("G (not in(Obst)) and F (in(B))");
        double sparse_rho = stl::robustness(f, signal::derive_channels(traj, sc), sc, 0.0).value;
        double dense_rho = stl::robustness(f, signal::derive_channels(dense, sc), sc, 0.0).value;
        CHECK(std::abs(dense_rho - sparse_rho) <= max_seg + 1e-9);
    }
}

TEST_CASE("key channel is permanent once acquired") {
    world::Scenario sc = make_test_scenario();  // K1 pickup at [0,4]x[1,5]
    signal::TimedTrajectory traj;
    traj.samples = {{3, 3, 0}, {0.5, 4.5, 4}, {3, 3, 8}, {5, 5, 12}};
    auto d = signal::derive_channels(traj, sc);
    CHECK_FALSE(d.channel_at("K1", 0.0));
    CHECK(d.channel_at("K1", 4.0));
    CHECK(d.channel_at("K1", 8.0));
    CHECK(d.channel_at("K1", 12.0));

    // Never entering the pickup region: false everywhere.
    signal::TimedTrajectory away;
    away.samples = {{3, 3, 0}, {3, 3, 5}};
    auto da = signal::derive_channels(away, sc);
    CHECK_FALSE(da.channel_at("K1", 0.0));
    CHECK_FALSE(da.channel_at("K1", 5.0));

    // Monotone: no true -> false transition.
    bool seen_true = false;
    for (const auto& [t, v] : d.channels.at("K1")) {
        if (seen_true) CHECK(v);
        seen_true = seen_true || v;
    }
}

TEST_CASE("charged channel requires a 3 second dwell in one charger") {
    world::Scenario sc = make_test_scenario();  // C1 at [6,0]x[7,1]
    signal::TimedTrajectory traj;
    for (double t = 0.0; t <= 8.01; t += 0.4) {
        bool inside = t >= 2.0 && t <= 5.2;
        traj.samples.push_back({inside ? 6.5 : 3.0, 0.5, t});
    }
    auto d = signal::derive_channels(traj, sc);
    // Brute-force interval-scan oracle frozen: dwell starts at t=2.0, so the
    // first sample with t - 2.0 >= 3.0 is t = 5.2 on this 0.4 s grid.
    for (const auto& [t, v] : d.channels.at("charged")) CHECK(v == (t >= 5.0));
    CHECK_FALSE(d.channel_at("charged", 4.8));
    CHECK(d.channel_at("charged", 5.2));
}

TEST_CASE("derive_channels is idempotent") {
    world::Scenario sc = make_test_scenario();
    std::mt19937 rng(17);
    auto traj = t3::testutil::random_trajectory(rng);
    auto once = signal::derive_channels(traj, sc);
    auto twice = signal::derive_channels(once, sc);
    CHECK(once.channels == twice.channels);
}

TEST_CASE("trajectory export/import round-trip") {
    world::Scenario sc = make_test_scenario();
    signal::TimedTrajectory traj;
    traj.samples = {{0.123456789, -1.5, 0}, {0.5, 4.25, 1.25}, {6.5, 0.5, 7.5}};
    auto d = signal::derive_channels(traj, sc);
    std::string text = signal::export_trajectory(d);
    CHECK(text.rfind("t x y", 0) == 0);
    auto back = signal::import_trajectory(text);
    REQUIRE(back.samples.size() == d.samples.size());
    for (size_t i = 0; i < back.samples.size(); ++i) {
        CHECK(back.samples[i].x == doctest::Approx(d.samples[i].x).epsilon(1e-8));
        CHECK(back.samples[i].t == doctest::Approx(d.samples[i].t).epsilon(1e-8));
    }
    CHECK(back.channels == d.channels);
}

TEST_CASE("validate rejects non-monotone timestamps") {
    signal::TimedTrajectory traj;
    traj.samples = {{0, 0, 1.0}, {1, 1, 0.5}};
    CHECK_THROWS(traj.validate());
}
