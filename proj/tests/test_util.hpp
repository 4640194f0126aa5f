#pragma once

// Shared test helpers: an independent brute-force robustness oracle,
// random formula/trajectory generators, and a small synthetic scenario.
// The oracle deliberately shares no code with the engine.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "t3/signal/trajectory.hpp"
#include "t3/stl/ast.hpp"
#include "t3/stl/parser.hpp"
#include "t3/world/scenario.hpp"

namespace t3::testutil {

using stl::Formula;
using stl::FormulaPtr;
using stl::Interval;
using stl::NodeKind;
using stl::PredicateKind;

// ---------------------------------------------------------------------------
// Brute-force oracle. Plain recursion over explicit sample vectors.

struct OracleSignal {
    std::vector<double> xs, ys, ts;
    std::map<std::string, std::vector<bool>> channels;
};

inline OracleSignal to_oracle_signal(const signal::TimedTrajectory& traj) {
    OracleSignal s;
    for (const auto& smp : traj.samples) {
        s.xs.push_back(smp.x);
        s.ys.push_back(smp.y);
        s.ts.push_back(smp.t);
    }
    for (const auto& [name, ch] : traj.channels) {
        std::vector<bool> vals;
        for (double t : s.ts) {
            bool v = false;
            for (const auto& [ct, cv] : ch)
                if (ct <= t + 1e-9) v = cv;
            vals.push_back(v);
        }
        s.channels[name] = vals;
    }
    return s;
}

inline double oracle_box_distance(const world::Box& b, double x, double y) {
    if (x >= b.x0 && x <= b.x1 && y >= b.y0 && y <= b.y1) {
        double inside = x - b.x0;
        inside = std::min(inside, b.x1 - x);
        inside = std::min(inside, y - b.y0);
        inside = std::min(inside, b.y1 - y);
        return inside;
    }
    double cx = std::clamp(x, b.x0, b.x1);
    double cy = std::clamp(y, b.y0, b.y1);
    return -std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy));
}

inline double oracle_eval(const Formula& f, const OracleSignal& s, const world::Scenario& sc, size_t i) {
    auto in_window = [&](size_t j, double lo, double hi) {
        double clipped_hi = std::min(hi, s.ts.back());
        return s.ts[j] >= lo - 1e-9 && s.ts[j] <= clipped_hi + 1e-9;
    };
    switch (f.kind) {
        case NodeKind::Predicate:
            if (f.pred_kind == PredicateKind::In)
                return oracle_box_distance(sc.require(f.pred_name).box, s.xs[i], s.ys[i]);
            return s.channels.at(f.pred_name)[i] ? 1.0 : -1.0;
        case NodeKind::Not:
            return -oracle_eval(*f.lhs, s, sc, i);
        case NodeKind::And:
            return std::min(oracle_eval(*f.lhs, s, sc, i), oracle_eval(*f.rhs, s, sc, i));
        case NodeKind::Or:
            return std::max(oracle_eval(*f.lhs, s, sc, i), oracle_eval(*f.rhs, s, sc, i));
        case NodeKind::Implies:
            return std::max(-oracle_eval(*f.lhs, s, sc, i), oracle_eval(*f.rhs, s, sc, i));
        case NodeKind::Iff: {
            double fwd = std::max(-oracle_eval(*f.lhs, s, sc, i), oracle_eval(*f.rhs, s, sc, i));
            double bwd = std::max(-oracle_eval(*f.rhs, s, sc, i), oracle_eval(*f.lhs, s, sc, i));
            return std::min(fwd, bwd);
        }
        case NodeKind::Finally:
        case NodeKind::Globally: {
            std::optional<double> acc;
            for (size_t j = i; j < s.ts.size(); ++j) {
                if (!in_window(j, s.ts[i] + f.interval.lo, s.ts[i] + f.interval.hi)) continue;
                double v = oracle_eval(*f.lhs, s, sc, j);
                if (!acc)
                    acc = v;
                else
                    acc = f.kind == NodeKind::Finally ? std::max(*acc, v) : std::min(*acc, v);
            }
            if (!acc) throw std::runtime_error("oracle: empty window");
            return *acc;
        }
        case NodeKind::Until: {
            std::optional<double> acc;
            for (size_t j = i; j < s.ts.size(); ++j) {
                if (!in_window(j, s.ts[i] + f.interval.lo, s.ts[i] + f.interval.hi)) continue;
                double m = oracle_eval(*f.rhs, s, sc, j);
                for (size_t k = i; k <= j; ++k) m = std::min(m, oracle_eval(*f.lhs, s, sc, k));
                acc = acc ? std::max(*acc, m) : m;
            }
            if (!acc) throw std::runtime_error("oracle: empty window");
            return *acc;
        }
    }
    throw std::logic_error("oracle: unreachable");
}

inline double oracle_robustness(const FormulaPtr& f, const signal::TimedTrajectory& traj,
                                const world::Scenario& sc, double t) {
    OracleSignal s = to_oracle_signal(traj);
    for (size_t i = 0; i < s.ts.size(); ++i)
        if (std::abs(s.ts[i] - t) <= 1e-9) return oracle_eval(*f, s, sc, i);
    throw std::runtime_error("oracle: t is not a sample timestamp");
}

// ---------------------------------------------------------------------------
// Synthetic scenario with every region kind.

inline world::Scenario make_test_scenario() {
    world::Scenario s;
    s.name = "testworld";
    s.regions = {
        {"A", world::RegionKind::Room, {0.0, 0.0, 1.0, 1.0}},
        {"B", world::RegionKind::Room, {2.0, 0.0, 4.0, 2.0}},
        {"Goal", world::RegionKind::Goal, {5.0, 5.0, 6.0, 6.0}},
        {"Obst", world::RegionKind::Obstacle, {2.5, 3.0, 3.5, 4.5}},
        {"K1", world::RegionKind::KeyPickup, {0.0, 4.0, 1.0, 5.0}},
        {"D1", world::RegionKind::Door, {4.5, 2.0, 5.0, 2.5}},
        {"C1", world::RegionKind::Charger, {6.0, 0.0, 7.0, 1.0}},
    };
    s.initial_state = {0.5, 0.5, 0.0};
    s.v_max = 1.0;
    s.omega_max = 2.0;
    s.key_bindings = {{"D1", "K1"}};
    return s;
}

// ---------------------------------------------------------------------------
// Random generators.

inline signal::TimedTrajectory random_trajectory(std::mt19937& rng, size_t max_samples = 10) {
    std::uniform_int_distribution<size_t> n_dist(2, max_samples);
    std::uniform_real_distribution<double> xy(-1.0, 8.0);
    std::uniform_real_distribution<double> dt(0.2, 2.0);
    signal::TimedTrajectory traj;
    double t = 0.0;
    size_t n = n_dist(rng);
    for (size_t i = 0; i < n; ++i) {
        traj.samples.push_back({xy(rng), xy(rng), t});
        t += dt(rng);
    }
    return traj;
}

inline FormulaPtr random_formula(std::mt19937& rng, int depth, double max_horizon) {
    using namespace stl;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    static const std::vector<std::string> preds = {"A", "B", "Goal", "Obst", "C1"};
    static const std::vector<std::string> chans = {"K1", "charged"};
    auto interval = [&]() {
        double lo = u(rng) * max_horizon * 0.5;
        double hi = lo + u(rng) * max_horizon * 0.5;
        if (u(rng) < 0.15) hi = std::numeric_limits<double>::infinity();
        return Interval{lo, hi};
    };
    if (depth <= 0 || u(rng) < 0.25) {
        if (u(rng) < 0.2) return pred_holds(chans[static_cast<size_t>(u(rng) * chans.size())]);
        return pred_in(preds[static_cast<size_t>(u(rng) * preds.size())]);
    }
    double pick = u(rng);
    if (pick < 0.12) return mk_not(random_formula(rng, depth - 1, max_horizon));
    if (pick < 0.28)
        return mk_and(random_formula(rng, depth - 1, max_horizon), random_formula(rng, depth - 1, max_horizon));
    if (pick < 0.44)
        return mk_or(random_formula(rng, depth - 1, max_horizon), random_formula(rng, depth - 1, max_horizon));
    if (pick < 0.54)
        return mk_implies(random_formula(rng, depth - 1, max_horizon), random_formula(rng, depth - 1, max_horizon));
    if (pick < 0.62)
        return mk_iff(random_formula(rng, depth - 1, max_horizon), random_formula(rng, depth - 1, max_horizon));
    if (pick < 0.78) return mk_finally(interval(), random_formula(rng, depth - 1, max_horizon));
    if (pick < 0.94) return mk_globally(interval(), random_formula(rng, depth - 1, max_horizon));
    return mk_until(interval(), random_formula(rng, depth - 1, max_horizon),
                    random_formula(rng, depth - 1, max_horizon));
}

}  // namespace t3::testutil
