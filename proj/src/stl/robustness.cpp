#include "t3/stl/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace t3::stl {

namespace {

constexpr double kTimeEps = 1e-9;

bool channel_derivable(const std::string& name, const world::Scenario& scenario) {
    if (name == "charged") return scenario.has_kind(world::RegionKind::Charger);
    const world::Region* r = scenario.find(name);
    return r && r->kind == world::RegionKind::KeyPickup;
}

struct Eval {
    const signal::TimedTrajectory& traj;
    const world::Scenario& scenario;

    size_t index_of(double t) const {
        const auto& s = traj.samples;
        auto it = std::lower_bound(s.begin(), s.end(), t - kTimeEps,
                                   [](const signal::Sample& a, double v) { return a.t < v; });
        if (it == s.end() || std::abs(it->t - t) > kTimeEps)
            throw std::invalid_argument("evaluation time is not a sample timestamp");
        return static_cast<size_t>(it - s.begin());
    }

    // Sample indices whose timestamps fall in [t_idx + lo, t_idx + hi],
    // clipped to the trajectory horizon. Empty after clipping -> error.
    std::pair<size_t, size_t> window(size_t idx, const Interval& iv) const {
        const auto& s = traj.samples;
        const double t = s[idx].t;
        const double lo = t + iv.lo;
        const double hi = std::isfinite(iv.hi) ? std::min(t + iv.hi, s.back().t) : s.back().t;
        size_t first = idx;
        while (first < s.size() && s[first].t < lo - kTimeEps) ++first;
        size_t last = first;
        while (last + 1 < s.size() && s[last + 1].t <= hi + kTimeEps) ++last;
        if (first >= s.size() || s[first].t > hi + kTimeEps) {
            std::ostringstream os;
            os << "empty temporal window [" << lo << ", " << hi
               << "]: trajectory shorter than the formula horizon";
            throw std::runtime_error(os.str());
        }
        return {first, last};
    }

    double predicate(const Formula& f, size_t idx) const {
        const signal::Sample& s = traj.samples[idx];
        if (f.pred_kind == PredicateKind::In)
            return world::signed_distance(scenario, f.pred_name, s.x, s.y);
        auto it = traj.channels.find(f.pred_name);
        if (it == traj.channels.end())
            throw std::invalid_argument("unbound channel predicate: holds(" + f.pred_name + ")");
        return traj.channel_at(f.pred_name, s.t) ? kBooleanMargin : -kBooleanMargin;
    }

    double eval(const Formula& f, size_t idx) const {
        switch (f.kind) {
            case NodeKind::Predicate:
                return predicate(f, idx);
            case NodeKind::Not:
                return -eval(*f.lhs, idx);
            case NodeKind::And:
                return std::min(eval(*f.lhs, idx), eval(*f.rhs, idx));
            case NodeKind::Or:
                return std::max(eval(*f.lhs, idx), eval(*f.rhs, idx));
            case NodeKind::Implies:
                return std::max(-eval(*f.lhs, idx), eval(*f.rhs, idx));
            case NodeKind::Iff:
                return std::min(std::max(-eval(*f.lhs, idx), eval(*f.rhs, idx)),
                                std::max(-eval(*f.rhs, idx), eval(*f.lhs, idx)));
            case NodeKind::Finally: {
                auto [a, b] = window(idx, f.interval);
                double best = -std::numeric_limits<double>::infinity();
                for (size_t j = a; j <= b; ++j) best = std::max(best, eval(*f.lhs, j));
                return best;
            }
            case NodeKind::Globally: {
                auto [a, b] = window(idx, f.interval);
                double worst = std::numeric_limits<double>::infinity();
                for (size_t j = a; j <= b; ++j) worst = std::min(worst, eval(*f.lhs, j));
                return worst;
            }
            case NodeKind::Until: {
                auto [a, b] = window(idx, f.interval);
                double best = -std::numeric_limits<double>::infinity();
                double lhs_prefix = std::numeric_limits<double>::infinity();
                size_t k = idx;
                for (size_t j = a; j <= b; ++j) {
                    for (; k <= j; ++k) lhs_prefix = std::min(lhs_prefix, eval(*f.lhs, k));
                    best = std::max(best, std::min(eval(*f.rhs, j), lhs_prefix));
                }
                return best;
            }
        }
        throw std::logic_error("unreachable");
    }
};

std::string node_name(const Formula& f) {
    switch (f.kind) {
        case NodeKind::Predicate:
            return (f.pred_kind == PredicateKind::In ? "in(" : "holds(") + f.pred_name + ")";
        case NodeKind::Not: return "Not";
        case NodeKind::And: return "And";
        case NodeKind::Or: return "Or";
        case NodeKind::Implies: return "Implies";
        case NodeKind::Iff: return "Iff";
        case NodeKind::Finally: return "F";
        case NodeKind::Globally: return "G";
        case NodeKind::Until: return "U";
    }
    return "?";
}

// Path to the subformula/sample that decided the value at this node.
struct Traced {
    double value;
    std::string path;
};

Traced trace(const Eval& ev, const Formula& f, size_t idx);

Traced trace_pick(const Eval& ev, const Formula& f, size_t idx, bool pick_max) {
    Traced l = trace(ev, *f.lhs, idx);
    Traced r = trace(ev, *f.rhs, idx);
    bool left = pick_max ? (l.value >= r.value) : (l.value <= r.value);
    const Traced& d = left ? l : r;
    return {d.value, node_name(f) + (left ? ".lhs/" : ".rhs/") + d.path};
}

Traced trace(const Eval& ev, const Formula& f, size_t idx) {
    switch (f.kind) {
        case NodeKind::Predicate:
            return {ev.predicate(f, idx), node_name(f)};
        case NodeKind::Not: {
            Traced inner = trace(ev, *f.lhs, idx);
            return {-inner.value, "Not/" + inner.path};
        }
        case NodeKind::And:
            return trace_pick(ev, f, idx, /*pick_max=*/false);
        case NodeKind::Or:
            return trace_pick(ev, f, idx, /*pick_max=*/true);
        case NodeKind::Implies: {
            Traced l = trace(ev, *f.lhs, idx);
            Traced r = trace(ev, *f.rhs, idx);
            if (-l.value >= r.value) return {-l.value, "Implies.lhs/" + l.path};
            return {r.value, "Implies.rhs/" + r.path};
        }
        case NodeKind::Iff: {
            double v = ev.eval(f, idx);
            return {v, "Iff"};
        }
        case NodeKind::Finally:
        case NodeKind::Globally: {
            auto [a, b] = ev.window(idx, f.interval);
            bool maximize = f.kind == NodeKind::Finally;
            Traced best{maximize ? -std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::infinity(),
                        ""};
            size_t best_j = a;
            for (size_t j = a; j <= b; ++j) {
                Traced cur = trace(ev, *f.lhs, j);
                if (maximize ? cur.value > best.value : cur.value < best.value) {
                    best = cur;
                    best_j = j;
                }
            }
            std::ostringstream os;
            os << node_name(f) << "@t=" << ev.traj.samples[best_j].t << "/" << best.path;
            return {best.value, os.str()};
        }
        case NodeKind::Until: {
            double v = ev.eval(f, idx);
            return {v, "U"};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

void bind_check(const Formula& f, const world::Scenario& scenario) {
    switch (f.kind) {
        case NodeKind::Predicate:
            if (f.pred_kind == PredicateKind::In) {
                if (!scenario.find(f.pred_name))
                    throw std::invalid_argument("unbound predicate in(" + f.pred_name +
                                                ") against scenario '" + scenario.name + "'");
            } else if (!channel_derivable(f.pred_name, scenario)) {
                throw std::invalid_argument("unbound predicate holds(" + f.pred_name +
                                            ") against scenario '" + scenario.name + "'");
            }
            return;
        case NodeKind::Not:
        case NodeKind::Finally:
        case NodeKind::Globally:
            bind_check(*f.lhs, scenario);
            return;
        case NodeKind::And:
        case NodeKind::Or:
        case NodeKind::Implies:
        case NodeKind::Iff:
        case NodeKind::Until:
            bind_check(*f.lhs, scenario);
            bind_check(*f.rhs, scenario);
            return;
    }
}

RobustnessValue robustness(const Formula& f, const signal::TimedTrajectory& traj,
                           const world::Scenario& scenario, double t) {
    traj.validate();
    Eval ev{traj, scenario};
    return RobustnessValue{ev.eval(f, ev.index_of(t))};
}

RobustnessTrace robustness_trace(const Formula& f, const signal::TimedTrajectory& traj,
                                 const world::Scenario& scenario, double t) {
    traj.validate();
    Eval ev{traj, scenario};
    Traced tr = trace(ev, f, ev.index_of(t));
    return RobustnessTrace{tr.value, tr.path};
}

}  // namespace t3::stl
