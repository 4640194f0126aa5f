#include "t3/backend/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "t3/backend/parse_output.hpp"

namespace t3::backend {

namespace {

// Region labels of positive eventually-goals, in formula order.
void collect_visit_goals(const stl::Formula& f, bool negated, bool under_finally,
                         std::vector<std::string>& out) {
    using stl::NodeKind;
    switch (f.kind) {
        case NodeKind::Predicate:
            if (!negated && under_finally && f.pred_kind == stl::PredicateKind::In)
                out.push_back(f.pred_name);
            return;
        case NodeKind::Not:
            collect_visit_goals(*f.lhs, !negated, under_finally, out);
            return;
        case NodeKind::And:
        case NodeKind::Or:
            collect_visit_goals(*f.lhs, negated, under_finally, out);
            collect_visit_goals(*f.rhs, negated, under_finally, out);
            return;
        case NodeKind::Implies:
        case NodeKind::Iff:
            return;  // conditional obligations are not unconditional goals
        case NodeKind::Finally:
            collect_visit_goals(*f.lhs, negated, true, out);
            return;
        case NodeKind::Globally:
            collect_visit_goals(*f.lhs, negated, under_finally, out);
            return;
        case NodeKind::Until:
            collect_visit_goals(*f.rhs, negated, true, out);
            return;
    }
}

bool mentions_charged(const stl::Formula& f) {
    using stl::NodeKind;
    if (f.kind == NodeKind::Predicate)
        return f.pred_kind == stl::PredicateKind::Holds && f.pred_name == "charged";
    if (f.lhs && mentions_charged(*f.lhs)) return true;
    return f.rhs && mentions_charged(*f.rhs);
}

}  // namespace

double deadline_from_instruction(const std::string& instruction, double fallback) {
    static const std::regex pattern(R"((\d+(?:\.\d+)?)\s*seconds)");
    double deadline = fallback;
    for (auto it = std::sregex_iterator(instruction.begin(), instruction.end(), pattern);
         it != std::sregex_iterator(); ++it)
        deadline = std::stod((*it)[1].str());
    return deadline;
}

OracleBackend::OracleBackend(world::Scenario scenario, Clock clock)
    : PlannerBackend(std::move(clock)), scenario_(std::move(scenario)) {}

PlanResult<signal::SubgoalSequence> OracleBackend::task_plan(const std::string& /*instruction*/,
                                                             const stl::FormulaPtr& spec,
                                                             const world::Pose& initial_state,
                                                             const std::string& /*feedback*/) {
    return timed([&] {
        signal::SubgoalSequence seq;
        if (scenario_.name == "household") {
            seq = {std::string("Study"), std::string("RestRoom"), std::string("MasterBedroom"),
                   std::string("ExerciseRoom"), std::string("Kitchen")};
        } else if (scenario_.name == "chip") {
            seq = {std::string("Goal2"), std::string("K1"), std::string("D1"),
                   std::string("Goal1")};
        } else if (scenario_.name == "navigation") {
            std::string charger =
                world::nearest_charger(scenario_, initial_state.x, initial_state.y);
            seq = {charger, charger, std::string("Goal1"), std::string("C2"),
                   std::string("Goal2")};
        } else {
            // Nearest-unvisited-goal heuristic.
            std::vector<std::string> goals;
            collect_visit_goals(*spec, false, false, goals);
            std::set<std::string> pending(goals.begin(), goals.end());
            if (mentions_charged(*spec) && scenario_.has_kind(world::RegionKind::Charger)) {
                std::string charger =
                    world::nearest_charger(scenario_, initial_state.x, initial_state.y);
                seq.push_back(charger);
                seq.push_back(charger);
            }
            double cx = initial_state.x, cy = initial_state.y;
            while (!pending.empty()) {
                std::string best;
                double best_d = std::numeric_limits<double>::infinity();
                for (const std::string& g : pending) {
                    const world::Region& r = scenario_.require(g);
                    double d = std::hypot(r.box.cx() - cx, r.box.cy() - cy);
                    if (d < best_d) {
                        best_d = d;
                        best = g;
                    }
                }
                const world::Region& r = scenario_.require(best);
                cx = r.box.cx();
                cy = r.box.cy();
                seq.push_back(best);
                pending.erase(best);
            }
        }
        return parse_subgoals(format_subgoals(seq));
    });
}

PlanResult<signal::TimedWaypoints> OracleBackend::time_plan(const std::string& instruction,
                                                            const signal::SubgoalSequence& subgoals,
                                                            const std::string& /*feedback*/) {
    if (subgoals.empty()) throw std::invalid_argument("time_plan: empty subgoal sequence");
    return timed([&] {
        const double deadline = deadline_from_instruction(instruction);
        double px = scenario_.initial_state.x;
        double py = scenario_.initial_state.y;
        std::vector<double> leg_dist;
        double total_dist = 0.0;
        double total_dwell = 0.0;
        for (const auto& g : subgoals) {
            signal::Point p = signal::subgoal_position(g, scenario_);
            double d = std::hypot(p.x - px, p.y - py);
            leg_dist.push_back(d);
            if (d < 1e-9)
                total_dwell += kChargeDwellPlanned;
            else
                total_dist += d;
            px = p.x;
            py = p.y;
        }
        double moving_time = kScheduleFraction * deadline - total_dwell;
        if (!(moving_time > 0.0))
            throw std::invalid_argument("time_plan: deadline too short for required dwells");
        double speed = total_dist > 0.0 ? total_dist / moving_time : 0.0;

        signal::TimedWaypoints wps;
        double t = 0.0;
        for (size_t i = 0; i < subgoals.size(); ++i) {
            t += leg_dist[i] < 1e-9 ? kChargeDwellPlanned : leg_dist[i] / speed;
            wps.push_back({subgoals[i], t});
        }
        return parse_waypoints(format_waypoints(wps));
    });
}

PlanResult<motion::ControllerHandle> OracleBackend::trajectory_plan(
    const std::string& /*kinematics*/, double v_max, double omega_max,
    const std::string& /*feedback*/) {
    if (!(v_max > 0.0) || !(omega_max > 0.0))
        throw std::invalid_argument("trajectory_plan: kinematic limits must be positive");
    return timed([&] {
        motion::ControllerHandle handle = motion::builtin_controller(v_max, omega_max);
        PlanResult<motion::ControllerHandle> r;
        r.raw = "BUILTIN k_v=2 k_omega=4 r=0.1";
        r.value = handle;
        return r;
    });
}

}  // namespace t3::backend
