#pragma once

#include <string>

#include "t3/signal/trajectory.hpp"
#include "t3/stl/ast.hpp"
#include "t3/world/scenario.hpp"

namespace t3::stl {

// Quantitative robustness value; pass iff value >= 0.
struct RobustnessValue {
    double value;
    bool pass() const { return value >= 0.0; }
};

// Magnitude assigned to boolean channel predicates (channels have no
// spatial margin, so holds(c) contributes +/-1).
inline constexpr double kBooleanMargin = 1.0;

// Throws if any predicate of f is unresolvable against the scenario:
// in(label) needs a region, holds(name) needs a derivable channel
// (a key-pickup label, or `charged` when chargers exist).
void bind_check(const Formula& f, const world::Scenario& scenario);
inline void bind_check(const FormulaPtr& f, const world::Scenario& scenario) { bind_check(*f, scenario); }

// Discrete-time quantitative semantics evaluated at sample timestamps.
// Temporal windows are clipped to the trajectory horizon; a window that
// clips to empty is an error. t must be a sample timestamp in [t1, tn].
RobustnessValue robustness(const Formula& f, const signal::TimedTrajectory& traj,
                           const world::Scenario& scenario, double t);
inline RobustnessValue robustness(const FormulaPtr& f, const signal::TimedTrajectory& traj,
                                  const world::Scenario& scenario, double t) {
    return robustness(*f, traj, scenario, t);
}

// Same evaluation, but also reports the path (root = empty) to the
// subformula that determined the value, for failure diagnostics.
struct RobustnessTrace {
    double value;
    std::string violated_path;  // e.g. "And.lhs/Globally/Not" for the deciding branch
};
RobustnessTrace robustness_trace(const Formula& f, const signal::TimedTrajectory& traj,
                                 const world::Scenario& scenario, double t);

}  // namespace t3::stl
