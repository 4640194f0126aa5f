#pragma once

#include "t3/motion/controller.hpp"
#include "t3/signal/trajectory.hpp"
#include "t3/world/scenario.hpp"

namespace t3::motion {

inline constexpr double kDefaultDt = 0.05;  // seconds

// Forward-integrates unicycle kinematics under the controller from the
// scenario initial state until the final waypoint timestamp, fixed step dt
// (last step shortened to land exactly on the horizon). Commands are
// clamped to [0, v_max] x [-omega_max, omega_max]. The active target is
// schedule-driven: the first waypoint whose timestamp has not passed yet;
// a robot that arrives early holds position until the timestamp.
// Deterministic: identical inputs give bit-identical trajectories.
signal::TimedTrajectory simulate(const ControllerHandle& controller,
                                 const signal::TimedWaypoints& waypoints,
                                 const world::Scenario& scenario, double dt);

}  // namespace t3::motion
