#include "t3/motion/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "t3/motion/external.hpp"

namespace t3::motion {

signal::TimedTrajectory simulate(const ControllerHandle& controller,
                                 const signal::TimedWaypoints& waypoints,
                                 const world::Scenario& scenario, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("simulation dt must be positive");
    if (waypoints.empty()) throw std::invalid_argument("no waypoints to track");
    const double horizon = waypoints.back().t;
    if (!(horizon > 0.0)) throw std::invalid_argument("waypoint horizon must be positive");

    std::vector<signal::Point> targets;
    targets.reserve(waypoints.size());
    for (const auto& wp : waypoints) targets.push_back(signal::subgoal_position(wp.goal, scenario));

    std::unique_ptr<ExternalController> external;
    if (controller.kind == ControllerHandle::Kind::External) {
        external = std::make_unique<ExternalController>(controller.program_path);
        external->handshake();
    }

    KinematicState state = KinematicState::from_pose(scenario.initial_state);
    signal::TimedTrajectory traj;
    traj.samples.push_back({state.x, state.y, 0.0});

    size_t active = 0;
    double t = 0.0;
    while (t < horizon - 1e-12) {
        double step = std::min(dt, horizon - t);
        while (active + 1 < waypoints.size() && t >= waypoints[active].t - 1e-12) ++active;

        VelocityCommand cmd;
        if (external) {
            cmd = external->command(state, t, targets[active].x, targets[active].y,
                                    waypoints[active].t);
        } else {
            cmd = builtin_command(controller.gains, state, targets[active].x, targets[active].y);
        }
        if (!std::isfinite(cmd.v) || !std::isfinite(cmd.omega))
            throw std::runtime_error("controller produced non-finite command");
        double v = std::clamp(cmd.v, 0.0, controller.v_max);
        double omega = std::clamp(cmd.omega, -controller.omega_max, controller.omega_max);

        state.x += v * std::cos(state.theta) * step;
        state.y += v * std::sin(state.theta) * step;
        state.theta = wrap_angle(state.theta + omega * step);
        t += step;
        traj.samples.push_back({state.x, state.y, t});
    }
    return traj;
}

}  // namespace t3::motion
