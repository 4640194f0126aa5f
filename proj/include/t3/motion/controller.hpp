#pragma once

#include <string>

#include "t3/signal/trajectory.hpp"
#include "t3/world/scenario.hpp"

namespace t3::motion {

struct KinematicState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // normalized to (-pi, pi]

    static KinematicState from_pose(const world::Pose& p);
};

double wrap_angle(double a);  // into (-pi, pi]

struct VelocityCommand {
    double v;
    double omega;
};

struct ControllerGains {
    double k_v = 2.0;
    double k_omega = 4.0;
    double capture_radius = 0.1;  // meters
};

// Handle to a motion controller: either the built-in tracking law or an
// external program speaking the line protocol (see external.hpp).
struct ControllerHandle {
    enum class Kind { Builtin, External };
    Kind kind = Kind::Builtin;
    ControllerGains gains;
    std::string program_path;  // External only
    double v_max = 1.0;
    double omega_max = 1.0;
};

ControllerHandle builtin_controller(double v_max, double omega_max);

// One step of the built-in law: turn toward the target, drive forward only
// when roughly facing it, stop inside the capture radius. Commands are
// clamped to [0, v_max] x [-omega_max, omega_max] by the simulator.
VelocityCommand builtin_command(const ControllerGains& gains, const KinematicState& state,
                                double target_x, double target_y);

}  // namespace t3::motion
