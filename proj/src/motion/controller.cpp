#include "t3/motion/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace t3::motion {

KinematicState KinematicState::from_pose(const world::Pose& p) {
    return KinematicState{p.x, p.y, wrap_angle(p.theta)};
}

double wrap_angle(double a) {
    a = std::fmod(a + M_PI, 2.0 * M_PI);
    if (a < 0) a += 2.0 * M_PI;
    a -= M_PI;
    if (a <= -M_PI) a = M_PI;  // (-pi, pi]
    return a;
}

ControllerHandle builtin_controller(double v_max, double omega_max) {
    if (!(v_max > 0.0) || !(omega_max > 0.0))
        throw std::invalid_argument("controller limits must be positive");
    ControllerHandle h;
    h.kind = ControllerHandle::Kind::Builtin;
    h.v_max = v_max;
    h.omega_max = omega_max;
    return h;
}

VelocityCommand builtin_command(const ControllerGains& g, const KinematicState& s,
                                double tx, double ty) {
    double dx = tx - s.x;
    double dy = ty - s.y;
    double dist = std::hypot(dx, dy);
    if (dist <= g.capture_radius) return {0.0, 0.0};
    double heading_error = wrap_angle(std::atan2(dy, dx) - s.theta);
    double omega = g.k_omega * heading_error;
    double v = g.k_v * dist * std::max(0.0, std::cos(heading_error));
    return {v, omega};
}

}  // namespace t3::motion
