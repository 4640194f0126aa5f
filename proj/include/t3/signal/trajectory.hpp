#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "t3/world/scenario.hpp"

namespace t3::signal {

struct Sample {
    double x;
    double y;
    double t;
};

// Discrete timed position signal plus derived boolean channels.
// Channel timestamps are always a subset of sample timestamps.
struct TimedTrajectory {
    std::vector<Sample> samples;
    std::map<std::string, std::vector<std::pair<double, bool>>> channels;

    double start_time() const { return samples.front().t; }
    double end_time() const { return samples.back().t; }

    // Value of a boolean channel at sample time t (zero-order hold).
    bool channel_at(const std::string& name, double t) const;

    void validate() const;  // throws on non-monotone timestamps etc.
};

// A subgoal is a scenario region label or a free point.
struct Point {
    double x;
    double y;
};
using Subgoal = std::variant<std::string, Point>;
using SubgoalSequence = std::vector<Subgoal>;

struct TimedWaypoint {
    Subgoal goal;
    double t;
};
using TimedWaypoints = std::vector<TimedWaypoint>;

std::string subgoal_text(const Subgoal& g);
Point subgoal_position(const Subgoal& g, const world::Scenario& scenario);

// Piecewise-linear resampling at t1, t1+dt, ..., tn (endpoint always
// included); boolean channels are carried forward (zero-order hold).
TimedTrajectory resample(const TimedTrajectory& traj, double dt);

// Dwell time (seconds) a robot must spend inside one charger before the
// `charged` channel turns true.
inline constexpr double kChargeDwellSeconds = 3.0;

// Adds one channel per key-pickup region (true once any earlier-or-equal
// sample was inside the pickup region; possession is permanent) and a
// `charged` channel (true once the robot has dwelt >= 3 s in a single
// charger). Idempotent.
TimedTrajectory derive_channels(const TimedTrajectory& traj, const world::Scenario& scenario);

// Newline-delimited text: header `t x y ch1 ... chm`, 9 significant digits.
std::string export_trajectory(const TimedTrajectory& traj);
TimedTrajectory import_trajectory(const std::string& text);
void save_trajectory(const TimedTrajectory& traj, const std::string& path);
TimedTrajectory load_trajectory(const std::string& path);

}  // namespace t3::signal
