#pragma once

#include <optional>
#include <string>
#include <vector>

#include "t3/motion/controller.hpp"
#include "t3/motion/simulate.hpp"
#include "t3/pipeline/report.hpp"
#include "t3/signal/trajectory.hpp"
#include "t3/stl/ast.hpp"

namespace t3::motion {

struct ObstacleOffset {
    std::string label;
    double dx;
    double dy;
};

// One expert-annotated verification case: timed waypoints paired with an
// STL specification over a (possibly parameter-adjusted) scenario.
struct VerificationCase {
    std::string name;
    std::string scenario_path;
    double v_max_scale = 1.0;
    std::vector<ObstacleOffset> obstacle_offsets;
    signal::TimedWaypoints waypoints;
    stl::FormulaPtr formula;
    std::string reference_path;  // certified reference trajectory file, if saved
    std::optional<signal::TimedTrajectory> reference_traj;  // in-memory after generation

    world::Scenario materialize_scenario() const;  // applies scale/offsets
};

struct CaseLibrary {
    std::vector<VerificationCase> cases;
};

CaseLibrary load_case_library(const std::string& dir);
void save_case(const VerificationCase& c, const std::string& dir);

// Parameter sweep around a certified base case: deadline scale, v_max
// scale, obstacle translations. Every candidate is re-certified by
// simulating the built-in controller; candidates whose reference run has
// rho < 0 are discarded. Throws if nothing certifies.
struct SweepSpec {
    std::vector<double> deadline_scales = {0.8, 1.0, 1.5};
    std::vector<double> v_max_scales = {0.5, 1.0};
    std::vector<ObstacleOffset> obstacle_offsets;  // applied one at a time, plus identity
    double dt = kDefaultDt;
};

CaseLibrary generate_cases(const VerificationCase& base, const SweepSpec& sweep);

// Dual-layer motional verification. Layer 1: external programs must load
// and answer the handshake (builtin passes vacuously). Layer 2: simulate
// every case and require rho >= 0; the report carries the first failure.
// Layer 2 is never entered when layer 1 fails.
std::vector<pipeline::VerificationReport> motional_verify(const ControllerHandle& controller,
                                                          const CaseLibrary& library, double dt);

// Simulates the case under the controller and returns its robustness.
double evaluate_case(const ControllerHandle& controller, const VerificationCase& c, double dt,
                     signal::TimedTrajectory* out_traj = nullptr);

}  // namespace t3::motion
