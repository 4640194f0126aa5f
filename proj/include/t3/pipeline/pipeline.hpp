#pragma once

#include <optional>
#include <string>
#include <vector>

#include "t3/backend/backend.hpp"
#include "t3/motion/cases.hpp"
#include "t3/pipeline/report.hpp"
#include "t3/signal/trajectory.hpp"
#include "t3/stl/ast.hpp"
#include "t3/world/scenario.hpp"

namespace t3::pipeline {

struct PipelineConfig {
    int n_max_outer = 3;
    int n_max_task = 5;
    int n_max_time = 5;
    int n_max_traj = 10;
    double resample_dt = 0.05;
    bool ablation_no_stl = false;

    void validate() const;  // throws on non-positive limits or dt
};

// One structured run-log record, consumed by the bench harness.
struct LogRecord {
    enum class Kind { BackendCall, Verification };
    Kind kind;
    std::string stage;  // task | time | traj | logical | temporal | ...
    int attempt;
    std::optional<double> rho;
    double seconds;  // wall-clock of the backend call (0 for verifications)
    bool ok;
};

struct PlanArtifacts {
    signal::SubgoalSequence subgoals;
    signal::TimedWaypoints waypoints;
    std::optional<motion::ControllerHandle> controller;
    std::optional<signal::TimedTrajectory> trajectory;
    std::vector<VerificationReport> reports;
    std::vector<LogRecord> log;
    bool success = false;
    std::string failure_reason;
    int task_calls = 0;
    int time_calls = 0;
    int traj_calls = 0;
    bool transport_error = false;

    int total_calls() const { return task_calls + time_calls + traj_calls; }
};

// Spatial compliance of a subgoal sequence: straight legs from the initial
// state through the subgoal centers, interpolated at resample_dt * v_max
// spacing, checked against the untimed specification.
VerificationReport logical_verify(const signal::SubgoalSequence& subgoals,
                                  const stl::FormulaPtr& spec, const world::Scenario& scenario,
                                  double resample_dt);

// Full STL check of the timed waypoints interpolated at resample_dt, plus
// per-leg kinematic reachability (leg length / dt <= v_max).
VerificationReport temporal_verify(const signal::TimedWaypoints& waypoints,
                                   const stl::FormulaPtr& spec, const world::Scenario& scenario,
                                   double resample_dt);

// The cascaded Task -> Time -> Trajectory loop with logical, temporal and
// dual-layer motional gates. Task/time exhaustion aborts; trajectory
// exhaustion restarts the whole cascade up to n_max_outer times.
PlanArtifacts run_pipeline(const std::string& instruction, const stl::FormulaPtr& spec,
                           const world::Scenario& scenario, backend::PlannerBackend& backend,
                           const motion::CaseLibrary& case_library, const PipelineConfig& config);

// Kinematic description chi handed to the trajectory planner.
std::string kinematics_description(const world::Scenario& scenario);

}  // namespace t3::pipeline
