#pragma once

#include "t3/backend/backend.hpp"

namespace t3::backend {

// Deterministic scripted planner: exact routes for the three shipped
// scenarios, a nearest-unvisited-goal heuristic elsewhere, and time
// allocation proportional to leg length. Ignores prompts entirely, so the
// whole pipeline is testable without network access.
class OracleBackend : public PlannerBackend {
  public:
    explicit OracleBackend(world::Scenario scenario, Clock clock = steady_clock_seconds());

    std::string name() const override { return "oracle"; }

    PlanResult<signal::SubgoalSequence> task_plan(const std::string& instruction,
                                                  const stl::FormulaPtr& spec,
                                                  const world::Pose& initial_state,
                                                  const std::string& feedback) override;

    PlanResult<signal::TimedWaypoints> time_plan(const std::string& instruction,
                                                 const signal::SubgoalSequence& subgoals,
                                                 const std::string& feedback) override;

    PlanResult<motion::ControllerHandle> trajectory_plan(const std::string& kinematics,
                                                         double v_max, double omega_max,
                                                         const std::string& feedback) override;

    // Fraction of the instruction deadline the schedule may use; the rest
    // is slack for turning and tracking lag.
    static constexpr double kScheduleFraction = 0.9;
    static constexpr double kChargeDwellPlanned = 3.5;  // seconds, > required 3.0

  private:
    world::Scenario scenario_;
};

// Deadline in seconds mentioned in the instruction text ("within 30
// seconds", "in less than 30 seconds"); falls back to `fallback`.
double deadline_from_instruction(const std::string& instruction, double fallback = 30.0);

}  // namespace t3::backend
