#pragma once

#include "t3/backend/backend.hpp"

namespace t3::backend {

// Replays recorded model outputs from fixture files. Layout:
//   <root>/<task-id>/task-<attempt>.txt
//   <root>/<task-id>/time-<attempt>.txt
//   <root>/<task-id>/traj-<attempt>.txt
// Attempt indices are 1-based and advance per call; a missing file is a
// transport error. Byte-identical outputs across runs for the same key.
class ReplayBackend : public PlannerBackend {
  public:
    explicit ReplayBackend(std::string fixtures_root, Clock clock = steady_clock_seconds());

    std::string name() const override { return "replay"; }

    void begin_task(const std::string& task_id) override;

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

  private:
    std::string read_fixture(const std::string& stage, int attempt) const;

    std::string root_;
    std::string task_id_;
    int task_attempts_ = 0;
    int time_attempts_ = 0;
    int traj_attempts_ = 0;
};

// Writes program source to a runnable file under dir and wraps it in an
// external ControllerHandle. Shebang sources are saved executable;
// anything else is assumed to be python.
motion::ControllerHandle controller_from_source(const std::string& source, const std::string& dir,
                                                const std::string& stem, double v_max,
                                                double omega_max);

}  // namespace t3::backend
