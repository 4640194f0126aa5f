#pragma once

#include <functional>
#include <optional>
#include <string>

#include "t3/motion/controller.hpp"
#include "t3/signal/trajectory.hpp"
#include "t3/stl/ast.hpp"
#include "t3/world/scenario.hpp"

namespace t3::backend {

// Retryable wire/filesystem failure, as opposed to a bad planning output.
struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw planner output plus the parse of it. A missing value means the
// output did not conform to the stage grammar; the attempt is consumed
// and the raw text is fed back to the planner.
template <typename T>
struct PlanResult {
    std::string raw;
    std::optional<T> value;
    std::string error;

    bool ok() const { return value.has_value(); }
};

using Clock = std::function<double()>;  // seconds; injectable for tests
Clock steady_clock_seconds();

struct Telemetry {
    int calls = 0;
    double total_seconds = 0.0;

    double average_seconds() const { return calls == 0 ? 0.0 : total_seconds / calls; }
};

// Behavioral contract shared by the oracle, replay, and live-LLM planners.
// A backend serves one pipeline run at a time; instances are transferable
// between threads but not concurrently callable.
class PlannerBackend {
  public:
    virtual ~PlannerBackend() = default;

    virtual std::string name() const = 0;

    // Called by harnesses before each task; replay uses it to select fixtures.
    virtual void begin_task(const std::string& /*task_id*/) {}

    virtual PlanResult<signal::SubgoalSequence> task_plan(const std::string& instruction,
                                                          const stl::FormulaPtr& spec,
                                                          const world::Pose& initial_state,
                                                          const std::string& feedback) = 0;

    virtual PlanResult<signal::TimedWaypoints> time_plan(const std::string& instruction,
                                                         const signal::SubgoalSequence& subgoals,
                                                         const std::string& feedback) = 0;

    virtual PlanResult<motion::ControllerHandle> trajectory_plan(const std::string& kinematics,
                                                                 double v_max, double omega_max,
                                                                 const std::string& feedback) = 0;

    const Telemetry& telemetry() const { return telemetry_; }

  protected:
    explicit PlannerBackend(Clock clock) : clock_(std::move(clock)) {}
    PlannerBackend() : clock_(steady_clock_seconds()) {}

    // Wraps one planner call for telemetry.
    template <typename F>
    auto timed(F&& fn) {
        double start = clock_();
        auto result = fn();
        telemetry_.total_seconds += clock_() - start;
        telemetry_.calls += 1;
        return result;
    }

  private:
    Clock clock_;
    Telemetry telemetry_;
};

}  // namespace t3::backend
