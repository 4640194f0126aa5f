#pragma once

#include "t3/backend/backend.hpp"
#include "t3/backend/prompts.hpp"

namespace t3::backend {

// Chat-completions-style HTTP endpoint configuration. Defaults come from
/// the environment: T3_API_BASE, T3_API_KEY, T3_MODEL.
struct LlmOptions {
    std::string api_base;
    std::string api_key;
    std::string model;
    double temperature = 0.2;
    int transport_retries = 3;
    bool ablation_no_stl = false;

    static LlmOptions from_environment();
};

// Live planner speaking the OpenAI-compatible wire protocol. Prompts are
// assembled from the template files; retries cover transport failures
// only, bad outputs surface as failed attempts.
class LlmBackend : public PlannerBackend {
  public:
    LlmBackend(LlmOptions options, world::Scenario scenario, PromptTemplates templates,
               Clock clock = steady_clock_seconds());

    std::string name() const override { return "llm:" + options_.model; }

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

    // Exposed for tests: the exact prompt the next task_plan call would send.
    std::string build_task_prompt(const std::string& instruction, const stl::FormulaPtr& spec,
                                  const world::Pose& initial_state,
                                  const std::string& feedback) const;

  private:
    std::string complete(const std::string& prompt);
    PromptBundle bundle(const std::string& few_shot, const std::string& feedback) const;

    LlmOptions options_;
    world::Scenario scenario_;
    PromptTemplates templates_;
};

// Strips a ``` fence (with optional language tag) if the reply is fenced.
std::string strip_code_fence(const std::string& reply);

}  // namespace t3::backend
