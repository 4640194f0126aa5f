#pragma once

#include <string>

#include "t3/signal/trajectory.hpp"
#include "t3/stl/ast.hpp"
#include "t3/world/scenario.hpp"

namespace t3::backend {

// Template texts with {placeholders}; one file per stage plus the shared
// STL primer and few-shot example blocks.
struct PromptTemplates {
    std::string task;
    std::string time;
    std::string trajectory;
    std::string stl_intro;
    std::string task_examples;
    std::string time_examples;

    static PromptTemplates load(const std::string& dir);
};

// Everything that flows into one prompt. The STL intro is present only
// for the task planner and only when the ablation flag is off; feedback
// is absent on the first attempt.
struct PromptBundle {
    std::string scenario_description;
    std::string io_format;   // carried by the stage template
    std::string few_shot;
    std::string stl_intro;   // empty = omitted
    std::string feedback;    // empty = first attempt
};

std::string describe_scenario(const world::Scenario& scenario);

std::string render_task_prompt(const PromptTemplates& t, const PromptBundle& b,
                               const std::string& instruction, const stl::FormulaPtr& spec,
                               const world::Pose& initial_state, bool ablation_no_stl);

std::string render_time_prompt(const PromptTemplates& t, const PromptBundle& b,
                               const std::string& instruction,
                               const signal::SubgoalSequence& subgoals, double v_max);

std::string render_trajectory_prompt(const PromptTemplates& t, const PromptBundle& b,
                                     const std::string& kinematics, double v_max,
                                     double omega_max);

// Feedback block: previous raw output plus the verifier diagnostic.
std::string render_feedback(const std::string& previous_output, const std::string& diagnostic);

}  // namespace t3::backend
