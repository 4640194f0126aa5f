#include "t3/backend/prompts.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "t3/backend/backend.hpp"
#include "t3/backend/parse_output.hpp"
#include "t3/stl/ast.hpp"

namespace t3::backend {

Clock steady_clock_seconds() {
    return [] {
        using namespace std::chrono;
        return duration<double>(steady_clock::now().time_since_epoch()).count();
    };
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prompt template: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    const std::string needle = "{" + key + "}";
    for (size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos))
        text.replace(pos, needle.size(), value);
    return text;
}

// Under the no-STL ablation the few-shot examples must not leak formulas
// either, so their "Specification:" lines are dropped.
std::string strip_specification_lines(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("Specification:", 0) != 0) out << line << "\n";
    return out.str();
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

}  // namespace

PromptTemplates PromptTemplates::load(const std::string& dir) {
    PromptTemplates t;
    t.task = slurp(dir + "/task_planner.txt");
    t.time = slurp(dir + "/time_planner.txt");
    t.trajectory = slurp(dir + "/trajectory_planner.txt");
    t.stl_intro = slurp(dir + "/stl_intro.txt");
    t.task_examples = slurp(dir + "/task_examples.txt");
    t.time_examples = slurp(dir + "/time_examples.txt");
    return t;
}

std::string describe_scenario(const world::Scenario& scenario) {
    std::ostringstream os;
    os.precision(9);
    os << "Scenario '" << scenario.name << "'. Regions (axis-aligned boxes, meters):\n";
    for (const auto& r : scenario.regions)
        os << "  " << r.label << " (" << world::to_string(r.kind) << "): [" << r.box.x0 << ", "
           << r.box.y0 << "] to [" << r.box.x1 << ", " << r.box.y1 << "]\n";
    for (const auto& [door, key] : scenario.key_bindings)
        os << "  door " << door << " requires key " << key << "\n";
    os << "Speed limits: v_max = " << scenario.v_max << " m/s, omega_max = " << scenario.omega_max
       << " rad/s.";
    return os.str();
}

std::string render_feedback(const std::string& previous_output, const std::string& diagnostic) {
    if (previous_output.empty() && diagnostic.empty()) return "";
    std::ostringstream os;
    os << "## Previous failed attempt\n"
       << "Your last output was rejected. Reflect on the cause and produce a corrected plan.\n"
       << "Previous output:\n"
       << previous_output << "\nVerifier diagnostic: " << diagnostic << "\n";
    return os.str();
}

std::string render_task_prompt(const PromptTemplates& t, const PromptBundle& b,
                               const std::string& instruction, const stl::FormulaPtr& spec,
                               const world::Pose& initial_state, bool ablation_no_stl) {
    std::string out = t.task;
    out = substitute(out, "scenario_description", b.scenario_description);
    std::ostringstream init;
    init.precision(9);
    init << "(" << initial_state.x << ", " << initial_state.y << "), heading "
         << initial_state.theta << " rad";
    out = substitute(out, "initial_state", init.str());
    out = substitute(out, "stl_intro", ablation_no_stl ? "" : b.stl_intro);
    out = substitute(out, "instruction", instruction);
    std::string spec_block;
    if (!ablation_no_stl)
        spec_block = "\n## STL specification\n" + stl::print_stl(spec) + "\n";
    out = substitute(out, "stl_spec", spec_block);
    out = substitute(out, "few_shot",
                     ablation_no_stl ? strip_specification_lines(b.few_shot) : b.few_shot);
    out = substitute(out, "feedback", b.feedback);
    return out;
}

std::string render_time_prompt(const PromptTemplates& t, const PromptBundle& b,
                               const std::string& instruction,
                               const signal::SubgoalSequence& subgoals, double v_max) {
    std::string out = t.time;
    out = substitute(out, "scenario_description", b.scenario_description);
    out = substitute(out, "instruction", instruction);
    out = substitute(out, "subgoals", format_subgoals(subgoals));
    out = substitute(out, "v_max", num(v_max));
    out = substitute(out, "few_shot", b.few_shot);
    out = substitute(out, "feedback", b.feedback);
    return out;
}

std::string render_trajectory_prompt(const PromptTemplates& t, const PromptBundle& b,
                                     const std::string& kinematics, double v_max,
                                     double omega_max) {
    std::string out = t.trajectory;
    out = substitute(out, "kinematics", kinematics);
    out = substitute(out, "v_max", num(v_max));
    out = substitute(out, "omega_max", num(omega_max));
    out = substitute(out, "feedback", b.feedback);
    return out;
}

}  // namespace t3::backend
