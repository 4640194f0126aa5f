#include "t3/backend/llm.hpp"

#include <cstdlib>
#include <filesystem>

#include "httplib.h"
#include "json.hpp"
#include "t3/backend/parse_output.hpp"
#include "t3/backend/replay.hpp"

namespace t3::backend {

using nlohmann::json;

LlmOptions LlmOptions::from_environment() {
    LlmOptions o;
    if (const char* base = std::getenv("T3_API_BASE")) o.api_base = base;
    if (const char* key = std::getenv("T3_API_KEY")) o.api_key = key;
    if (const char* model = std::getenv("T3_MODEL")) o.model = model;
    return o;
}

LlmBackend::LlmBackend(LlmOptions options, world::Scenario scenario, PromptTemplates templates,
                       Clock clock)
    : PlannerBackend(std::move(clock)),
      options_(std::move(options)),
      scenario_(std::move(scenario)),
      templates_(std::move(templates)) {
    if (options_.api_base.empty())
        throw std::invalid_argument("LLM backend needs an API base (T3_API_BASE)");
    if (options_.model.empty())
        throw std::invalid_argument("LLM backend needs a model name (T3_MODEL)");
}

PromptBundle LlmBackend::bundle(const std::string& few_shot, const std::string& feedback) const {
    PromptBundle b;
    b.scenario_description = describe_scenario(scenario_);
    b.few_shot = few_shot;
    b.stl_intro = templates_.stl_intro;
    b.feedback = feedback;
    return b;
}

std::string LlmBackend::complete(const std::string& prompt) {
    json body;
    body["model"] = options_.model;
    body["temperature"] = options_.temperature;
    body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt < options_.transport_retries; ++attempt) {
        httplib::Client client(options_.api_base);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (!options_.api_key.empty())
            headers.emplace("Authorization", "Bearer " + options_.api_key);
        auto res = client.Post("/chat/completions", headers, payload, "application/json");
        if (!res) {
            last_error = "connection failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status) + ": " + res->body;
            continue;
        }
        try {
            json reply = json::parse(res->body);
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception& e) {
            last_error = std::string("malformed completion response: ") + e.what();
        }
    }
    throw TransportError("LLM call failed after retries: " + last_error);
}

std::string LlmBackend::build_task_prompt(const std::string& instruction,
                                          const stl::FormulaPtr& spec,
                                          const world::Pose& initial_state,
                                          const std::string& feedback) const {
    return render_task_prompt(templates_, bundle(templates_.task_examples, feedback), instruction,
                              spec, initial_state, options_.ablation_no_stl);
}

PlanResult<signal::SubgoalSequence> LlmBackend::task_plan(const std::string& instruction,
                                                          const stl::FormulaPtr& spec,
                                                          const world::Pose& initial_state,
                                                          const std::string& feedback) {
    return timed([&] {
        return parse_subgoals(
            strip_code_fence(complete(build_task_prompt(instruction, spec, initial_state, feedback))));
    });
}

PlanResult<signal::TimedWaypoints> LlmBackend::time_plan(const std::string& instruction,
                                                         const signal::SubgoalSequence& subgoals,
                                                         const std::string& feedback) {
    return timed([&] {
        std::string prompt = render_time_prompt(
            templates_, bundle(templates_.time_examples, feedback), instruction, subgoals,
            scenario_.v_max);
        return parse_waypoints(strip_code_fence(complete(prompt)));
    });
}

PlanResult<motion::ControllerHandle> LlmBackend::trajectory_plan(const std::string& kinematics,
                                                                 double v_max, double omega_max,
                                                                 const std::string& feedback) {
    return timed([&] {
        std::string prompt = render_trajectory_prompt(templates_, bundle("", feedback), kinematics,
                                                      v_max, omega_max);
        std::string source = strip_code_fence(complete(prompt));
        PlanResult<motion::ControllerHandle> r;
        r.raw = source;
        try {
            r.value = controller_from_source(
                source,
                (std::filesystem::temp_directory_path() / "t3_llm_controllers").string(),
                "controller-" + std::to_string(telemetry().calls), v_max, omega_max);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        return r;
    });
}

std::string strip_code_fence(const std::string& reply) {
    size_t open = reply.find("```");
    if (open == std::string::npos) return reply;
    size_t body = reply.find('\n', open);
    if (body == std::string::npos) return reply;
    size_t close = reply.find("```", body);
    if (close == std::string::npos) return reply;
    return reply.substr(body + 1, close - body - 1);
}

}  // namespace t3::backend
