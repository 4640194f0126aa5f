#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "t3/motion/cases.hpp"
#include "t3/pipeline/pipeline.hpp"
#include "t3/stl/ast.hpp"
#include "t3/world/scenario.hpp"

namespace t3::bench {

// One benchmark task: a natural-language instruction, its STL translation,
// and the scenario it runs in (path resolved relative to the suite file).
struct SuiteTask {
    std::string id;
    std::string instruction;
    stl::FormulaPtr spec;
    std::string scenario_path;
    world::Scenario scenario;
};

struct Suite {
    std::string name;
    std::vector<SuiteTask> tasks;
};

Suite load_suite(const std::string& path);

struct TaskResult {
    std::string task_id;
    pipeline::PlanArtifacts artifacts;
};

// Aggregate metrics across one suite run. Transport-errored tasks are
// excluded from the success-rate denominator and counted separately.
struct Metrics {
    int tasks = 0;
    int transport_errors = 0;
    int successes = 0;
    int calls = 0;
    double seconds = 0.0;

    double success_rate() const {
        int n = tasks - transport_errors;
        return n == 0 ? 0.0 : static_cast<double>(successes) / n;
    }
    double avg_seconds_per_call() const { return calls == 0 ? 0.0 : seconds / calls; }
    double avg_calls_per_task() const {
        int n = tasks - transport_errors;
        return n == 0 ? 0.0 : static_cast<double>(calls) / n;
    }
};

Metrics compute_metrics(const std::vector<TaskResult>& results);

struct SuiteReport {
    std::string suite_name;
    std::string backend_name;
    std::vector<TaskResult> results;
    Metrics metrics;
};

// A fresh backend per task so parallel workers never share one instance.
// The bool is the prompt ablation flag (drop the STL block).
using BackendFactory = std::function<std::unique_ptr<backend::PlannerBackend>(
    const world::Scenario& scenario, bool ablation_no_stl)>;

SuiteReport run_suite(const Suite& suite, const BackendFactory& make_backend,
                      const motion::CaseLibrary& case_library, pipeline::PipelineConfig config,
                      int jobs = 1);

// Paired runs with and without the STL block in the task prompt.
struct AblationReport {
    SuiteReport with_stl;
    SuiteReport without_stl;

    double success_rate_delta() const {
        return with_stl.metrics.success_rate() - without_stl.metrics.success_rate();
    }
};

AblationReport run_ablation(const Suite& suite, const BackendFactory& make_backend,
                            const motion::CaseLibrary& case_library,
                            pipeline::PipelineConfig config, int jobs = 1);

std::string report_to_json(const SuiteReport& report);
std::string report_table(const SuiteReport& report);
std::string ablation_table(const AblationReport& report);

// Deterministic SVG: region boxes colored by kind, waypoint markers, and
// the trajectory polyline.
std::string export_plot(const world::Scenario& scenario, const signal::TimedWaypoints& waypoints,
                        const std::optional<signal::TimedTrajectory>& trajectory);

}  // namespace t3::bench
