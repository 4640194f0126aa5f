#include "t3/bench/bench.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "t3/stl/parser.hpp"

namespace t3::bench {

namespace fs = std::filesystem;
using nlohmann::json;

Suite load_suite(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open suite file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("suite " + path + ": " + e.what());
    }
    Suite suite;
    suite.name = j.value("name", fs::path(path).stem().string());
    if (!j.contains("tasks") || !j["tasks"].is_array())
        throw std::runtime_error("suite " + path + ": missing tasks array");
    fs::path base = fs::path(path).parent_path();
    for (const auto& jt : j["tasks"]) {
        SuiteTask t;
        t.id = jt.at("id").get<std::string>();
        t.instruction = jt.at("instruction").get<std::string>();
        t.spec = stl::parse_stl(jt.at("stl").get<std::string>());
        t.scenario_path = (base / jt.at("scenario").get<std::string>()).string();
        t.scenario = world::load_scenario(t.scenario_path);
        suite.tasks.push_back(std::move(t));
    }
    return suite;
}

Metrics compute_metrics(const std::vector<TaskResult>& results) {
    Metrics m;
    m.tasks = static_cast<int>(results.size());
    for (const auto& r : results) {
        if (r.artifacts.transport_error) {
            m.transport_errors += 1;
            continue;
        }
        if (r.artifacts.success) m.successes += 1;
        m.calls += r.artifacts.total_calls();
        for (const auto& rec : r.artifacts.log)
            if (rec.kind == pipeline::LogRecord::Kind::BackendCall) m.seconds += rec.seconds;
    }
    return m;
}

SuiteReport run_suite(const Suite& suite, const BackendFactory& make_backend,
                      const motion::CaseLibrary& case_library, pipeline::PipelineConfig config,
                      int jobs) {
    if (jobs < 1) jobs = 1;
    SuiteReport report;
    report.suite_name = suite.name;
    report.results.resize(suite.tasks.size());

    auto run_one = [&](std::size_t i) {
        const auto& task = suite.tasks[i];
        auto backend = make_backend(task.scenario, config.ablation_no_stl);
        backend->begin_task(task.id);
        TaskResult result;
        result.task_id = task.id;
        result.artifacts = pipeline::run_pipeline(task.instruction, task.spec, task.scenario,
                                                  *backend, case_library, config);
        report.results[i] = std::move(result);
    };

    if (!suite.tasks.empty())
        report.backend_name =
            make_backend(suite.tasks.front().scenario, config.ablation_no_stl)->name();

    if (jobs == 1 || suite.tasks.size() <= 1) {
        for (std::size_t i = 0; i < suite.tasks.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        int n = std::min<int>(jobs, static_cast<int>(suite.tasks.size()));
        for (int w = 0; w < n; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < suite.tasks.size();
                     i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& w : workers) w.join();
    }
    report.metrics = compute_metrics(report.results);
    return report;
}

AblationReport run_ablation(const Suite& suite, const BackendFactory& make_backend,
                            const motion::CaseLibrary& case_library,
                            pipeline::PipelineConfig config, int jobs) {
    AblationReport rep;
    config.ablation_no_stl = false;
    rep.with_stl = run_suite(suite, make_backend, case_library, config, jobs);
    config.ablation_no_stl = true;
    rep.without_stl = run_suite(suite, make_backend, case_library, config, jobs);
    return rep;
}

std::string report_to_json(const SuiteReport& report) {
    json j;
    j["suite"] = report.suite_name;
    j["backend"] = report.backend_name;
    j["metrics"] = {{"tasks", report.metrics.tasks},
                    {"transport_errors", report.metrics.transport_errors},
                    {"successes", report.metrics.successes},
                    {"success_rate", report.metrics.success_rate()},
                    {"calls", report.metrics.calls},
                    {"seconds", report.metrics.seconds},
                    {"avg_seconds_per_call", report.metrics.avg_seconds_per_call()},
                    {"avg_calls_per_task", report.metrics.avg_calls_per_task()}};
    j["tasks"] = json::array();
    for (const auto& r : report.results) {
        json jt;
        jt["id"] = r.task_id;
        jt["success"] = r.artifacts.success;
        jt["transport_error"] = r.artifacts.transport_error;
        jt["failure_reason"] = r.artifacts.failure_reason;
        jt["task_calls"] = r.artifacts.task_calls;
        jt["time_calls"] = r.artifacts.time_calls;
        jt["traj_calls"] = r.artifacts.traj_calls;
        jt["log"] = json::array();
        for (const auto& rec : r.artifacts.log) {
            json jl;
            jl["kind"] = rec.kind == pipeline::LogRecord::Kind::BackendCall ? "call" : "verify";
            jl["stage"] = rec.stage;
            jl["attempt"] = rec.attempt;
            if (rec.rho) jl["rho"] = *rec.rho;
            jl["seconds"] = rec.seconds;
            jl["ok"] = rec.ok;
            jt["log"].push_back(std::move(jl));
        }
        j["tasks"].push_back(std::move(jt));
    }
    return j.dump(2);
}

std::string report_table(const SuiteReport& report) {
    std::ostringstream os;
    os << "suite: " << report.suite_name << "  backend: " << report.backend_name << "\n";
    os << std::left << std::setw(24) << "task" << std::setw(8) << "result" << std::setw(7)
       << "calls" << "reason\n";
    for (const auto& r : report.results) {
        std::string result = r.artifacts.transport_error ? "error"
                             : r.artifacts.success       ? "pass"
                                                         : "fail";
        os << std::left << std::setw(24) << r.task_id << std::setw(8) << result << std::setw(7)
           << r.artifacts.total_calls() << r.artifacts.failure_reason << "\n";
    }
    const auto& m = report.metrics;
    os << std::fixed << std::setprecision(3);
    os << "SR " << m.success_rate() << " (" << m.successes << "/" << (m.tasks - m.transport_errors)
       << ", " << m.transport_errors << " transport-errored)  AT " << m.avg_seconds_per_call()
       << " s/call  AC " << m.avg_calls_per_task() << " calls/task\n";
    return os.str();
}

std::string ablation_table(const AblationReport& report) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "with STL:    SR " << report.with_stl.metrics.success_rate() << "  AC "
       << report.with_stl.metrics.avg_calls_per_task() << "\n";
    os << "without STL: SR " << report.without_stl.metrics.success_rate() << "  AC "
       << report.without_stl.metrics.avg_calls_per_task() << "\n";
    os << "SR delta:    " << report.success_rate_delta() << "\n";
    return os.str();
}

namespace {

const char* kind_color(world::RegionKind k) {
    switch (k) {
        case world::RegionKind::Room: return "#dbe9f6";
        case world::RegionKind::Obstacle: return "#b0b0b0";
        case world::RegionKind::Wall: return "#5a5a5a";
        case world::RegionKind::KeyPickup: return "#f6e27a";
        case world::RegionKind::Door: return "#c98a4b";
        case world::RegionKind::Goal: return "#b6e3b6";
        case world::RegionKind::Charger: return "#e3b6d9";
    }
    return "#ffffff";
}

}  // namespace

std::string export_plot(const world::Scenario& scenario, const signal::TimedWaypoints& waypoints,
                        const std::optional<signal::TimedTrajectory>& trajectory) {
    double x0 = scenario.initial_state.x, x1 = x0, y0 = scenario.initial_state.y, y1 = y0;
    for (const auto& r : scenario.regions) {
        x0 = std::min(x0, r.box.x0);
        x1 = std::max(x1, r.box.x1);
        y0 = std::min(y0, r.box.y0);
        y1 = std::max(y1, r.box.y1);
    }
    const double margin = 0.5, scale = 60.0;
    x0 -= margin;
    y0 -= margin;
    x1 += margin;
    y1 += margin;
    auto px = [&](double x) { return (x - x0) * scale; };
    auto py = [&](double y) { return (y1 - y) * scale; };  // flip y for SVG

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (x1 - x0) * scale
       << "\" height=\"" << (y1 - y0) * scale << "\">\n";
    for (const auto& r : scenario.regions) {
        os << "  <rect x=\"" << px(r.box.x0) << "\" y=\"" << py(r.box.y1) << "\" width=\""
           << (r.box.x1 - r.box.x0) * scale << "\" height=\"" << (r.box.y1 - r.box.y0) * scale
           << "\" fill=\"" << kind_color(r.kind) << "\" stroke=\"#404040\"/>\n";
        os << "  <text x=\"" << px(r.box.cx()) << "\" y=\"" << py(r.box.cy())
           << "\" font-size=\"11\" text-anchor=\"middle\">" << r.label << "</text>\n";
    }
    if (trajectory && !trajectory->samples.empty()) {
        os << "  <polyline fill=\"none\" stroke=\"#1f4e9e\" stroke-width=\"2\" points=\"";
        for (const auto& s : trajectory->samples) os << px(s.x) << "," << py(s.y) << " ";
        os << "\"/>\n";
    }
    for (const auto& w : waypoints) {
        auto p = signal::subgoal_position(w.goal, scenario);
        os << "  <circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y)
           << "\" r=\"4\" fill=\"#c0392b\"/>\n";
    }
    os << "  <circle cx=\"" << px(scenario.initial_state.x) << "\" cy=\""
       << py(scenario.initial_state.y) << "\" r=\"5\" fill=\"#27ae60\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace t3::bench
