#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "t3/backend/llm.hpp"
#include "t3/backend/oracle.hpp"
#include "t3/backend/replay.hpp"
#include "t3/bench/bench.hpp"
#include "t3/motion/cases.hpp"
#include "t3/stl/parser.hpp"
#include "t3/stl/robustness.hpp"

namespace fs = std::filesystem;
using namespace t3;

namespace {

// Exit codes: 0 all tasks succeeded, 1 some task failed its verification
// budget, 2 usage/configuration/transport error.
constexpr int kExitAllPass = 0;
constexpr int kExitSomeFail = 1;
constexpr int kExitError = 2;

struct CommonOpts {
    std::string backend = "oracle";
    std::string suite_path;
    std::string cases_dir;
    std::string replay_root;
    std::string prompts_dir;
    std::string out_path;
    bool no_stl = false;
    int jobs = 1;
};

bench::BackendFactory make_factory(const CommonOpts& opts) {
    if (opts.backend == "oracle") {
        return [](const world::Scenario& sc, bool) {
            return std::unique_ptr<backend::PlannerBackend>(new backend::OracleBackend(sc));
        };
    }
    if (opts.backend == "replay") {
        if (opts.replay_root.empty())
            throw std::runtime_error("--replay-root is required with --backend replay");
        std::string root = opts.replay_root;
        return [root](const world::Scenario&, bool) {
            return std::unique_ptr<backend::PlannerBackend>(new backend::ReplayBackend(root));
        };
    }
    if (opts.backend == "llm") {
        std::string prompts = opts.prompts_dir.empty() ? "fixtures/prompts" : opts.prompts_dir;
        auto templates = backend::PromptTemplates::load(prompts);
        return [templates](const world::Scenario& sc, bool no_stl) {
            auto options = backend::LlmOptions::from_environment();
            options.ablation_no_stl = no_stl;
            return std::unique_ptr<backend::PlannerBackend>(
                new backend::LlmBackend(options, sc, templates));
        };
    }
    throw std::runtime_error("unknown backend: " + opts.backend);
}

motion::CaseLibrary load_cases(const CommonOpts& opts) {
    if (opts.cases_dir.empty()) return {};
    return motion::load_case_library(opts.cases_dir);
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_suite) {
    cmd->add_option("--backend", opts.backend, "oracle | replay | llm")
        ->check(CLI::IsMember({"oracle", "replay", "llm"}));
    auto* suite = cmd->add_option("--suite", opts.suite_path, "benchmark suite JSON");
    if (needs_suite) suite->required();
    cmd->add_option("--cases", opts.cases_dir, "verification case library directory");
    cmd->add_option("--replay-root", opts.replay_root, "recorded fixture root (replay backend)");
    cmd->add_option("--prompts", opts.prompts_dir, "prompt template directory (llm backend)");
    cmd->add_option("--out", opts.out_path, "output file (default stdout)");
    cmd->add_flag("--no-stl", opts.no_stl, "drop the STL block from the task prompt");
    cmd->add_option("--jobs", opts.jobs, "parallel tasks")->check(CLI::PositiveNumber);
}

int suite_exit_code(const bench::SuiteReport& report) {
    if (report.metrics.transport_errors == report.metrics.tasks && report.metrics.tasks > 0)
        return kExitError;
    return report.metrics.successes == report.metrics.tasks - report.metrics.transport_errors &&
                   report.metrics.transport_errors == 0
               ? kExitAllPass
               : kExitSomeFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification-in-the-loop motion planning bench"};
    app.require_subcommand(1);

    CommonOpts run_opts, ablate_opts, plot_opts, verify_opts, cases_opts;

    auto* run = app.add_subcommand("run", "run a benchmark suite through the pipeline");
    add_common(run, run_opts, true);

    auto* ablate = app.add_subcommand("ablate", "paired runs with and without the STL prompt block");
    add_common(ablate, ablate_opts, true);

    auto* plot = app.add_subcommand("plot", "render one suite task's plan as SVG");
    add_common(plot, plot_opts, true);
    std::string plot_task;
    plot->add_option("--task", plot_task, "task id within the suite")->required();

    auto* verify = app.add_subcommand("verify", "evaluate an STL formula on a saved trajectory");
    std::string verify_scn, verify_stl, verify_traj;
    verify->add_option("--scenario", verify_scn, "scenario file")->required();
    verify->add_option("--stl", verify_stl, "STL formula text")->required();
    verify->add_option("--trajectory", verify_traj, "trajectory file")->required();

    auto* cases = app.add_subcommand("cases", "generate a verification case library sweep");
    std::string cases_base, cases_out;
    cases->add_option("--base", cases_base, "base case JSON")->required();
    cases->add_option("--out-dir", cases_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto suite = bench::load_suite(run_opts.suite_path);
            pipeline::PipelineConfig config;
            config.ablation_no_stl = run_opts.no_stl;
            auto report = bench::run_suite(suite, make_factory(run_opts), load_cases(run_opts),
                                           config, run_opts.jobs);
            if (!run_opts.out_path.empty())
                write_or_print(run_opts.out_path, bench::report_to_json(report));
            std::cout << bench::report_table(report);
            return suite_exit_code(report);
        }
        if (ablate->parsed()) {
            auto suite = bench::load_suite(ablate_opts.suite_path);
            pipeline::PipelineConfig config;
            auto report = bench::run_ablation(suite, make_factory(ablate_opts),
                                              load_cases(ablate_opts), config, ablate_opts.jobs);
            if (!ablate_opts.out_path.empty()) {
                nlohmann::json j;
                j["with_stl"] = nlohmann::json::parse(bench::report_to_json(report.with_stl));
                j["without_stl"] =
                    nlohmann::json::parse(bench::report_to_json(report.without_stl));
                j["success_rate_delta"] = report.success_rate_delta();
                write_or_print(ablate_opts.out_path, j.dump(2));
            }
            std::cout << bench::ablation_table(report);
            return suite_exit_code(report.with_stl);
        }
        if (plot->parsed()) {
            auto suite = bench::load_suite(plot_opts.suite_path);
            const bench::SuiteTask* task = nullptr;
            for (const auto& t : suite.tasks)
                if (t.id == plot_task) task = &t;
            if (!task) throw std::runtime_error("no task named " + plot_task + " in suite");
            pipeline::PipelineConfig config;
            config.ablation_no_stl = plot_opts.no_stl;
            auto backend = make_factory(plot_opts)(task->scenario, plot_opts.no_stl);
            backend->begin_task(task->id);
            auto art = pipeline::run_pipeline(task->instruction, task->spec, task->scenario,
                                              *backend, load_cases(plot_opts), config);
            write_or_print(plot_opts.out_path,
                           bench::export_plot(task->scenario, art.waypoints, art.trajectory));
            return art.success ? kExitAllPass : kExitSomeFail;
        }
        if (verify->parsed()) {
            auto scenario = world::load_scenario(verify_scn);
            auto spec = stl::parse_stl(verify_stl);
            auto traj = signal::load_trajectory(verify_traj);
            traj = signal::derive_channels(traj, scenario);
            stl::bind_check(spec, scenario);
            auto trace = stl::robustness_trace(*spec, traj, scenario, traj.start_time());
            std::cout << "rho = " << trace.value << (trace.value >= 0 ? "  PASS" : "  FAIL")
                      << "\n";
            if (trace.value < 0) std::cout << "violated: " << trace.violated_path << "\n";
            return trace.value >= 0 ? kExitAllPass : kExitSomeFail;
        }
        if (cases->parsed()) {
            std::ifstream in(cases_base);
            if (!in) throw std::runtime_error("cannot open " + cases_base);
            // Reuse the library loader by treating the base file's directory
            // as a one-case library.
            auto lib = motion::load_case_library(fs::path(cases_base).parent_path().string());
            const motion::VerificationCase* base = nullptr;
            for (const auto& c : lib.cases)
                if (c.name == fs::path(cases_base).stem().string()) base = &c;
            if (!base) throw std::runtime_error("base case not found in " + cases_base);
            auto generated = motion::generate_cases(*base, motion::SweepSpec{});
            fs::create_directories(cases_out);
            for (const auto& c : generated.cases) motion::save_case(c, cases_out);
            std::cout << "wrote " << generated.cases.size() << " cases to " << cases_out << "\n";
            return kExitAllPass;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
