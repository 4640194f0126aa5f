#include "t3/pipeline/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "t3/backend/prompts.hpp"
#include "t3/motion/simulate.hpp"
#include "t3/stl/robustness.hpp"

namespace t3::pipeline {

std::string to_string(Stage s) {
    switch (s) {
        case Stage::Logical: return "logical";
        case Stage::Temporal: return "temporal";
        case Stage::MotionalSyntax: return "motional-syntax";
        case Stage::MotionalFunctional: return "motional-functional";
    }
    return "?";
}

void PipelineConfig::validate() const {
    if (n_max_outer <= 0 || n_max_task <= 0 || n_max_time <= 0 || n_max_traj <= 0)
        throw std::invalid_argument("pipeline config: retry limits must be positive");
    if (!(resample_dt > 0.0)) throw std::invalid_argument("pipeline config: resample_dt must be positive");
}

namespace {

VerificationReport rho_report(Stage stage, const stl::FormulaPtr& f,
                              const signal::TimedTrajectory& traj, const world::Scenario& sc) {
    VerificationReport r;
    r.stage = stage;
    try {
        auto trace = stl::robustness_trace(*f, traj, sc, traj.start_time());
        r.rho = trace.value;
        r.pass = trace.value >= 0.0;
        if (!r.pass) {
            std::ostringstream os;
            os << "rho = " << trace.value << " at " << trace.violated_path;
            r.diagnostic = os.str();
        }
    } catch (const std::exception& e) {
        r.pass = false;
        r.diagnostic = e.what();
    }
    return r;
}

}  // namespace

VerificationReport logical_verify(const signal::SubgoalSequence& subgoals,
                                  const stl::FormulaPtr& spec, const world::Scenario& scenario,
                                  double resample_dt) {
    VerificationReport r;
    r.stage = Stage::Logical;
    if (subgoals.empty()) {
        r.diagnostic = "empty subgoal sequence";
        return r;
    }
    std::vector<signal::Point> pts;
    pts.push_back({scenario.initial_state.x, scenario.initial_state.y});
    try {
        for (const auto& g : subgoals) pts.push_back(signal::subgoal_position(g, scenario));
    } catch (const std::exception& e) {
        r.diagnostic = e.what();
        return r;
    }

    // Pseudo-trajectory: straight legs at v_max, one sample per resample_dt.
    // A repeated subgoal is the planner's dwell convention (e.g. charging),
    // so a zero-length leg pauses long enough to charge.
    const double spacing = resample_dt * scenario.v_max;
    const int dwell_steps =
        static_cast<int>(std::ceil((signal::kChargeDwellSeconds + 0.5) / resample_dt));
    signal::TimedTrajectory traj;
    double t = 0.0;
    traj.samples.push_back({pts[0].x, pts[0].y, t});
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto& a = pts[i - 1];
        const auto& b = pts[i];
        double len = std::hypot(b.x - a.x, b.y - a.y);
        int steps = len < 1e-12 ? dwell_steps
                                : std::max(1, static_cast<int>(std::ceil(len / spacing)));
        for (int k = 1; k <= steps; ++k) {
            double u = len < 1e-12 ? 1.0 : static_cast<double>(k) / steps;
            t += resample_dt;
            traj.samples.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y), t});
        }
    }
    if (traj.samples.size() < 2) {
        t += resample_dt;
        traj.samples.push_back({pts[0].x, pts[0].y, t});
    }
    traj = signal::derive_channels(traj, scenario);
    return rho_report(Stage::Logical, stl::untimed(spec), traj, scenario);
}

VerificationReport temporal_verify(const signal::TimedWaypoints& waypoints,
                                   const stl::FormulaPtr& spec, const world::Scenario& scenario,
                                   double resample_dt) {
    VerificationReport r;
    r.stage = Stage::Temporal;
    if (waypoints.empty()) {
        r.diagnostic = "empty waypoint schedule";
        return r;
    }
    signal::TimedTrajectory coarse;
    try {
        double t0 = 0.0;
        signal::Point prev{scenario.initial_state.x, scenario.initial_state.y};
        coarse.samples.push_back({prev.x, prev.y, t0});
        for (const auto& w : waypoints) {
            auto p = signal::subgoal_position(w.goal, scenario);
            double dt_leg = w.t - t0;
            double len = std::hypot(p.x - prev.x, p.y - prev.y);
            if (dt_leg <= 0.0) {
                r.diagnostic = "waypoint timestamps must be strictly increasing";
                return r;
            }
            if (len / dt_leg > scenario.v_max * (1.0 + 1e-9)) {
                std::ostringstream os;
                os << "leg to " << signal::subgoal_text(w.goal) << " needs speed " << len / dt_leg
                   << " > v_max " << scenario.v_max;
                r.diagnostic = os.str();
                return r;
            }
            coarse.samples.push_back({p.x, p.y, w.t});
            prev = p;
            t0 = w.t;
        }
    } catch (const std::exception& e) {
        r.diagnostic = e.what();
        return r;
    }
    auto traj = signal::resample(coarse, resample_dt);
    traj = signal::derive_channels(traj, scenario);
    return rho_report(Stage::Temporal, spec, traj, scenario);
}

std::string kinematics_description(const world::Scenario& scenario) {
    std::ostringstream os;
    os << "unicycle model: x' = v cos(theta), y' = v sin(theta), theta' = omega; "
       << "v in [0, " << scenario.v_max << "], omega in [-" << scenario.omega_max << ", "
       << scenario.omega_max << "]; Euler step " << motion::kDefaultDt << " s";
    return os.str();
}

namespace {

void log_call(PlanArtifacts& art, const std::string& stage, int attempt, double seconds, bool ok) {
    art.log.push_back({LogRecord::Kind::BackendCall, stage, attempt, std::nullopt, seconds, ok});
}

void log_verification(PlanArtifacts& art, const VerificationReport& r, int attempt) {
    art.log.push_back(
        {LogRecord::Kind::Verification, to_string(r.stage), attempt, r.rho, 0.0, r.pass});
}

}  // namespace

namespace {

PlanArtifacts run_pipeline_impl(const std::string& instruction, const stl::FormulaPtr& spec,
                                const world::Scenario& scenario,
                                backend::PlannerBackend& backend,
                                const motion::CaseLibrary& case_library,
                                const PipelineConfig& config, PlanArtifacts art) {
    const std::string chi = kinematics_description(scenario);

    for (int outer = 0; outer < config.n_max_outer; ++outer) {
        // --- Task stage: subgoal sequence under the logical gate. ---
        signal::SubgoalSequence subgoals;
        bool task_ok = false;
        std::string feedback;
        for (int attempt = 0; attempt < config.n_max_task; ++attempt) {
            double before = backend.telemetry().total_seconds;
            auto res = backend.task_plan(instruction, spec, scenario.initial_state, feedback);
            art.task_calls += 1;
            log_call(art, "task", attempt, backend.telemetry().total_seconds - before, res.ok());
            if (!res.ok()) {
                feedback = backend::render_feedback(res.raw, res.error);
                continue;
            }
            auto report = logical_verify(*res.value, spec, scenario, config.resample_dt);
            art.reports.push_back(report);
            log_verification(art, report, attempt);
            if (report.pass) {
                subgoals = *res.value;
                task_ok = true;
                break;
            }
            feedback = backend::render_feedback(res.raw, report.diagnostic);
        }
        if (!task_ok) {
            art.failure_reason = "task planning exhausted its retry budget";
            return art;
        }
        art.subgoals = subgoals;

        // --- Time stage: timed waypoints under the temporal gate. ---
        signal::TimedWaypoints waypoints;
        bool time_ok = false;
        feedback.clear();
        for (int attempt = 0; attempt < config.n_max_time; ++attempt) {
            double before = backend.telemetry().total_seconds;
            auto res = backend.time_plan(instruction, subgoals, feedback);
            art.time_calls += 1;
            log_call(art, "time", attempt, backend.telemetry().total_seconds - before, res.ok());
            if (!res.ok()) {
                feedback = backend::render_feedback(res.raw, res.error);
                continue;
            }
            auto report = temporal_verify(*res.value, spec, scenario, config.resample_dt);
            art.reports.push_back(report);
            log_verification(art, report, attempt);
            if (report.pass) {
                waypoints = *res.value;
                time_ok = true;
                break;
            }
            feedback = backend::render_feedback(res.raw, report.diagnostic);
        }
        if (!time_ok) {
            art.failure_reason = "time planning exhausted its retry budget";
            return art;
        }
        art.waypoints = waypoints;

        // --- Trajectory stage: controller under dual-layer motional gates.
        // Exhaustion here restarts the whole cascade. ---
        feedback.clear();
        for (int attempt = 0; attempt < config.n_max_traj; ++attempt) {
            double before = backend.telemetry().total_seconds;
            auto res = backend.trajectory_plan(chi, scenario.v_max, scenario.omega_max, feedback);
            art.traj_calls += 1;
            log_call(art, "traj", attempt, backend.telemetry().total_seconds - before, res.ok());
            if (!res.ok()) {
                feedback = backend::render_feedback(res.raw, res.error);
                continue;
            }
            auto reports = motion::motional_verify(*res.value, case_library, motion::kDefaultDt);
            bool gates_pass = true;
            for (const auto& rep : reports) {
                art.reports.push_back(rep);
                log_verification(art, rep, attempt);
                if (!rep.pass) {
                    gates_pass = false;
                    feedback = backend::render_feedback(res.raw, rep.diagnostic);
                    break;
                }
            }
            if (!gates_pass) continue;

            // Certified controller: run the actual task and re-check the
            // full specification on the realized trajectory.
            VerificationReport final_rep;
            final_rep.stage = Stage::MotionalFunctional;
            signal::TimedTrajectory traj;
            try {
                traj = motion::simulate(*res.value, waypoints, scenario, motion::kDefaultDt);
                traj = signal::derive_channels(traj, scenario);
                final_rep = rho_report(Stage::MotionalFunctional, spec, traj, scenario);
            } catch (const std::exception& e) {
                final_rep.pass = false;
                final_rep.diagnostic = e.what();
            }
            art.reports.push_back(final_rep);
            log_verification(art, final_rep, attempt);
            if (final_rep.pass) {
                art.controller = *res.value;
                art.trajectory = traj;
                art.success = true;
                return art;
            }
            feedback = backend::render_feedback(res.raw, final_rep.diagnostic);
        }
        // fall through: restart the cascade
    }
    art.failure_reason = "trajectory planning exhausted all restarts";
    return art;
}

}  // namespace

PlanArtifacts run_pipeline(const std::string& instruction, const stl::FormulaPtr& spec,
                           const world::Scenario& scenario, backend::PlannerBackend& backend,
                           const motion::CaseLibrary& case_library, const PipelineConfig& config) {
    config.validate();
    stl::bind_check(spec, scenario);
    PlanArtifacts art;
    try {
        return run_pipeline_impl(instruction, spec, scenario, backend, case_library, config,
                                 std::move(art));
    } catch (const backend::TransportError& e) {
        PlanArtifacts failed;
        failed.transport_error = true;
        failed.failure_reason = std::string("transport error: ") + e.what();
        return failed;
    }
}

}  // namespace t3::pipeline
