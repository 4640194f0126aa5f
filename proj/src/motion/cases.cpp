#include "t3/motion/cases.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "t3/motion/external.hpp"
#include "t3/stl/parser.hpp"
#include "t3/stl/robustness.hpp"

namespace t3::motion {

namespace fs = std::filesystem;
using nlohmann::json;

world::Scenario VerificationCase::materialize_scenario() const {
    world::Scenario sc = world::load_scenario(scenario_path);
    sc.v_max *= v_max_scale;
    for (const ObstacleOffset& off : obstacle_offsets) {
        bool found = false;
        for (world::Region& r : sc.regions) {
            if (r.label != off.label) continue;
            r.box.x0 += off.dx;
            r.box.x1 += off.dx;
            r.box.y0 += off.dy;
            r.box.y1 += off.dy;
            found = true;
        }
        if (!found) throw std::invalid_argument("obstacle offset targets unknown region: " + off.label);
    }
    return sc;
}

namespace {

json waypoints_to_json(const signal::TimedWaypoints& wps) {
    json arr = json::array();
    for (const auto& wp : wps) {
        json j;
        if (const auto* label = std::get_if<std::string>(&wp.goal)) {
            j["goal"] = *label;
        } else {
            const auto& p = std::get<signal::Point>(wp.goal);
            j["x"] = p.x;
            j["y"] = p.y;
        }
        j["t"] = wp.t;
        arr.push_back(j);
    }
    return arr;
}

signal::TimedWaypoints waypoints_from_json(const json& arr) {
    signal::TimedWaypoints wps;
    for (const json& j : arr) {
        signal::TimedWaypoint wp;
        if (j.contains("goal"))
            wp.goal = j.at("goal").get<std::string>();
        else
            wp.goal = signal::Point{j.at("x").get<double>(), j.at("y").get<double>()};
        wp.t = j.at("t").get<double>();
        wps.push_back(std::move(wp));
    }
    return wps;
}

VerificationCase case_from_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open case file: " + path.string());
    json j = json::parse(in);
    VerificationCase c;
    c.name = j.at("name").get<std::string>();
    c.scenario_path = (path.parent_path() / j.at("scenario").get<std::string>()).string();
    c.v_max_scale = j.value("v_max_scale", 1.0);
    if (j.contains("obstacle_offsets"))
        for (const json& jo : j.at("obstacle_offsets"))
            c.obstacle_offsets.push_back({jo.at("label").get<std::string>(),
                                          jo.at("dx").get<double>(), jo.at("dy").get<double>()});
    c.waypoints = waypoints_from_json(j.at("waypoints"));
    c.formula = stl::parse_stl(j.at("formula").get<std::string>());
    if (j.contains("reference"))
        c.reference_path = (path.parent_path() / j.at("reference").get<std::string>()).string();
    return c;
}

}  // namespace

CaseLibrary load_case_library(const std::string& dir) {
    CaseLibrary lib;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) lib.cases.push_back(case_from_file(f));
    if (lib.cases.empty()) throw std::runtime_error("case library is empty: " + dir);
    return lib;
}

void save_case(const VerificationCase& c, const std::string& dir) {
    json j;
    j["name"] = c.name;
    j["scenario"] = fs::relative(c.scenario_path, dir).string();
    j["v_max_scale"] = c.v_max_scale;
    j["obstacle_offsets"] = json::array();
    for (const auto& off : c.obstacle_offsets)
        j["obstacle_offsets"].push_back({{"label", off.label}, {"dx", off.dx}, {"dy", off.dy}});
    j["waypoints"] = waypoints_to_json(c.waypoints);
    j["formula"] = stl::print_stl(c.formula);
    if (c.reference_traj) {
        std::string ref_name = c.name + ".traj";
        signal::save_trajectory(*c.reference_traj, (fs::path(dir) / ref_name).string());
        j["reference"] = ref_name;
    } else if (!c.reference_path.empty()) {
        j["reference"] = fs::relative(c.reference_path, dir).string();
    }
    std::ofstream out(fs::path(dir) / (c.name + ".json"));
    out << j.dump(2) << "\n";
}

double evaluate_case(const ControllerHandle& controller, const VerificationCase& c, double dt,
                     signal::TimedTrajectory* out_traj) {
    world::Scenario sc = c.materialize_scenario();
    ControllerHandle h = controller;
    h.v_max = std::min(h.v_max, sc.v_max);
    h.omega_max = std::min(h.omega_max, sc.omega_max);
    signal::TimedTrajectory traj =
        signal::derive_channels(simulate(h, c.waypoints, sc, dt), sc);
    if (out_traj) *out_traj = traj;
    return stl::robustness(c.formula, traj, sc, 0.0).value;
}

CaseLibrary generate_cases(const VerificationCase& base, const SweepSpec& sweep) {
    CaseLibrary lib;
    std::vector<std::optional<ObstacleOffset>> offsets = {std::nullopt};
    for (const auto& off : sweep.obstacle_offsets) offsets.push_back(off);

    for (double dscale : sweep.deadline_scales) {
        for (double vscale : sweep.v_max_scales) {
            for (const auto& off : offsets) {
                VerificationCase c = base;
                std::ostringstream name;
                name << base.name << "_d" << dscale << "_v" << vscale;
                if (off) name << "_" << off->label << (off->dx >= 0 ? "+" : "") << off->dx;
                c.name = name.str();
                c.v_max_scale = base.v_max_scale * vscale;
                if (off) c.obstacle_offsets.push_back(*off);
                for (auto& wp : c.waypoints) wp.t *= dscale;
                c.formula = stl::scale_intervals(base.formula, dscale);
                c.reference_path.clear();
                // Re-certification: the case is kept only if a built-in
                // reference run satisfies its formula.
                try {
                    signal::TimedTrajectory ref;
                    ControllerHandle unconstrained = builtin_controller(1e9, 1e9);
                    if (evaluate_case(unconstrained, c, sweep.dt, &ref) < 0.0) continue;
                    c.reference_traj = std::move(ref);
                } catch (const std::exception&) {
                    continue;
                }
                lib.cases.push_back(std::move(c));
            }
        }
    }
    if (lib.cases.empty()) throw std::runtime_error("case sweep certified zero cases");
    return lib;
}

std::vector<pipeline::VerificationReport> motional_verify(const ControllerHandle& controller,
                                                          const CaseLibrary& library, double dt) {
    std::vector<pipeline::VerificationReport> reports;

    pipeline::VerificationReport syntax;
    syntax.stage = pipeline::Stage::MotionalSyntax;
    if (controller.kind == ControllerHandle::Kind::External) {
        try {
            ExternalController probe(controller.program_path);
            probe.handshake();
            syntax.pass = true;
            syntax.diagnostic = "program loaded and answered handshake";
        } catch (const ExternalControllerError& e) {
            syntax.pass = false;
            syntax.diagnostic = e.what();
        }
    } else {
        syntax.pass = true;
        syntax.diagnostic = "builtin controller";
    }
    reports.push_back(syntax);
    if (!syntax.pass) return reports;  // layer 2 never runs after a layer-1 fail

    pipeline::VerificationReport functional;
    functional.stage = pipeline::Stage::MotionalFunctional;
    functional.pass = true;
    if (library.cases.empty()) {
        functional.diagnostic = "empty case library; functional layer vacuous";
        reports.push_back(functional);
        return reports;
    }
    double worst = std::numeric_limits<double>::infinity();
    for (const VerificationCase& c : library.cases) {
        double rho;
        try {
            rho = evaluate_case(controller, c, dt);
        } catch (const std::exception& e) {
            functional.pass = false;
            functional.diagnostic = "case '" + c.name + "': " + e.what();
            functional.rho = -std::numeric_limits<double>::infinity();
            reports.push_back(functional);
            return reports;
        }
        worst = std::min(worst, rho);
        if (rho < 0.0) {
            functional.pass = false;
            functional.rho = rho;
            functional.diagnostic = "case '" + c.name + "' violated with rho=" + std::to_string(rho);
            reports.push_back(functional);
            return reports;
        }
    }
    functional.rho = worst;
    functional.diagnostic = "all " + std::to_string(library.cases.size()) + " cases passed";
    reports.push_back(functional);
    return reports;
}

}  // namespace t3::motion
