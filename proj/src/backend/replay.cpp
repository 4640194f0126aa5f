#include "t3/backend/replay.hpp"

#include <sys/stat.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "t3/backend/parse_output.hpp"

namespace t3::backend {

namespace fs = std::filesystem;

ReplayBackend::ReplayBackend(std::string fixtures_root, Clock clock)
    : PlannerBackend(std::move(clock)), root_(std::move(fixtures_root)) {}

void ReplayBackend::begin_task(const std::string& task_id) {
    task_id_ = task_id;
    task_attempts_ = time_attempts_ = traj_attempts_ = 0;
}

std::string ReplayBackend::read_fixture(const std::string& stage, int attempt) const {
    fs::path path = fs::path(root_) / task_id_ / (stage + "-" + std::to_string(attempt) + ".txt");
    std::ifstream in(path);
    if (!in) throw TransportError("missing replay fixture: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

PlanResult<signal::SubgoalSequence> ReplayBackend::task_plan(const std::string&,
                                                             const stl::FormulaPtr&,
                                                             const world::Pose&,
                                                             const std::string&) {
    return timed([&] { return parse_subgoals(read_fixture("task", ++task_attempts_)); });
}

PlanResult<signal::TimedWaypoints> ReplayBackend::time_plan(const std::string&,
                                                            const signal::SubgoalSequence&,
                                                            const std::string&) {
    return timed([&] { return parse_waypoints(read_fixture("time", ++time_attempts_)); });
}

PlanResult<motion::ControllerHandle> ReplayBackend::trajectory_plan(const std::string&,
                                                                    double v_max, double omega_max,
                                                                    const std::string&) {
    return timed([&] {
        std::string source = read_fixture("traj", ++traj_attempts_);
        PlanResult<motion::ControllerHandle> r;
        r.raw = source;
        try {
            r.value = controller_from_source(
                source, (fs::temp_directory_path() / "t3_replay_controllers").string(),
                task_id_ + "-traj-" + std::to_string(traj_attempts_), v_max, omega_max);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        return r;
    });
}

motion::ControllerHandle controller_from_source(const std::string& source, const std::string& dir,
                                                const std::string& stem, double v_max,
                                                double omega_max) {
    if (source.empty()) throw std::runtime_error("empty controller program");
    fs::create_directories(dir);
    bool shebang = source.rfind("#!", 0) == 0;
    fs::path path = fs::path(dir) / (stem + (shebang ? "" : ".py"));
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write controller program: " + path.string());
        out << source;
    }
    if (shebang) ::chmod(path.c_str(), 0755);
    motion::ControllerHandle h;
    h.kind = motion::ControllerHandle::Kind::External;
    h.program_path = path.string();
    h.v_max = v_max;
    h.omega_max = omega_max;
    return h;
}

}  // namespace t3::backend
