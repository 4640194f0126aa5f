#include "t3/motion/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

namespace t3::motion {

namespace {
constexpr int kReplyTimeoutMs = 1000;
}

ExternalController::ExternalController(const std::string& program_path) {
    if (!std::filesystem::exists(program_path))
        throw ExternalControllerError("controller program not found: " + program_path);

    int in_pipe[2];   // parent -> child
    int out_pipe[2];  // child -> parent
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        throw ExternalControllerError("failed to create controller pipes");

    pid_ = fork();
    if (pid_ < 0) throw ExternalControllerError("failed to fork controller process");
    if (pid_ == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        if (program_path.size() > 3 && program_path.substr(program_path.size() - 3) == ".py")
            execlp("python3", "python3", program_path.c_str(), (char*)nullptr);
        else
            execl(program_path.c_str(), program_path.c_str(), (char*)nullptr);
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
}

ExternalController::~ExternalController() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    if (pid_ > 0) {
        kill(pid_, SIGKILL);
        waitpid(pid_, nullptr, 0);
    }
}

void ExternalController::send_line(const std::string& line) {
    std::string out = line + "\n";
    ssize_t n = write(to_child_, out.data(), out.size());
    if (n != static_cast<ssize_t>(out.size()))
        throw ExternalControllerError("controller process closed its input");
}

std::string ExternalController::recv_line() {
    for (;;) {
        size_t nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        pollfd pfd{from_child_, POLLIN, 0};
        int r = poll(&pfd, 1, kReplyTimeoutMs);
        if (r == 0) throw ExternalControllerError("controller reply timed out");
        if (r < 0) throw ExternalControllerError("poll on controller pipe failed");
        char chunk[256];
        ssize_t n = read(from_child_, chunk, sizeof chunk);
        if (n <= 0) throw ExternalControllerError("controller process exited unexpectedly");
        buffer_.append(chunk, static_cast<size_t>(n));
    }
}

void ExternalController::handshake() {
    send_line("HELLO");
    std::string reply = recv_line();
    if (reply != "READY")
        throw ExternalControllerError("bad handshake reply: '" + reply + "'");
}

VelocityCommand ExternalController::command(const KinematicState& s, double t, double tx,
                                            double ty, double tt) {
    char line[160];
    std::snprintf(line, sizeof line, "STATE %.9g %.9g %.9g %.9g", s.x, s.y, s.theta, t);
    send_line(line);
    std::snprintf(line, sizeof line, "TARGET %.9g %.9g %.9g", tx, ty, tt);
    send_line(line);
    std::string reply = recv_line();
    std::istringstream is(reply);
    std::string tag;
    VelocityCommand cmd{};
    if (!(is >> tag >> cmd.v >> cmd.omega) || tag != "CMD")
        throw ExternalControllerError("malformed controller reply: '" + reply + "'");
    if (!std::isfinite(cmd.v) || !std::isfinite(cmd.omega))
        throw ExternalControllerError("controller produced non-finite command");
    return cmd;
}

}  // namespace t3::motion
