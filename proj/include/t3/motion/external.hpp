#pragma once

#include <stdexcept>
#include <string>

#include "t3/motion/controller.hpp"

namespace t3::motion {

struct ExternalControllerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Child process speaking the line protocol:
//   HELLO            -> READY               (handshake, once)
//   STATE x y theta t
//   TARGET x y t_target -> CMD v omega      (per step)
// Replies must arrive within 1 second. `.py` programs run under python3,
// anything else is executed directly.
class ExternalController {
  public:
    explicit ExternalController(const std::string& program_path);
    ~ExternalController();

    ExternalController(const ExternalController&) = delete;
    ExternalController& operator=(const ExternalController&) = delete;

    // Throws ExternalControllerError on spawn failure, timeout, or a
    // malformed handshake reply.
    void handshake();

    VelocityCommand command(const KinematicState& state, double t, double target_x,
                            double target_y, double target_t);

  private:
    void send_line(const std::string& line);
    std::string recv_line();

    int to_child_ = -1;
    int from_child_ = -1;
    int pid_ = -1;
    std::string buffer_;
};

}  // namespace t3::motion
