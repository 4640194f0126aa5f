#pragma once

#include <optional>
#include <string>

namespace t3::pipeline {

enum class Stage { Logical, Temporal, MotionalSyntax, MotionalFunctional };

std::string to_string(Stage s);

// Outcome of one verification gate. pass is rho >= 0 for robustness-based
// gates, or "program loads and answers the handshake" for the syntax layer.
struct VerificationReport {
    Stage stage;
    std::optional<double> rho;
    bool pass = false;
    std::string diagnostic;  // violated subformula path + window, or protocol error
};

}  // namespace t3::pipeline
