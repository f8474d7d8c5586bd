#pragma once

// Batch front end shared by the executable and the tests.

#include <iosfwd>
#include <string>

#include "symqfi/config.hpp"
#include "symqfi/linalg.hpp"

namespace symqfi {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitNumericalFailure = 3,
    kExitCheckViolation = 4,
};

/// Runs cfg.command, prints human-readable tables to `out` and diagnostics to
/// `err`, writes output.csv / output.json / output.netlist when configured.
/// Self-check mode (check.enabled = true) returns kExitCheckViolation when a
/// comparison exceeds check.tolerance.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Default self-check tolerance for a subcommand.
double default_check_tolerance(const std::string& command);

/// One matrix row per line, each entry written as "re im".
ComplexMatrix parse_matrix_text(const std::string& text);

}  // namespace symqfi
