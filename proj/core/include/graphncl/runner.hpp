#pragma once

#include <optional>
#include <string>

#include "graphncl/run_config.hpp"

namespace graphncl {

/// Process exit codes of a run.
enum RunExitCode : int {
    run_ok = 0,
    run_config_invalid = 2,
    run_convergence_failure = 3,
    run_diagnostics_failed = 4,
};

struct RunResult {
    int exit_code = run_ok;
    std::string output_dir;
    std::string message;  // empty on success
    std::optional<DiagnosticsReport> report;
};

/// Executes a resolved config end to end: solve, verify, and write
/// trajectory.csv, metadata.json, diagnostics.json and manifest.json into
/// `output_dir`. Never throws; failures are mapped onto exit codes with the
/// message carried in the result.
RunResult run(const RunConfig& config, const std::string& output_dir);

}  // namespace graphncl
