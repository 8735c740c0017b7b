#include "graphncl/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "graphncl/errors.hpp"
#include "graphncl/version.hpp"

namespace graphncl {

using nlohmann::json;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

json metadata_json(const Trajectory& traj) {
    json j;
    j["alpha"] = traj.contraction.alpha;
    j["window_length"] = traj.contraction.window_length;
    j["window_count"] = traj.contraction.window_count;
    j["mass_bound"] = traj.contraction.mass_bound;
    j["constants"] = {{"C_V", traj.constants.C_V},
                      {"L_V", traj.constants.L_V},
                      {"M", traj.constants.M}};
    json windows = json::array();
    for (const auto& w : traj.windows) {
        windows.push_back(
            {{"iterations", w.iterations},
             {"final_residual", w.distances.empty() ? 0.0 : w.distances.back()},
             {"distances", w.distances}});
    }
    j["windows"] = windows;
    j["grid_nodes"] = traj.times.size();
    return j;
}

}  // namespace

RunResult run(const RunConfig& config, const std::string& output_dir) {
    RunResult result;
    result.output_dir = output_dir;
    const auto t_start = std::chrono::steady_clock::now();

    json manifest;
    manifest["name"] = config.name;
    manifest["versions"] = {{"graphncl", version_string}};

    auto finish = [&](int code, const std::string& status,
                      const std::string& message) {
        result.exit_code = code;
        result.message = message;
        manifest["status"] = status;
        if (!message.empty()) manifest["error"] = message;
        manifest["wall_time_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                .count();
        std::error_code ec;
        std::filesystem::create_directories(output_dir, ec);
        if (!ec) write_file(std::filesystem::path(output_dir) / "manifest.json",
                            manifest.dump(2) + "\n");
        return result;
    };

    try {
        config.validate();
        manifest["config_hash"] = config.config_hash();
    } catch (const std::exception& e) {
        return finish(run_config_invalid, "config_invalid", e.what());
    }

    Trajectory traj;
    try {
        traj = solve_ncl(config.graph, config.interpolation, config.velocity,
                         config.initial_density, config.solver);
    } catch (const convergence_error& e) {
        return finish(run_convergence_failure, "convergence_failure", e.what());
    } catch (const numerical_error& e) {
        return finish(run_convergence_failure, "numerical_failure", e.what());
    } catch (const std::exception& e) {
        return finish(run_config_invalid, "config_invalid", e.what());
    }

    DiagnosticsReport report = verify_trajectory(
        traj, config.graph, config.interpolation, traj.constants, config.diagnostics);
    result.report = report;

    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec)
        return finish(run_config_invalid, "config_invalid",
                      "cannot create output directory " + output_dir);

    const std::filesystem::path dir(output_dir);
    write_file(dir / "trajectory.csv", traj.to_csv());
    write_file(dir / "metadata.json", metadata_json(traj).dump(2) + "\n");
    write_file(dir / "diagnostics.json", report.to_json_string(2) + "\n");
    manifest["files"] = {"trajectory.csv", "metadata.json", "diagnostics.json",
                         "manifest.json"};

    const bool positivity_hard =
        config.hard_checks.positivity_hard(config.interpolation.kind);
    const bool hard_ok =
        (!config.hard_checks.mass || report.mass_ok) &&
        (!config.hard_checks.tv_bound || report.tv_bound_ok) &&
        (!positivity_hard || report.positivity_ok) &&
        (!config.hard_checks.isolated || report.isolated_ok) &&
        (!config.hard_checks.lp || report.lp_ok);

    if (!hard_ok)
        return finish(run_diagnostics_failed, "diagnostics_failed",
                      "hard diagnostics failed");
    return finish(run_ok, "ok", "");
}

}  // namespace graphncl
