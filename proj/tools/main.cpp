// Command-line front end: resolves a run configuration (JSON file or preset),
// executes it and writes trajectory.csv, metadata.json, diagnostics.json and
// manifest.json. Exit codes: 0 success, 2 invalid configuration, 3 solver
// convergence failure, 4 hard diagnostics failed.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "graphncl/presets.hpp"
#include "graphncl/run_config.hpp"
#include "graphncl/runner.hpp"
#include "graphncl/version.hpp"

namespace {

std::string resolve_output_dir(const std::string& cli_out,
                               const graphncl::RunConfig& config) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("GRAPHNCL_OUT_DIR"); env && *env) return env;
    if (!config.output_dir.empty()) return config.output_dir;
    return "out/" + config.name;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal continuity and conservation law solver on finite "
                 "weighted graphs"};
    app.set_version_flag("--version", graphncl::version_string);

    auto* run_cmd = app.add_subcommand("run", "Solve a scenario and verify it");
    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    int substeps = 0;
    std::optional<std::uint64_t> seed;
    run_cmd->add_option("config", config_path, "Run configuration JSON file");
    run_cmd->add_option("--preset", preset_name, "Built-in scenario name");
    run_cmd->add_option("--out", out_dir, "Output directory");
    run_cmd->add_option("--substeps", substeps, "Override substeps per window");
    run_cmd->add_option("--seed", seed, "Override the preset's generation seed");
    run_cmd->require_option(1, 0);

    auto* presets_cmd = app.add_subcommand("presets", "List built-in scenarios");

    CLI11_PARSE(app, argc, argv);

    if (presets_cmd->parsed()) {
        for (const auto& name : graphncl::preset_names()) std::cout << name << "\n";
        return 0;
    }
    if (!run_cmd->parsed()) {
        std::cerr << app.help();
        return 2;
    }

    graphncl::RunConfig config;
    try {
        if (!preset_name.empty()) {
            config = graphncl::preset(preset_name, seed);
        } else if (!config_path.empty()) {
            config = graphncl::load_run_config_file(config_path);
            if (seed) config.seed = seed;
        } else {
            std::cerr << "error: provide a config file or --preset NAME\n";
            return 2;
        }
        if (substeps > 0) config.solver.substeps_per_window = substeps;
        config.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (config.graph.edge_count() == 0)
        std::cerr << "warning: the graph has no edges; the dynamics are constant\n";

    const graphncl::RunResult result =
        graphncl::run(config, resolve_output_dir(out_dir, config));
    if (!result.message.empty()) std::cerr << "error: " << result.message << "\n";
    if (result.exit_code == graphncl::run_ok)
        std::cout << "ok: outputs in " << result.output_dir << "\n";
    return result.exit_code;
}
