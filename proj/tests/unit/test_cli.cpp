#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "graphncl/presets.hpp"
#include "graphncl/runner.hpp"

using namespace graphncl;
namespace fs = std::filesystem;

namespace {

const std::string cli = GRAPHNCL_CLI_PATH;
const fs::path tmp_root = GRAPHNCL_TEST_TMP;

int run_cli(const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = tmp_root / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("cli: preset run writes the four output files and exits 0") {
    const fs::path out = fresh_dir("preset_ok");
    CHECK(run_cli("run --preset two_node_upwind --out " + out.string()) == 0);
    for (const char* f :
         {"trajectory.csv", "metadata.json", "diagnostics.json", "manifest.json"})
        CHECK(fs::exists(out / f));
}

TEST_CASE("cli: malformed JSON exits 2") {
    const fs::path dir = fresh_dir("badjson");
    const fs::path cfg = dir / "bad.json";
    std::ofstream(cfg) << "{ not json";
    CHECK(run_cli("run " + cfg.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("cli: unknown preset exits 2 and lists the presets") {
    CHECK(run_cli("run --preset no_such_thing --out " +
                  fresh_dir("unknown").string()) == 2);
}

TEST_CASE("cli: hard positivity failure exits 4") {
    const fs::path out = fresh_dir("hardfail");
    CHECK(run_cli("run --preset two_node_arithmetic_T5 --out " + out.string()) == 4);
    CHECK(fs::exists(out / "diagnostics.json"));  // report still written
}

TEST_CASE("cli: byte-identical trajectory across repeated runs") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    REQUIRE(run_cli("run --preset nl2ie_cloud50 --out " + a.string()) == 0);
    REQUIRE(run_cli("run --preset nl2ie_cloud50 --out " + b.string()) == 0);
    CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
}

TEST_CASE("cli: seed override changes the generated scenario") {
    const fs::path a = fresh_dir("seed_a");
    const fs::path b = fresh_dir("seed_b");
    REQUIRE(run_cli("run --preset nl2ie_cloud50 --out " + a.string()) == 0);
    REQUIRE(run_cli("run --preset nl2ie_cloud50 --seed 7 --out " + b.string()) == 0);
    CHECK(slurp(a / "trajectory.csv") != slurp(b / "trajectory.csv"));
}

TEST_CASE("cli: config file with inline graph") {
    const fs::path dir = fresh_dir("inline_cfg");
    const fs::path cfg = dir / "run.json";
    std::ofstream(cfg) << R"({
      "name": "inline_two_node",
      "graph": {
        "points": [[0.0], [1.0]],
        "masses": [0.5, 0.5],
        "eta": {"kind": "constant", "value": 1.0},
        "weight_floor": 0.0
      },
      "interpolation": {"kind": "upwind"},
      "velocity": {"kind": "static", "edges": [[0, 1, 1.0]]},
      "initial_density": [2.0, 0.0],
      "solver": {"horizon": 1.0, "window_safety": 0.125, "substeps_per_window": 64},
      "diagnostics": {"p_list": [2.0]}
    })";
    const fs::path out = dir / "out";
    CHECK(run_cli("run " + cfg.string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out / "trajectory.csv");
    CHECK(csv.rfind("t,r_0,r_1\n", 0) == 0);
}

TEST_CASE("config hash: changes exactly with semantic fields") {
    RunConfig a = preset("two_node_upwind");
    RunConfig b = preset("two_node_upwind");
    CHECK(a.config_hash() == b.config_hash());

    b.output_dir = "somewhere/else";  // not semantic
    CHECK(a.config_hash() == b.config_hash());

    b = preset("two_node_upwind");
    b.solver.substeps_per_window = 128;
    CHECK(a.config_hash() != b.config_hash());

    b = preset("two_node_upwind");
    b.initial_density[1] = 0.25;
    CHECK(a.config_hash() != b.config_hash());
}

TEST_CASE("runner API: exit codes mirror the CLI") {
    const RunConfig ok = preset("two_node_upwind");
    const RunResult good = run(ok, (tmp_root / "api_ok").string());
    CHECK(good.exit_code == run_ok);
    REQUIRE(good.report.has_value());
    CHECK(good.report->mass_ok);

    const RunConfig fail = preset("two_node_arithmetic_T5");
    const RunResult bad = run(fail, (tmp_root / "api_fail").string());
    CHECK(bad.exit_code == run_diagnostics_failed);
    REQUIRE(bad.report.has_value());
    CHECK_FALSE(bad.report->positivity_ok);
}

TEST_CASE("parse_run_config: graph and density preset references resolve") {
    const RunConfig cfg = parse_run_config(R"({
      "graph": {"preset": "two_node_upwind"},
      "interpolation": {"kind": "min_mean"},
      "velocity": {"kind": "static", "edges": [[0, 1, 0.5]]},
      "initial_density": {"preset": "two_node_upwind"},
      "solver": {"horizon": 0.25}
    })");
    CHECK(cfg.graph.vertex_count() == 2);
    CHECK(cfg.interpolation.kind == InterpolationKind::min_mean);
    CHECK(cfg.initial_density[0] == 2.0);
    CHECK(cfg.velocity.static_field.forward[0] == 0.5);
}

TEST_CASE("parse_run_config: validation failures carry messages") {
    CHECK_THROWS_AS(parse_run_config("{}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config(R"({"graph": {"preset": "two_node_upwind"},
        "interpolation": {"kind": "geometric"},
        "velocity": {"kind": "static", "edges": []},
        "initial_density": [1.0, 1.0]})"),
                    std::invalid_argument);
}
