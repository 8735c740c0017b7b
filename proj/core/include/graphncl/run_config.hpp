#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "graphncl/diagnostics.hpp"
#include "graphncl/graph.hpp"
#include "graphncl/interpolation.hpp"
#include "graphncl/solver.hpp"
#include "graphncl/velocity.hpp"

namespace graphncl {

/// Which diagnostics can fail a run (exit code 4). Positivity defaults to
/// hard only under the upwind interpolation, where nonnegativity is a
/// structural guarantee rather than an observation.
struct HardChecks {
    bool mass = true;
    bool tv_bound = true;
    std::optional<bool> positivity;  // unset => hard iff upwind
    bool isolated = true;
    bool lp = false;

    bool positivity_hard(InterpolationKind kind) const {
        return positivity.value_or(kind == InterpolationKind::upwind);
    }
};

/// Fully resolved run description: graph, interpolation, velocity, initial
/// density, solver parameters and diagnostics request.
struct RunConfig {
    std::string name;  // preset name or config file stem
    Graph graph;
    InterpolationSpec interpolation;
    VelocitySpec velocity;
    VertexField initial_density;
    SolverConfig solver;
    DiagnosticsRequest diagnostics;
    HardChecks hard_checks;
    std::string output_dir;          // empty => caller decides
    std::optional<std::uint64_t> seed;  // for seeded preset generation

    void validate() const;

    /// Canonical JSON of every semantic field (everything that influences
    /// the computed trajectory; output_dir excluded).
    std::string semantic_json() const;

    /// FNV-1a hash of semantic_json(), as a fixed-width hex string.
    std::string config_hash() const;
};

/// Parses a config JSON document. Accepts graph sources "inline" / "file" /
/// "preset", inline initial densities, interpolation and velocity specs by
/// kind name, solver and diagnostics blocks. Throws std::invalid_argument
/// with a descriptive message on malformed input.
RunConfig parse_run_config(const std::string& json_text,
                           const std::string& base_dir = ".");

RunConfig load_run_config_file(const std::string& path);

}  // namespace graphncl
