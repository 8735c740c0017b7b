#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphncl/run_config.hpp"

namespace graphncl {

/// Built-in, fully specified scenarios:
///
///   two_node_upwind         two vertices, unit constant weight, static unit
///                           velocity, closed-form exponential decay
///   two_node_arithmetic_T5  same graph under the arithmetic mean, run long
///                           enough that the density crosses zero
///   ring16_upwind_lattice   periodic 16-vertex lattice with a constant ring
///                           flow and an L^2 stability monitor
///   nl2ie_cloud50           50-point seeded uniform cloud in the unit
///                           square, Gaussian weights, quadratic interaction
///   stationary_nl2ie_2node  two-vertex interaction setup whose right-hand
///                           side vanishes identically
std::vector<std::string> preset_names();

/// Builds the named preset. `seed_override` replaces the preset's fixed seed
/// where one is used (nl2ie_cloud50). Throws std::invalid_argument for
/// unknown names, listing the available presets.
RunConfig preset(const std::string& name,
                 std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace graphncl
