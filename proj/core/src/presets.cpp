#include "graphncl/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace graphncl {

namespace {

Graph two_node_graph() {
    return build_graph({{0.0}, {1.0}}, {0.5, 0.5}, EtaSpec::constant_spec(1.0), 0.0);
}

// Static unit flow along the single edge of the two-node graph.
VelocitySpec two_node_flow() {
    EdgeField v(1);
    v.forward[0] = 1.0;
    v.set_antisymmetric_from_forward();
    return VelocitySpec::static_velocity(std::move(v));
}

RunConfig two_node_upwind() {
    RunConfig cfg;
    cfg.name = "two_node_upwind";
    cfg.graph = two_node_graph();
    cfg.interpolation = InterpolationSpec::upwind();
    cfg.velocity = two_node_flow();
    cfg.initial_density = VertexField{2.0, 0.0};
    cfg.solver.horizon = 1.0;
    // Four contracting windows instead of one: the trapezoid collocation is
    // second order, and the tighter grid keeps the terminal error well below
    // the closed-form regression tolerance at 64 substeps.
    cfg.solver.window_safety = 0.125;
    cfg.solver.substeps_per_window = 64;
    cfg.diagnostics.p_list = {2.0};
    return cfg;
}

RunConfig two_node_arithmetic_T5() {
    RunConfig cfg;
    cfg.name = "two_node_arithmetic_T5";
    cfg.graph = two_node_graph();
    cfg.interpolation = InterpolationSpec::arithmetic_mean();
    cfg.velocity = two_node_flow();
    cfg.initial_density = VertexField{2.0, 0.0};
    cfg.solver.horizon = 5.0;
    cfg.diagnostics.p_list = {2.0};
    // The mean interpolation has no positivity guarantee; this scenario is
    // configured to treat the (expected) violation as a hard failure.
    cfg.hard_checks.positivity = true;
    return cfg;
}

RunConfig ring16_upwind_lattice() {
    const int n = 16;
    std::vector<std::vector<double>> points(n);
    std::vector<double> masses(n, 1.0 / n);
    for (int i = 0; i < n; ++i) points[i] = {static_cast<double>(i) / n};

    // Periodic nearest-neighbor weights; the wrap edge {0, 15} is what the
    // explicit table is for.
    std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        const int next = (i + 1) % n;
        table[i][next] = 1.0;
        table[next][i] = 1.0;
    }

    RunConfig cfg;
    cfg.name = "ring16_upwind_lattice";
    cfg.graph = build_graph(points, masses, EtaSpec::table_spec(table, points), 0.0);
    cfg.interpolation = InterpolationSpec::upwind();

    // Constant flow around the ring: v_{i -> i+1} = 1 on every lattice edge.
    EdgeField v(static_cast<std::size_t>(cfg.graph.edge_count()));
    for (std::size_t e = 0; e < v.pair_count(); ++e) {
        const auto& pair = cfg.graph.edges()[e];
        const bool wrap = pair.i == 0 && pair.j == n - 1;
        v.forward[e] = wrap ? -1.0 : 1.0;  // wrap edge flows 15 -> 0
    }
    v.set_antisymmetric_from_forward();
    cfg.velocity = VelocitySpec::static_velocity(std::move(v));

    cfg.initial_density = VertexField(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        cfg.initial_density[static_cast<std::size_t>(i)] =
            1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * i / n);

    cfg.solver.horizon = 1.0;
    cfg.diagnostics.p_list = {2.0};
    // Lattice stand-ins for the L^2 stability monitor on spacing h = 1/16:
    // density_bound = m_i / h and cv_p = T * max_i sum_j ((v_ij)_- eta_ij)^p h.
    cfg.diagnostics.lp = LpConstants{2.0, 1.0, 1.0 / 16.0};
    return cfg;
}

RunConfig nl2ie_cloud50(std::uint64_t seed) {
    const int n = 50;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> points(n);
    for (int i = 0; i < n; ++i) points[i] = {unit(rng), unit(rng)};
    std::vector<double> masses(n, 1.0 / n);

    RunConfig cfg;
    cfg.name = "nl2ie_cloud50";
    cfg.seed = seed;
    cfg.graph = build_graph(points, masses, EtaSpec::gaussian_spec(0.5), 0.0);
    cfg.interpolation = InterpolationSpec::upwind();
    cfg.velocity = VelocitySpec::nl2ie_velocity(KernelSpec::quadratic());
    cfg.initial_density = VertexField(static_cast<std::size_t>(n), 1.0);
    cfg.solver.horizon = 0.5;
    cfg.diagnostics.p_list = {2.0};
    return cfg;
}

RunConfig stationary_nl2ie_2node() {
    RunConfig cfg;
    cfg.name = "stationary_nl2ie_2node";
    cfg.graph = two_node_graph();
    cfg.interpolation = InterpolationSpec::upwind();
    cfg.velocity = VelocitySpec::nl2ie_velocity(KernelSpec::quadratic());
    cfg.initial_density = VertexField{2.0, 0.0};
    cfg.solver.horizon = 1.0;
    cfg.diagnostics.p_list = {2.0};
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"two_node_upwind", "two_node_arithmetic_T5", "ring16_upwind_lattice",
            "nl2ie_cloud50", "stationary_nl2ie_2node"};
}

RunConfig preset(const std::string& name, std::optional<std::uint64_t> seed_override) {
    if (name == "two_node_upwind") return two_node_upwind();
    if (name == "two_node_arithmetic_T5") return two_node_arithmetic_T5();
    if (name == "ring16_upwind_lattice") return ring16_upwind_lattice();
    if (name == "nl2ie_cloud50") return nl2ie_cloud50(seed_override.value_or(50));
    if (name == "stationary_nl2ie_2node") return stationary_nl2ie_2node();

    std::string known;
    for (const auto& p : preset_names()) {
        if (!known.empty()) known += ", ";
        known += p;
    }
    throw std::invalid_argument("unknown preset '" + name + "'; available: " + known);
}

}  // namespace graphncl
