// Seeded random scenario generators shared by the property tests and the
// acceptance suite. Everything here is deterministic in the seed.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "graphncl/graph.hpp"
#include "graphncl/interpolation.hpp"
#include "graphncl/solver.hpp"
#include "graphncl/velocity.hpp"

namespace testgen {

struct Instance {
    graphncl::Graph graph;
    graphncl::InterpolationSpec interpolation;
    graphncl::VelocitySpec velocity;
    graphncl::VertexField rho0;
    double horizon = 0.5;
};

inline graphncl::Graph random_graph(std::mt19937_64& rng, int min_n = 2,
                                    int max_n = 50) {
    std::uniform_int_distribution<int> n_dist(min_n, max_n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = n_dist(rng);

    std::vector<std::vector<double>> points(static_cast<std::size_t>(n));
    for (auto& p : points) p = {unit(rng), unit(rng)};

    std::vector<double> masses(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& m : masses) {
        m = 0.5 + unit(rng);
        total += m;
    }
    for (auto& m : masses) m /= total;  // unit total mass

    graphncl::EtaSpec eta;
    switch (static_cast<int>(3.0 * unit(rng))) {
        case 0: eta = graphncl::EtaSpec::gaussian_spec(0.4 + 0.6 * unit(rng)); break;
        case 1: eta = graphncl::EtaSpec::constant_spec(0.5 + unit(rng)); break;
        default: eta = graphncl::EtaSpec::indicator_spec(0.4 + 0.4 * unit(rng)); break;
    }
    return graphncl::build_graph(points, masses, eta, 0.0);
}

inline graphncl::VertexField random_nonnegative_density(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> unif(0.2, 1.2);
    graphncl::VertexField rho(static_cast<std::size_t>(n));
    for (auto& r : rho.values) r = unif(rng);
    return rho;
}

inline graphncl::VelocitySpec random_static_velocity(std::mt19937_64& rng,
                                                     const graphncl::Graph& g,
                                                     double amplitude = 1.0) {
    std::uniform_real_distribution<double> unif(-amplitude, amplitude);
    graphncl::EdgeField v(static_cast<std::size_t>(g.edge_count()));
    for (auto& x : v.forward) x = unif(rng);
    v.set_antisymmetric_from_forward();
    return graphncl::VelocitySpec::static_velocity(std::move(v));
}

inline graphncl::VelocitySpec random_nl2ie_velocity(std::mt19937_64& rng,
                                                    const graphncl::Graph& g) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    graphncl::KernelSpec kernel = unit(rng) < 0.5 ? graphncl::KernelSpec::quadratic()
                                                  : graphncl::KernelSpec::gaussian();
    graphncl::PotentialSpec P = graphncl::PotentialSpec::zero();
    if (unit(rng) < 0.5) {
        std::vector<double> values(static_cast<std::size_t>(g.vertex_count()));
        for (auto& p : values) p = 0.5 * (unit(rng) - 0.5);
        P = graphncl::PotentialSpec::table_potential(std::move(values));
    }
    return graphncl::VelocitySpec::nl2ie_velocity(std::move(kernel), std::move(P));
}

inline graphncl::InterpolationSpec interpolation_by_index(int k) {
    using graphncl::InterpolationSpec;
    switch (k % 4) {
        case 0: return InterpolationSpec::upwind();
        case 1: return InterpolationSpec::arithmetic_mean();
        case 2: return InterpolationSpec::min_mean();
        default: return InterpolationSpec::max_mean();
    }
}

/// Mixed-interpolation instance family (mass / TV bound checks).
inline Instance random_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Instance inst;
    inst.graph = random_graph(rng);
    inst.interpolation = interpolation_by_index(static_cast<int>(rng() % 4));
    inst.velocity = unit(rng) < 0.5
                        ? random_static_velocity(rng, inst.graph, 2.0)
                        : random_nl2ie_velocity(rng, inst.graph);
    inst.rho0 = random_nonnegative_density(rng, inst.graph.vertex_count());
    inst.horizon = 0.5 + 0.7 * unit(rng);
    return inst;
}

/// Upwind-only instance family with nonnegative data (positivity checks).
inline Instance random_upwind_instance(std::uint64_t seed) {
    Instance inst = random_instance(seed);
    inst.interpolation = graphncl::InterpolationSpec::upwind();
    return inst;
}

/// Fixed-size instance family for the oracle cross-check.
inline Instance random_oracle_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Instance inst;
    inst.graph = random_graph(rng, 20, 20);
    inst.interpolation = graphncl::InterpolationSpec::upwind();
    inst.velocity = graphncl::VelocitySpec::nl2ie_velocity(
        graphncl::KernelSpec::quadratic());
    inst.rho0 = random_nonnegative_density(rng, inst.graph.vertex_count());
    inst.horizon = 1.0;
    return inst;
}

/// Zero-mass perturbation direction with unit TV norm.
inline graphncl::VertexField random_zero_mass_direction(std::mt19937_64& rng,
                                                        const graphncl::Graph& g) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int n = g.vertex_count();
    graphncl::VertexField e(static_cast<std::size_t>(n));
    for (auto& x : e.values) x = unif(rng);
    const double mass = graphncl::field_mass(g, e);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= mass / g.total_mass();
    const double tv = graphncl::tv_norm(g, e);
    if (tv > 0.0)
        for (auto& x : e.values) x /= tv;
    return e;
}

}  // namespace testgen
