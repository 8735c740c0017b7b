#include <benchmark/benchmark.h>

#include <random>

#include "graphncl/solver.hpp"

using namespace graphncl;

namespace {

Graph seeded_cloud(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> points(static_cast<std::size_t>(n));
    for (auto& p : points) p = {unit(rng), unit(rng)};
    std::vector<double> masses(static_cast<std::size_t>(n), 1.0 / n);
    return build_graph(points, masses, EtaSpec::gaussian_spec(0.5), 1e-4);
}

VertexField ramp_density(int n) {
    VertexField rho(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        rho[static_cast<std::size_t>(i)] = 0.5 + static_cast<double>(i) / n;
    return rho;
}

}  // namespace

static void BM_nonlocal_divergence(benchmark::State& state) {
    const Graph g = seeded_cloud(static_cast<int>(state.range(0)), 1);
    EdgeField J(static_cast<std::size_t>(g.edge_count()), 0.25);
    J.set_antisymmetric_from_forward();
    for (auto _ : state) {
        benchmark::DoNotOptimize(nonlocal_divergence(g, J));
    }
    state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_nonlocal_divergence)->Arg(64)->Arg(256);

static void BM_assemble_flux_upwind(benchmark::State& state) {
    const Graph g = seeded_cloud(static_cast<int>(state.range(0)), 2);
    const VertexField rho = ramp_density(g.vertex_count());
    EdgeField v(static_cast<std::size_t>(g.edge_count()), 0.7);
    v.set_antisymmetric_from_forward();
    const InterpolationSpec spec = InterpolationSpec::upwind();
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_flux(g, spec, rho, v));
    }
    state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_assemble_flux_upwind)->Arg(64)->Arg(256);

static void BM_rhs_nl2ie(benchmark::State& state) {
    const Graph g = seeded_cloud(static_cast<int>(state.range(0)), 3);
    const VertexField rho = ramp_density(g.vertex_count());
    const auto vel = VelocitySpec::nl2ie_velocity(KernelSpec::quadratic());
    const InterpolationSpec spec = InterpolationSpec::upwind();
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhs(g, spec, vel, 0.0, rho));
    }
}
BENCHMARK(BM_rhs_nl2ie)->Arg(32)->Arg(128);

static void BM_picard_window(benchmark::State& state) {
    const Graph g = seeded_cloud(64, 4);
    const VertexField rho = ramp_density(g.vertex_count());
    const auto vel = VelocitySpec::nl2ie_velocity(KernelSpec::quadratic());
    const InterpolationSpec spec = InterpolationSpec::upwind();
    SolverConfig config;
    std::vector<double> times(65);
    for (int k = 0; k <= 64; ++k) times[static_cast<std::size_t>(k)] = 0.25 * k / 64;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            picard_solve_window(g, spec, vel, times, rho, config));
    }
}
BENCHMARK(BM_picard_window);

static void BM_solve_ncl_cloud(benchmark::State& state) {
    const Graph g = seeded_cloud(48, 5);
    const VertexField rho = ramp_density(g.vertex_count());
    const auto vel = VelocitySpec::nl2ie_velocity(KernelSpec::quadratic());
    SolverConfig config;
    config.horizon = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            solve_ncl(g, InterpolationSpec::upwind(), vel, rho, config));
    }
}
BENCHMARK(BM_solve_ncl_cloud);

BENCHMARK_MAIN();
