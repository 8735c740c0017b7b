#include <doctest.h>

#include <cmath>
#include <random>

#include "graphncl/errors.hpp"
#include "graphncl/presets.hpp"
#include "graphncl/solver.hpp"
#include "test_instances.hpp"

using namespace graphncl;

namespace {

Graph two_node() {
    return build_graph({{0.0}, {1.0}}, {0.5, 0.5}, EtaSpec::constant_spec(1.0), 0.0);
}

VelocitySpec unit_flow() {
    EdgeField v(1);
    v.forward[0] = 1.0;
    v.set_antisymmetric_from_forward();
    return VelocitySpec::static_velocity(std::move(v));
}

VelocitySpec zero_flow(const Graph& g) {
    EdgeField v(static_cast<std::size_t>(g.edge_count()));
    v.set_antisymmetric_from_forward();
    return VelocitySpec::static_velocity(std::move(v));
}

std::vector<double> uniform_times(double t0, double t1, int substeps) {
    std::vector<double> ts(static_cast<std::size_t>(substeps) + 1);
    for (int k = 0; k <= substeps; ++k)
        ts[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / substeps;
    return ts;
}

}  // namespace

TEST_CASE("rhs: hand values") {
    const Graph g = two_node();
    const auto upwind = InterpolationSpec::upwind();

    const VertexField f = rhs(g, upwind, unit_flow(), 0.0, VertexField{2.0, 0.0});
    CHECK(f[0] == -1.0);
    CHECK(f[1] == 1.0);

    const VertexField f0 = rhs(g, upwind, zero_flow(g), 0.0, VertexField{2.0, 0.0});
    CHECK(f0[0] == 0.0);
    CHECK(f0[1] == 0.0);

    // Interaction velocity pushes against the upwind direction exactly: the
    // composed right-hand side vanishes and the state is stationary.
    const auto nl2ie = VelocitySpec::nl2ie_velocity(KernelSpec::quadratic());
    const VertexField fs = rhs(g, upwind, nl2ie, 0.0, VertexField{2.0, 0.0});
    CHECK(fs[0] == 0.0);
    CHECK(fs[1] == 0.0);
}

TEST_CASE("apply_solution_map: fixed point and first Picard iterate") {
    const Graph g = two_node();
    const auto upwind = InterpolationSpec::upwind();
    const VertexField anchor{2.0, 0.0};
    const auto times = uniform_times(0.0, 0.5, 16);
    const std::vector<VertexField> constant_curve(times.size(), anchor);

    // Zero velocity: the constant anchor curve is the fixed point.
    const auto fixed =
        apply_solution_map(g, upwind, zero_flow(g), times, constant_curve, anchor);
    for (const auto& snap : fixed) {
        CHECK(snap[0] == 2.0);
        CHECK(snap[1] == 0.0);
    }

    // Constant integrand: the trapezoid rule is exact, so the first iterate
    // is anchor + t * rhs(anchor) = (2 - t, t).
    const auto first =
        apply_solution_map(g, upwind, unit_flow(), times, constant_curve, anchor);
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(first[k][0] == doctest::Approx(2.0 - times[k]).epsilon(1e-14));
        CHECK(first[k][1] == doctest::Approx(times[k]).epsilon(1e-14));
        const double mass = field_mass(g, first[k]);
        CHECK(std::abs(mass - 1.0) <= 1e-14);
    }
}

TEST_CASE("picard_solve_window: trivial and closed-form windows") {
    const Graph g = two_node();
    const auto upwind = InterpolationSpec::upwind();
    SolverConfig config;

    // Zero velocity converges in one application.
    {
        const auto times = uniform_times(0.0, 1.0, 8);
        const auto [curve, stats] = picard_solve_window(
            g, upwind, zero_flow(g), times, VertexField{2.0, 0.0}, config);
        CHECK(stats.iterations == 1);
        CHECK(stats.distances.back() == 0.0);
        CHECK(curve.back()[0] == 2.0);
    }

    // Zero anchor is a fixed point of any flux.
    {
        const auto times = uniform_times(0.0, 1.0, 8);
        const auto [curve, stats] = picard_solve_window(
            g, upwind, unit_flow(), times, VertexField{0.0, 0.0}, config);
        CHECK(stats.iterations == 1);
        CHECK(curve.back()[0] == 0.0);
    }

    // Window [0, 0.5] at 64 substeps against r_0(t) = 2 exp(-t/2): the
    // trapezoid collocation error at this grid is a few 1e-7.
    {
        const auto times = uniform_times(0.0, 0.5, 64);
        const auto [curve, stats] = picard_solve_window(
            g, upwind, unit_flow(), times, VertexField{2.0, 0.0}, config);
        const double exact = 2.0 * std::exp(-0.25);
        CHECK(std::abs(curve.back()[0] - exact) <= 1e-6);
        CHECK(std::abs(curve.back()[1] - (2.0 - exact)) <= 1e-6);

        // Geometric residual decay with ratio <= alpha * T_w + quadrature slack.
        const double alpha = 0.5;
        const double budget = alpha * 0.5 + 10.0 / (64.0 * 64.0);
        for (std::size_t k = 0; k + 1 < stats.distances.size(); ++k) {
            if (stats.distances[k] <= 1e-12) continue;
            CHECK(stats.distances[k + 1] / stats.distances[k] <= budget);
            CHECK(stats.distances[k + 1] < stats.distances[k]);
        }
    }
}

TEST_CASE("picard_solve_window: iteration cap raises convergence_error") {
    const Graph g = two_node();
    SolverConfig config;
    config.picard_max_iterations = 1;
    const auto times = uniform_times(0.0, 0.5, 8);
    CHECK_THROWS_AS(picard_solve_window(g, InterpolationSpec::upwind(), unit_flow(),
                                        times, VertexField{2.0, 0.0}, config),
                    convergence_error);
    try {
        picard_solve_window(g, InterpolationSpec::upwind(), unit_flow(), times,
                            VertexField{2.0, 0.0}, config);
    } catch (const convergence_error& e) {
        CHECK(e.distances().size() == 1);
        CHECK(e.distances()[0] > config.picard_tolerance);
    }
}

TEST_CASE("solve_ncl: closed-form exponential at T = 1") {
    const RunConfig cfg = preset("two_node_upwind");
    const Trajectory traj = solve_ncl(cfg.graph, cfg.interpolation, cfg.velocity,
                                      cfg.initial_density, cfg.solver);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == 1.0);
    const double exact = 2.0 * std::exp(-0.5);
    CHECK(std::abs(traj.snapshots.back()[0] - exact) <= 1e-6);
    CHECK(traj.contraction.alpha == doctest::Approx(0.5).epsilon(1e-12));
    for (std::size_t k = 1; k < traj.times.size(); ++k)
        CHECK(traj.times[k] > traj.times[k - 1]);
}

TEST_CASE("solve_ncl: arithmetic mean runs linearly and crosses zero at t = 4") {
    const Graph g = two_node();
    SolverConfig config;
    config.horizon = 5.0;
    const Trajectory traj = solve_ncl(g, InterpolationSpec::arithmetic_mean(),
                                      unit_flow(), VertexField{2.0, 0.0}, config);
    // dr_0/dt = -(r_0 + r_1)/4 with r_0 + r_1 constant: r_0(t) = 2 - t/2,
    // exactly representable by the trapezoid scheme.
    const VertexField at1 = sample_trajectory(traj, 1.0);
    CHECK(at1[0] == doctest::Approx(1.5).epsilon(1e-12));
    const VertexField at4 = sample_trajectory(traj, 4.0);
    CHECK(std::abs(at4[0]) <= 1e-12);
    CHECK(traj.snapshots.back()[0] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("solve_ncl: zero initial density stays zero") {
    const Graph g = two_node();
    SolverConfig config;
    const Trajectory traj = solve_ncl(g, InterpolationSpec::upwind(), unit_flow(),
                                      VertexField{0.0, 0.0}, config);
    for (const auto& snap : traj.snapshots) {
        CHECK(snap[0] == 0.0);
        CHECK(snap[1] == 0.0);
    }
    for (const auto& w : traj.windows) CHECK(w.iterations == 1);
}

TEST_CASE("solve_ncl: validation and window-cap errors") {
    const Graph g = two_node();
    SolverConfig config;
    CHECK_THROWS_AS(solve_ncl(g, InterpolationSpec::upwind(), unit_flow(),
                              VertexField{std::nan(""), 0.0}, config),
                    std::invalid_argument);
    config.window_safety = 1e-7;  // forces > 1e6 windows at alpha = 1/2
    CHECK_THROWS_AS(solve_ncl(g, InterpolationSpec::upwind(), unit_flow(),
                              VertexField{2.0, 0.0}, config),
                    std::invalid_argument);
}

TEST_CASE("solve_ncl: zero velocity solves in a single window") {
    const Graph g = two_node();
    SolverConfig config;
    const Trajectory traj = solve_ncl(g, InterpolationSpec::upwind(), zero_flow(g),
                                      VertexField{1.0, 1.0}, config);
    CHECK(traj.contraction.alpha == 0.0);
    CHECK(traj.contraction.window_count == 1);
    CHECK(traj.windows.size() == 1);
    CHECK(traj.windows[0].iterations == 1);
}

TEST_CASE("explicit_solve: constant under zero velocity, closed form under flow") {
    const Graph g = two_node();
    const Trajectory constant = explicit_solve(g, InterpolationSpec::upwind(),
                                               zero_flow(g), VertexField{1.0, 3.0},
                                               1.0, 0.01);
    for (const auto& snap : constant.snapshots) {
        CHECK(snap[0] == 1.0);
        CHECK(snap[1] == 3.0);
    }

    const Trajectory traj = explicit_solve(g, InterpolationSpec::upwind(),
                                           unit_flow(), VertexField{2.0, 0.0},
                                           1.0, 1e-3);
    const double exact = 2.0 * std::exp(-0.5);
    CHECK(traj.times.back() == 1.0);
    CHECK(std::abs(traj.snapshots.back()[0] - exact) <= 1e-10);

    CHECK_THROWS_AS(explicit_solve(g, InterpolationSpec::upwind(), unit_flow(),
                                   VertexField{2.0, 0.0}, 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("measure_contraction: error paths and zero-velocity ratio") {
    const Graph g = two_node();
    const auto times = uniform_times(0.0, 0.5, 16);
    const std::vector<VertexField> curve(times.size(), VertexField{2.0, 0.0});

    CHECK_THROWS_AS(measure_contraction(g, InterpolationSpec::upwind(), unit_flow(),
                                        times, curve, curve),
                    std::domain_error);

    std::vector<VertexField> other(times.size(), VertexField{1.5, 0.5});
    const double ratio = measure_contraction(g, InterpolationSpec::upwind(),
                                             zero_flow(g), times, curve, other);
    CHECK(ratio == 0.0);
}

TEST_CASE("measure_contraction: perturbation pairs obey the window bound") {
    const Graph g = two_node();
    const double alpha = 0.5;  // L_Phi * C_V for the unit flow
    const auto times = uniform_times(0.0, 0.5, 64);
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int trial = 0; trial < 25; ++trial) {
        std::vector<VertexField> rho_curve(times.size(), VertexField{2.0, 0.0});
        std::vector<VertexField> sigma_curve = rho_curve;
        const VertexField dir = testgen::random_zero_mass_direction(rng, g);
        const double amp = 0.02 + 0.05 * unit(rng);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double wobble = 0.5 + 0.5 * std::cos(3.0 * times[k] + trial);
            for (std::size_t i = 0; i < 2; ++i)
                sigma_curve[k][i] += amp * wobble * dir[i];
        }
        const double ratio = measure_contraction(g, InterpolationSpec::upwind(),
                                                 unit_flow(), times, rho_curve,
                                                 sigma_curve);
        CHECK(ratio <= alpha * 0.5 + 1e-3);
    }
}

TEST_CASE("solve_ncl: isolated vertex keeps its density exactly") {
    const Graph g = build_graph({{0.0}, {1.0}, {10.0}}, {1.0 / 3, 1.0 / 3, 1.0 / 3},
                                EtaSpec::indicator_spec(1.5), 0.0);
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.neighbors(2).empty());
    EdgeField v(1);
    v.forward[0] = 1.0;
    v.set_antisymmetric_from_forward();
    SolverConfig config;
    const Trajectory traj =
        solve_ncl(g, InterpolationSpec::upwind(), VelocitySpec::static_velocity(v),
                  VertexField{1.5, 0.3, 0.7}, config);
    for (const auto& snap : traj.snapshots) CHECK(snap[2] == 0.7);
}

TEST_CASE("solve_ncl: mass preserved and TV bounded on a random instance") {
    const testgen::Instance inst = testgen::random_instance(99);
    SolverConfig config;
    config.horizon = inst.horizon;
    const Trajectory traj = solve_ncl(inst.graph, inst.interpolation, inst.velocity,
                                      inst.rho0, config);
    const double mass0 = traj.mass.front();
    double integral = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        CHECK(std::abs(traj.mass[k] - mass0) <= 1e-9 * std::abs(mass0));
        if (k > 0)
            integral += 0.5 * (traj.times[k] - traj.times[k - 1]) *
                        (traj.velocity_row_sup[k - 1] + traj.velocity_row_sup[k]);
        const double bound = traj.tv.front() *
                             std::exp(inst.interpolation.lipschitz_constant * integral);
        CHECK(traj.tv[k] <= bound * (1.0 + 1e-6));
    }
}

TEST_CASE("quadrature order: terminal error shrinks ~4x under substep doubling") {
    RunConfig cfg = preset("two_node_upwind");
    const Trajectory oracle = explicit_solve(cfg.graph, cfg.interpolation,
                                             cfg.velocity, cfg.initial_density,
                                             cfg.solver.horizon, 1e-4);
    double err_prev = 0.0;
    std::vector<double> errors;
    for (int substeps : {32, 64, 128}) {
        cfg.solver.substeps_per_window = substeps;
        const Trajectory traj = solve_ncl(cfg.graph, cfg.interpolation, cfg.velocity,
                                          cfg.initial_density, cfg.solver);
        errors.push_back(
            tv_distance(cfg.graph, traj.snapshots.back(), oracle.snapshots.back()));
    }
    (void)err_prev;
    CHECK(errors[0] / errors[1] >= 3.0);
    CHECK(errors[0] / errors[1] <= 5.0);
    CHECK(errors[1] / errors[2] >= 3.0);
    CHECK(errors[1] / errors[2] <= 5.0);
}

TEST_CASE("sample_trajectory: exact at nodes, linear between") {
    const Graph g = two_node();
    SolverConfig config;
    const Trajectory traj = solve_ncl(g, InterpolationSpec::upwind(), unit_flow(),
                                      VertexField{2.0, 0.0}, config);
    const VertexField exact_node = sample_trajectory(traj, traj.times[5]);
    CHECK(exact_node[0] == traj.snapshots[5][0]);
    CHECK_THROWS_AS(sample_trajectory(traj, 2.0), std::invalid_argument);
}
