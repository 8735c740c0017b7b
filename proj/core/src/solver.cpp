#include "graphncl/solver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "graphncl/errors.hpp"

namespace graphncl {

void SolverConfig::validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("solver: horizon must be positive");
    if (!(window_safety > 0.0) || !(window_safety < 1.0))
        throw std::invalid_argument("solver: window_safety must lie in (0, 1)");
    if (substeps_per_window < 2)
        throw std::invalid_argument("solver: substeps_per_window must be >= 2");
    if (!(picard_tolerance > 0.0))
        throw std::invalid_argument("solver: picard_tolerance must be positive");
    if (picard_max_iterations < 1)
        throw std::invalid_argument("solver: picard_max_iterations must be >= 1");
}

VertexField rhs(const Graph& g, const InterpolationSpec& interp,
                const VelocitySpec& vel, double t, const VertexField& rho) {
    const EdgeField v = eval_velocity(vel, t, g, rho);
    const EdgeField flux = assemble_flux(g, interp, rho, v);
    VertexField out = nonlocal_divergence(g, flux);
    for (double& x : out.values) x = -x;
    return out;
}

std::vector<VertexField> apply_solution_map(const Graph& g,
                                            const InterpolationSpec& interp,
                                            const VelocitySpec& vel,
                                            const std::vector<double>& window_times,
                                            const std::vector<VertexField>& curve,
                                            const VertexField& anchor) {
    const std::size_t nodes = window_times.size();
    if (nodes < 2 || curve.size() != nodes)
        throw std::invalid_argument("apply_solution_map: curve/grid size mismatch");
    const std::size_t n = anchor.size();

    std::vector<VertexField> out(nodes);
    out[0] = anchor;

    VertexField integral(n, 0.0);
    VertexField f_prev = rhs(g, interp, vel, window_times[0], curve[0]);
    for (std::size_t k = 1; k < nodes; ++k) {
        VertexField f_k = rhs(g, interp, vel, window_times[k], curve[k]);
        const double h = window_times[k] - window_times[k - 1];
        VertexField next(n);
        for (std::size_t i = 0; i < n; ++i) {
            integral[i] += 0.5 * h * (f_prev[i] + f_k[i]);
            const double value = anchor[i] + integral[i];
            if (!std::isfinite(value))
                throw numerical_error("apply_solution_map: non-finite state",
                                      window_times[k]);
            next[i] = value;
        }
        out[k] = std::move(next);
        f_prev = std::move(f_k);
    }
    return out;
}

std::pair<std::vector<VertexField>, WindowStats> picard_solve_window(
    const Graph& g, const InterpolationSpec& interp, const VelocitySpec& vel,
    const std::vector<double>& window_times, const VertexField& anchor,
    const SolverConfig& config, int window_index) {
    // Initial iterate: the constant-in-time anchor curve.
    std::vector<VertexField> curve(window_times.size(), anchor);
    WindowStats stats;

    for (int it = 1; it <= config.picard_max_iterations; ++it) {
        std::vector<VertexField> next =
            apply_solution_map(g, interp, vel, window_times, curve, anchor);
        double dist = 0.0;
        for (std::size_t k = 0; k < curve.size(); ++k)
            dist = std::max(dist, tv_distance(g, next[k], curve[k]));
        stats.iterations = it;
        stats.distances.push_back(dist);
        curve = std::move(next);
        if (dist <= config.picard_tolerance)
            return {std::move(curve), std::move(stats)};
    }
    throw convergence_error(
        "picard_solve_window: no convergence within " +
            std::to_string(config.picard_max_iterations) + " iterations (window " +
            std::to_string(window_index) + ")",
        window_index, stats.distances);
}

namespace {

void append_node(Trajectory& traj, const Graph& g, const VelocitySpec& vel,
                 double t, const VertexField& snapshot) {
    const FieldStats stats = field_stats(g, snapshot);
    const EdgeField v = eval_velocity(vel, t, g, snapshot);
    traj.times.push_back(t);
    traj.snapshots.push_back(snapshot);
    traj.mass.push_back(stats.mass);
    traj.tv.push_back(stats.tv_norm);
    traj.min_value.push_back(stats.min_value);
    traj.velocity_row_sup.push_back(max_weighted_row_sum(g, v));
}

// The modulation sup in C_V wants a declared time grid before the solver's
// own grid exists; a fixed dense grid on [0, T] serves as the bootstrap.
std::vector<double> modulation_grid(double horizon) {
    constexpr int kNodes = 4096;
    std::vector<double> grid(kNodes + 1);
    for (int k = 0; k <= kNodes; ++k)
        grid[static_cast<std::size_t>(k)] = horizon * k / kNodes;
    return grid;
}

}  // namespace

Trajectory solve_ncl(const Graph& g, const InterpolationSpec& interp,
                     const VelocitySpec& vel, const VertexField& rho0,
                     const SolverConfig& config) {
    config.validate();
    interp.validate();
    vel.validate(g);
    if (rho0.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument("solve_ncl: initial density size mismatch");
    for (double r : rho0.values)
        if (!std::isfinite(r))
            throw std::invalid_argument("solve_ncl: non-finite initial density");

    const double T = config.horizon;
    const double tv0 = tv_norm(g, rho0);
    const std::vector<double> c_grid = modulation_grid(T);

    // TV envelope bootstrap: first pass at M0 = TV(rho0), then one Gronwall
    // inflation. For signed data the TV norm is only bounded, not conserved,
    // so the provable upper envelope is the honest class bound.
    const double m0 = std::max(tv0, 1e-300);
    ConstantsReport constants = compute_constants(g, vel, m0, c_grid);
    const double envelope =
        tv0 * std::exp(interp.lipschitz_constant * constants.C_V * T);
    const double M = std::max(envelope, 1e-300);
    constants = compute_constants(g, vel, M, c_grid);

    const double alpha =
        interp.lipschitz_constant * (M * constants.L_V + constants.C_V);
    if (!std::isfinite(alpha))
        throw std::invalid_argument("solve_ncl: contraction rate is not finite");

    double tau = T;
    int window_count = 1;
    if (alpha > 0.0) {
        tau = std::min(T, config.window_safety / alpha);
        const double count = std::ceil(T / tau);
        if (count > 1e6)
            throw std::invalid_argument(
                "solve_ncl: window count exceeds 1e6; increase window_safety or "
                "reduce the horizon");
        window_count = static_cast<int>(count);
    }

    const int S = config.substeps_per_window;
    const long total_steps = static_cast<long>(window_count) * S;

    Trajectory traj;
    traj.constants = constants;
    traj.contraction = {alpha, T / window_count, window_count, M};
    traj.times.reserve(static_cast<std::size_t>(total_steps) + 1);

    append_node(traj, g, vel, 0.0, rho0);

    VertexField anchor = rho0;
    for (int w = 0; w < window_count; ++w) {
        std::vector<double> window_times(static_cast<std::size_t>(S) + 1);
        for (int l = 0; l <= S; ++l) {
            const long idx = static_cast<long>(w) * S + l;
            window_times[static_cast<std::size_t>(l)] =
                T * static_cast<double>(idx) / static_cast<double>(total_steps);
        }
        auto [curve, stats] = picard_solve_window(g, interp, vel, window_times,
                                                  anchor, config, w);
        for (int l = 1; l <= S; ++l)
            append_node(traj, g, vel, window_times[static_cast<std::size_t>(l)],
                        curve[static_cast<std::size_t>(l)]);
        anchor = curve.back();
        traj.windows.push_back(std::move(stats));
    }
    return traj;
}

Trajectory explicit_solve(const Graph& g, const InterpolationSpec& interp,
                          const VelocitySpec& vel, const VertexField& rho0,
                          double horizon, double dt) {
    interp.validate();
    vel.validate(g);
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("explicit_solve: horizon must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("explicit_solve: dt must be positive");
    if (rho0.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument("explicit_solve: initial density size mismatch");

    const long steps = std::max(1L, std::lround(horizon / dt));
    const double h = horizon / static_cast<double>(steps);
    const std::size_t n = rho0.size();

    Trajectory traj;
    traj.contraction = {0.0, horizon, 1, tv_norm(g, rho0)};
    append_node(traj, g, vel, 0.0, rho0);

    VertexField y = rho0;
    for (long k = 0; k < steps; ++k) {
        const double t = horizon * static_cast<double>(k) / static_cast<double>(steps);
        const VertexField k1 = rhs(g, interp, vel, t, y);
        VertexField stage(n);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * h * k1[i];
        const VertexField k2 = rhs(g, interp, vel, t + 0.5 * h, stage);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * h * k2[i];
        const VertexField k3 = rhs(g, interp, vel, t + 0.5 * h, stage);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + h * k3[i];
        const VertexField k4 = rhs(g, interp, vel, t + h, stage);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(y[i]))
                throw numerical_error("explicit_solve: non-finite state", t + h);
        }
        const double t_next =
            horizon * static_cast<double>(k + 1) / static_cast<double>(steps);
        append_node(traj, g, vel, t_next, y);
    }
    return traj;
}

double measure_contraction(const Graph& g, const InterpolationSpec& interp,
                           const VelocitySpec& vel,
                           const std::vector<double>& window_times,
                           const std::vector<VertexField>& rho_curve,
                           const std::vector<VertexField>& sigma_curve) {
    if (rho_curve.size() != window_times.size() ||
        sigma_curve.size() != window_times.size())
        throw std::invalid_argument("measure_contraction: curves must live on the grid");
    if (window_times.size() < 2)
        throw std::invalid_argument("measure_contraction: degenerate window");

    double d_in = 0.0;
    for (std::size_t k = 0; k < window_times.size(); ++k)
        d_in = std::max(d_in, tv_distance(g, rho_curve[k], sigma_curve[k]));
    if (d_in == 0.0)
        throw std::domain_error("measure_contraction: curves coincide, ratio undefined");

    // The anchor cancels in S(rho) - S(sigma); any common one works.
    const VertexField& anchor = rho_curve[0];
    const auto s_rho =
        apply_solution_map(g, interp, vel, window_times, rho_curve, anchor);
    const auto s_sigma =
        apply_solution_map(g, interp, vel, window_times, sigma_curve, anchor);

    double d_out = 0.0;
    for (std::size_t k = 0; k < window_times.size(); ++k)
        d_out = std::max(d_out, tv_distance(g, s_rho[k], s_sigma[k]));
    return d_out / d_in;
}

VertexField sample_trajectory(const Trajectory& traj, double t) {
    if (traj.times.empty())
        throw std::invalid_argument("sample_trajectory: empty trajectory");
    const auto& ts = traj.times;
    if (t < ts.front() - 1e-12 || t > ts.back() + 1e-12)
        throw std::invalid_argument("sample_trajectory: time outside the grid");
    t = std::clamp(t, ts.front(), ts.back());

    const auto upper = std::upper_bound(ts.begin(), ts.end(), t);
    if (upper == ts.begin()) return traj.snapshots.front();
    if (upper == ts.end()) return traj.snapshots.back();
    const std::size_t hi = static_cast<std::size_t>(upper - ts.begin());
    const std::size_t lo = hi - 1;
    if (ts[hi] == ts[lo]) return traj.snapshots[lo];

    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    VertexField out(traj.snapshots[lo].size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (1.0 - w) * traj.snapshots[lo][i] + w * traj.snapshots[hi][i];
    return out;
}

namespace {

// Shortest round-trip decimal for a 64-bit float.
std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string Trajectory::to_csv() const {
    const std::size_t n = snapshots.empty() ? 0 : snapshots.front().size();
    std::string out = "t";
    for (std::size_t i = 0; i < n; ++i) out += ",r_" + std::to_string(i);
    out += "\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        out += format_double(times[k]);
        for (std::size_t i = 0; i < n; ++i) {
            out += ',';
            out += format_double(snapshots[k][i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace graphncl
