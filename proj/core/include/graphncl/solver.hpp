#pragma once

#include <vector>

#include "graphncl/calculus.hpp"
#include "graphncl/interpolation.hpp"
#include "graphncl/velocity.hpp"

namespace graphncl {

struct SolverConfig {
    double horizon = 1.0;            // final time T
    double window_safety = 0.5;      // theta in (0,1); window length theta/alpha
    int substeps_per_window = 64;    // quadrature grid per window, >= 2
    double picard_tolerance = 1e-10; // sup-over-grid TV stopping distance
    int picard_max_iterations = 50;

    void validate() const;
};

/// Contraction data of a solve: alpha = L_Phi * (M * L_V + C_V), the window
/// length tau = min(T, theta/alpha) (tau = T when alpha == 0), and the mass
/// bound M the constants were computed for.
struct ContractionInfo {
    double alpha = 0.0;
    double window_length = 0.0;
    int window_count = 1;
    double mass_bound = 0.0;  // Gronwall-inflated TV envelope
};

struct WindowStats {
    int iterations = 0;
    std::vector<double> distances;  // sup-over-grid TV distance per iteration
};

/// Time grid, density snapshots, per-node diagnostics and solver metadata of
/// one run. The grid is strictly increasing from 0 to T and snapshots align
/// with it one-to-one.
struct Trajectory {
    std::vector<double> times;
    std::vector<VertexField> snapshots;

    // per-node diagnostics
    std::vector<double> mass;
    std::vector<double> tv;
    std::vector<double> min_value;
    std::vector<double> velocity_row_sup;  // max_i sum_j |v_ij| eta_ij m_j

    // solver metadata (empty for the explicit oracle)
    ContractionInfo contraction;
    ConstantsReport constants;
    std::vector<WindowStats> windows;

    std::string to_csv() const;
};

/// Right-hand side of the density ODE in density form:
///   dr_i/dt = -div( F^Phi[rho, v(t, rho)] )_i.
VertexField rhs(const Graph& g, const InterpolationSpec& interp,
                const VelocitySpec& vel, double t, const VertexField& rho);

/// One application of the window solution map: for each node t_k of
/// `window_times`, the anchor minus the integrated flux divergence along
/// `curve` (i.e. anchor plus the integral of rhs over [t_0, t_k]), the
/// integral by composite trapezoid on the sub-grid.
std::vector<VertexField> apply_solution_map(const Graph& g,
                                            const InterpolationSpec& interp,
                                            const VelocitySpec& vel,
                                            const std::vector<double>& window_times,
                                            const std::vector<VertexField>& curve,
                                            const VertexField& anchor);

/// Fixed-point iteration of the solution map on one window, starting from
/// the constant-in-time anchor curve, until the sup-over-grid TV distance of
/// consecutive iterates drops below config.picard_tolerance. Throws
/// convergence_error when picard_max_iterations is exceeded.
std::pair<std::vector<VertexField>, WindowStats> picard_solve_window(
    const Graph& g, const InterpolationSpec& interp, const VelocitySpec& vel,
    const std::vector<double>& window_times, const VertexField& anchor,
    const SolverConfig& config, int window_index = 0);

/// Solves the conservation law on [0, T] by chaining contracting windows:
/// computes the TV envelope M, the constants (C_V, L_V), alpha and the window
/// length, then runs picard_solve_window per window with each window's
/// terminal snapshot as the next anchor.
Trajectory solve_ncl(const Graph& g, const InterpolationSpec& interp,
                     const VelocitySpec& vel, const VertexField& rho0,
                     const SolverConfig& config);

/// Independent classical RK4 integrator over the same right-hand side, with
/// fixed step size (dt is rounded so that an integer number of steps lands
/// exactly on T). Used as a cross-validation oracle.
Trajectory explicit_solve(const Graph& g, const InterpolationSpec& interp,
                          const VelocitySpec& vel, const VertexField& rho0,
                          double horizon, double dt);

/// Ratio d(S(rho), S(sigma)) / d(rho, sigma) of the window solution map,
/// where d is the sup-over-grid TV distance. Both curves must live on
/// `window_times`. Throws std::domain_error when d(rho, sigma) == 0.
double measure_contraction(const Graph& g, const InterpolationSpec& interp,
                           const VelocitySpec& vel,
                           const std::vector<double>& window_times,
                           const std::vector<VertexField>& rho_curve,
                           const std::vector<VertexField>& sigma_curve);

/// Snapshot at time t by linear interpolation between adjacent grid nodes
/// (exact at the nodes). t must lie within the trajectory's time range.
VertexField sample_trajectory(const Trajectory& traj, double t);

}  // namespace graphncl
