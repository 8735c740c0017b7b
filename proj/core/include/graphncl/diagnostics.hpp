#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphncl/solver.hpp"

namespace graphncl {

struct DiagnosticsTolerances {
    double mass_rel = 1e-9;          // relative mass drift
    double positivity_floor = -1e-12;
    double gronwall_rel = 1e-6;      // relative slack on the TV bound
    double isolated_drift = 1e-14;
};

/// User-declared discrete stand-ins for the L^p stability estimate: a bound
/// on the density of the vertex masses with respect to Lebesgue (e.g. m_i/h
/// on a spacing-h lattice) and the translational velocity bound constant.
struct LpConstants {
    double p = 2.0;
    double density_bound = 1.0;
    double cv_p = 0.0;
};

struct DiagnosticsRequest {
    std::vector<double> p_list = {2.0};
    DiagnosticsTolerances tolerances;
    std::optional<LpConstants> lp;
};

enum class PositivityVerdict { guaranteed, observational, not_applicable };

struct PositivityCheck {
    double min_density = 0.0;
    PositivityVerdict verdict = PositivityVerdict::observational;
};

struct LpMonitorResult {
    double p = 2.0;
    double sup_lp = 0.0;       // sup over the grid of ||rho_t||_p^p
    double bound_value = 0.0;  // (||rho_0||_p^p + Cv~ T) exp(T/q)
    bool satisfied = true;
};

/// Post-hoc verification report over a computed trajectory. Pure and
/// idempotent: identical inputs give a bit-identical report.
struct DiagnosticsReport {
    double mass_residual = 0.0;     // max over grid, relative
    bool mass_ok = true;

    double tv_bound_margin = 0.0;   // min over grid of bound - observed
    bool tv_bound_ok = true;

    double min_density = 0.0;
    PositivityVerdict positivity_verdict = PositivityVerdict::not_applicable;
    bool positivity_ok = true;

    std::map<double, std::vector<double>> lp_series;  // p -> ||rho_t||_p per node

    std::optional<LpMonitorResult> lp_bound;
    bool lp_ok = true;

    std::vector<double> contraction_samples;  // Picard distance ratios
    bool contraction_ok = true;

    double isolated_vertex_drift = 0.0;
    bool isolated_ok = true;

    std::string to_json_string(int indent = -1) const;
};

/// Fills every report field from the trajectory: mass drift, the
/// TV bound TV(rho_t) <= TV(rho_0) * exp(L_Phi * int_0^t rowsup ds) with the
/// integral by trapezoid on the trajectory grid, minimum density, L^p series,
/// the optional L^p bound monitor, Picard contraction ratio samples and
/// isolated-vertex drift. Throws std::invalid_argument when the trajectory
/// does not match the graph.
DiagnosticsReport verify_trajectory(const Trajectory& traj, const Graph& g,
                                    const InterpolationSpec& interp,
                                    const ConstantsReport& constants,
                                    const DiagnosticsRequest& request);

/// Minimum density over the whole trajectory, with verdict "guaranteed" only
/// under the upwind interpolation (where nonnegativity is structural) and
/// "observational" otherwise. Requires a nonnegative initial snapshot.
PositivityCheck check_positivity(const Trajectory& traj,
                                 const InterpolationSpec& interp);

/// Monitors sup_t ||rho_t||_{L^p(mass)}^p against
///   (||rho_0||_p^p + Cv~ T) * exp(T/q),   Cv~ = (cv_p/p) (p M density_bound)^p,
/// with q = p/(p-1) and M the TV norm of the initial snapshot. This reports
/// an empirical check with user-declared constants; it asserts no theorem.
/// Requires p in (1, inf).
LpMonitorResult lp_monitor(const Trajectory& traj, const Graph& g, double p,
                           double density_bound, double cv_p);

std::string positivity_verdict_name(PositivityVerdict verdict);

}  // namespace graphncl
