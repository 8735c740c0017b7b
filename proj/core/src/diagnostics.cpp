#include "graphncl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace graphncl {

using nlohmann::json;

namespace {

void require_match(const Trajectory& traj, const Graph& g) {
    if (traj.times.empty() || traj.snapshots.size() != traj.times.size())
        throw std::invalid_argument("diagnostics: malformed trajectory");
    for (const auto& snap : traj.snapshots)
        if (snap.size() != static_cast<std::size_t>(g.vertex_count()))
            throw std::invalid_argument(
                "diagnostics: trajectory does not match the graph");
}

double lp_power_sum(const Graph& g, const VertexField& r, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        acc += g.mass(static_cast<int>(i)) * std::pow(std::abs(r[i]), p);
    return acc;
}

}  // namespace

PositivityCheck check_positivity(const Trajectory& traj,
                                 const InterpolationSpec& interp) {
    if (traj.snapshots.empty())
        throw std::invalid_argument("check_positivity: empty trajectory");
    for (double r : traj.snapshots.front().values)
        if (r < 0.0)
            throw std::invalid_argument(
                "check_positivity: initial snapshot has negative entries");

    PositivityCheck check;
    check.verdict = interp.kind == InterpolationKind::upwind
                        ? PositivityVerdict::guaranteed
                        : PositivityVerdict::observational;
    check.min_density = traj.snapshots.front().values.empty()
                            ? 0.0
                            : traj.snapshots.front().values.front();
    for (const auto& snap : traj.snapshots)
        for (double r : snap.values) check.min_density = std::min(check.min_density, r);
    return check;
}

LpMonitorResult lp_monitor(const Trajectory& traj, const Graph& g, double p,
                           double density_bound, double cv_p) {
    require_match(traj, g);
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("lp_monitor: p must lie in (1, inf)");
    if (!(density_bound > 0.0))
        throw std::invalid_argument("lp_monitor: density_bound must be positive");
    if (cv_p < 0.0)
        throw std::invalid_argument("lp_monitor: cv_p must be nonnegative");

    LpMonitorResult result;
    result.p = p;
    for (const auto& snap : traj.snapshots)
        result.sup_lp = std::max(result.sup_lp, lp_power_sum(g, snap, p));

    const double T = traj.times.back();
    const double q = p / (p - 1.0);
    const double M = tv_norm(g, traj.snapshots.front());
    const double c_tilde = cv_p / p * std::pow(p * M * density_bound, p);
    const double initial = lp_power_sum(g, traj.snapshots.front(), p);
    result.bound_value = (initial + c_tilde * T) * std::exp(T / q);
    result.satisfied = result.sup_lp <= result.bound_value;
    return result;
}

DiagnosticsReport verify_trajectory(const Trajectory& traj, const Graph& g,
                                    const InterpolationSpec& interp,
                                    const ConstantsReport& constants,
                                    const DiagnosticsRequest& request) {
    require_match(traj, g);
    const DiagnosticsTolerances& tol = request.tolerances;
    const std::size_t nodes = traj.times.size();

    DiagnosticsReport report;

    // Mass drift, relative to the initial scale (mass or TV, whichever is
    // larger, so signed data with vanishing mass still gets a usable scale).
    const double mass0 = field_mass(g, traj.snapshots.front());
    const double tv0 = tv_norm(g, traj.snapshots.front());
    const double mass_scale = std::max({std::abs(mass0), tv0, 1e-300});
    for (std::size_t k = 0; k < nodes; ++k) {
        const double drift =
            std::abs(field_mass(g, traj.snapshots[k]) - mass0) / mass_scale;
        report.mass_residual = std::max(report.mass_residual, drift);
    }
    report.mass_ok = report.mass_residual <= tol.mass_rel;

    // TV bound: TV(rho_t) <= TV(rho_0) exp(L_Phi int_0^t rowsup ds), the
    // integral by trapezoid on the trajectory grid.
    {
        const bool have_rowsup = traj.velocity_row_sup.size() == nodes;
        double integral = 0.0;
        report.tv_bound_margin = std::numeric_limits<double>::infinity();
        report.tv_bound_ok = true;
        for (std::size_t k = 0; k < nodes; ++k) {
            if (k > 0 && have_rowsup) {
                const double h = traj.times[k] - traj.times[k - 1];
                integral += 0.5 * h *
                            (traj.velocity_row_sup[k - 1] + traj.velocity_row_sup[k]);
            }
            const double bound =
                tv0 * std::exp(interp.lipschitz_constant * integral);
            const double observed = tv_norm(g, traj.snapshots[k]);
            report.tv_bound_margin = std::min(report.tv_bound_margin, bound - observed);
            if (observed > bound * (1.0 + tol.gronwall_rel)) report.tv_bound_ok = false;
        }
    }

    // Minimum density and the positivity verdict.
    report.min_density = traj.snapshots.front().values.empty()
                             ? 0.0
                             : traj.snapshots.front().values.front();
    for (const auto& snap : traj.snapshots)
        for (double r : snap.values) report.min_density = std::min(report.min_density, r);
    const bool nonnegative_data =
        std::all_of(traj.snapshots.front().values.begin(),
                    traj.snapshots.front().values.end(),
                    [](double r) { return r >= 0.0; });
    if (!nonnegative_data) {
        report.positivity_verdict = PositivityVerdict::not_applicable;
        report.positivity_ok = true;
    } else {
        report.positivity_verdict = interp.kind == InterpolationKind::upwind
                                        ? PositivityVerdict::guaranteed
                                        : PositivityVerdict::observational;
        report.positivity_ok = report.min_density >= tol.positivity_floor;
    }

    // L^p series and the optional stability monitor.
    for (double p : request.p_list) {
        if (!(p >= 1.0))
            throw std::invalid_argument("diagnostics: p_list entries must be >= 1");
        std::vector<double> series(nodes);
        for (std::size_t k = 0; k < nodes; ++k)
            series[k] = std::pow(lp_power_sum(g, traj.snapshots[k], p), 1.0 / p);
        report.lp_series[p] = std::move(series);
    }
    if (request.lp.has_value()) {
        report.lp_bound =
            lp_monitor(traj, g, request.lp->p, request.lp->density_bound,
                       request.lp->cv_p);
        report.lp_ok = report.lp_bound->satisfied;
    }

    // Picard contraction samples: consecutive residual ratios per window,
    // skipping pairs already at the noise floor.
    {
        const int windows = std::max<int>(1, traj.contraction.window_count);
        const int substeps = static_cast<int>((nodes - 1) / static_cast<std::size_t>(windows));
        const double quad_budget =
            substeps > 0 ? 10.0 / (static_cast<double>(substeps) * substeps) : 0.0;
        const double alpha = interp.lipschitz_constant *
                             (constants.M * constants.L_V + constants.C_V);
        const double expected = alpha * traj.contraction.window_length + quad_budget;
        for (const auto& w : traj.windows) {
            for (std::size_t k = 0; k + 1 < w.distances.size(); ++k) {
                if (w.distances[k] <= 1e-12) continue;
                const double ratio = w.distances[k + 1] / w.distances[k];
                report.contraction_samples.push_back(ratio);
                if (ratio > expected + 1e-9) report.contraction_ok = false;
            }
        }
    }

    // Isolated vertices must keep their density.
    {
        for (int i = 0; i < g.vertex_count(); ++i) {
            if (!g.neighbors(i).empty()) continue;
            const double r0 = traj.snapshots.front()[static_cast<std::size_t>(i)];
            for (const auto& snap : traj.snapshots)
                report.isolated_vertex_drift =
                    std::max(report.isolated_vertex_drift,
                             std::abs(snap[static_cast<std::size_t>(i)] - r0));
        }
        report.isolated_ok = report.isolated_vertex_drift <= tol.isolated_drift;
    }

    return report;
}

std::string positivity_verdict_name(PositivityVerdict verdict) {
    switch (verdict) {
        case PositivityVerdict::guaranteed: return "guaranteed";
        case PositivityVerdict::observational: return "observational";
        case PositivityVerdict::not_applicable: return "not_applicable";
    }
    return "unknown";
}

std::string DiagnosticsReport::to_json_string(int indent) const {
    json j;
    j["mass"] = {{"residual", mass_residual}, {"ok", mass_ok}};
    j["tv_bound"] = {{"margin", tv_bound_margin}, {"ok", tv_bound_ok}};
    j["positivity"] = {{"min_density", min_density},
                       {"verdict", positivity_verdict_name(positivity_verdict)},
                       {"ok", positivity_ok}};
    json series = json::object();
    for (const auto& [p, values] : lp_series) {
        char key[32];
        std::snprintf(key, sizeof(key), "%g", p);
        series[key] = values;
    }
    j["lp"] = {{"series", series}, {"ok", lp_ok}};
    if (lp_bound.has_value()) {
        j["lp"]["bound_check"] = {{"p", lp_bound->p},
                                  {"sup_lp", lp_bound->sup_lp},
                                  {"bound", lp_bound->bound_value},
                                  {"satisfied", lp_bound->satisfied}};
    }
    j["contraction"] = {{"samples", contraction_samples}, {"ok", contraction_ok}};
    j["isolated_vertices"] = {{"drift", isolated_vertex_drift}, {"ok", isolated_ok}};
    return j.dump(indent);
}

}  // namespace graphncl
