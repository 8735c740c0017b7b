#include "graphncl/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "graphncl/errors.hpp"

namespace graphncl {

InterpolationSpec InterpolationSpec::upwind() {
    return {InterpolationKind::upwind, 1.0, true, nullptr};
}
InterpolationSpec InterpolationSpec::arithmetic_mean() {
    return {InterpolationKind::arithmetic_mean, 1.0, true, nullptr};
}
InterpolationSpec InterpolationSpec::min_mean() {
    return {InterpolationKind::min_mean, 1.0, true, nullptr};
}
InterpolationSpec InterpolationSpec::max_mean() {
    return {InterpolationKind::max_mean, 1.0, true, nullptr};
}
InterpolationSpec InterpolationSpec::custom(
    std::function<double(double, double, double)> phi, double lipschitz_constant,
    bool jointly_antisymmetric) {
    InterpolationSpec s;
    s.kind = InterpolationKind::custom;
    s.lipschitz_constant = lipschitz_constant;
    s.jointly_antisymmetric = jointly_antisymmetric;
    s.custom_phi = std::move(phi);
    s.validate();
    return s;
}

void InterpolationSpec::validate() const {
    if (!(lipschitz_constant > 0.0) || !std::isfinite(lipschitz_constant))
        throw std::invalid_argument(
            "interpolation: Lipschitz constant must be finite and positive");
    if (kind == InterpolationKind::custom && !custom_phi)
        throw std::invalid_argument("interpolation: custom kind needs a handle");
}

std::string interpolation_kind_name(InterpolationKind kind) {
    switch (kind) {
        case InterpolationKind::upwind: return "upwind";
        case InterpolationKind::arithmetic_mean: return "arithmetic_mean";
        case InterpolationKind::min_mean: return "min_mean";
        case InterpolationKind::max_mean: return "max_mean";
        case InterpolationKind::custom: return "custom";
    }
    return "unknown";
}

double phi_eval(const InterpolationSpec& spec, double a, double b, double w) {
    switch (spec.kind) {
        case InterpolationKind::upwind:
            return a * std::max(w, 0.0) - b * std::max(-w, 0.0);
        case InterpolationKind::arithmetic_mean:
            return 0.5 * (a + b) * w;
        case InterpolationKind::min_mean:
            return std::min(a, b) * w;
        case InterpolationKind::max_mean:
            return std::max(a, b) * w;
        case InterpolationKind::custom: {
            const double value = spec.custom_phi(a, b, w);
            if (!std::isfinite(value))
                throw numerical_error("custom interpolation returned a non-finite value");
            return value;
        }
    }
    return 0.0;
}

EdgeField assemble_flux(const Graph& g, const InterpolationSpec& spec,
                        const VertexField& rho, const EdgeField& v) {
    if (rho.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument("assemble_flux: density size mismatch");
    if (v.forward.size() != static_cast<std::size_t>(g.edge_count()))
        throw std::invalid_argument("assemble_flux: velocity size mismatch");
    if (!v.antisymmetric)
        throw std::invalid_argument("assemble_flux: velocity must be antisymmetric");

    EdgeField J(static_cast<std::size_t>(g.edge_count()));
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double a = rho[static_cast<std::size_t>(edges[e].i)];
        const double b = rho[static_cast<std::size_t>(edges[e].j)];
        J.forward[e] = phi_eval(spec, a, b, v.forward[e]);
        J.backward[e] = phi_eval(spec, b, a, v.backward[e]);
    }
    if (spec.jointly_antisymmetric) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const double scale =
                std::max({1.0, std::abs(J.forward[e]), std::abs(J.backward[e])});
            if (std::abs(J.forward[e] + J.backward[e]) > 1e-14 * scale)
                throw numerical_error(
                    "assemble_flux: declared jointly antisymmetric interpolation "
                    "violated joint antisymmetry");
        }
        // Store the exact symmetrized form so downstream identities hold
        // bitwise.
        J.set_antisymmetric_from_forward();
    }
    return J;
}

namespace {

struct SampleTuple {
    double a, b, c, d, v, w, alpha;
};

void record_failure(AdmissibilityReport& report, bool& flag,
                    const std::string& condition, const SampleTuple& t, double lhs,
                    double rhs) {
    if (flag) {
        flag = false;
        report.counterexamples.push_back(
            {condition, t.a, t.b, t.c, t.d, t.v, t.w, t.alpha, lhs, rhs});
    }
}

}  // namespace

AdmissibilityReport check_admissibility(const InterpolationSpec& spec,
                                        int sample_count, std::uint64_t seed,
                                        double box) {
    if (sample_count < 1)
        throw std::invalid_argument("check_admissibility: sample_count must be >= 1");
    spec.validate();

    AdmissibilityReport report;
    report.sample_count = sample_count;
    report.seed = seed;
    report.box = box;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-box, box);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> log_exp(-9.0, 0.0);
    const double L = spec.lipschitz_constant;

    // Floating-point slack: the conditions are exact in real arithmetic; the
    // products here round once or twice.
    auto slack = [](double scale) { return 1e-10 * std::max(1.0, scale); };

    for (int k = 0; k < sample_count; ++k) {
        SampleTuple t{};
        t.a = unif(rng);
        t.b = unif(rng);
        t.c = unif(rng);
        t.d = unif(rng);
        t.v = unif(rng);
        t.w = unif(rng);
        t.alpha = 10.0 * unit(rng);
        if (t.alpha == 0.0) t.alpha = 1.0;

        // Stratify toward the axes: the known Lipschitz failures (geometric
        // and logarithmic means) live near a = 0 or b = 0.
        switch (k % 5) {
            case 1: {
                t.a = std::copysign(std::pow(10.0, log_exp(rng)), t.a);
                t.c = t.a + std::copysign(std::pow(10.0, log_exp(rng) - 2.0), unif(rng));
                t.d = t.b;
                break;
            }
            case 2: {
                t.a = 0.0;
                t.c = std::pow(10.0, log_exp(rng));
                t.d = t.b;
                break;
            }
            case 3: {
                t.b = std::copysign(std::pow(10.0, log_exp(rng)), t.b);
                t.d = 0.0;
                t.c = t.a;
                break;
            }
            case 4: {
                t.w = t.v + std::copysign(std::pow(10.0, log_exp(rng)), unif(rng));
                break;
            }
            default:
                break;
        }

        // (i) normalization
        {
            const double z1 = phi_eval(spec, 0.0, 0.0, t.v);
            const double z2 = phi_eval(spec, t.a, t.b, 0.0);
            if (std::abs(z1) > slack(0.0))
                record_failure(report, report.normalization_ok, "normalization", t,
                               std::abs(z1), 0.0);
            if (std::abs(z2) > slack(std::abs(t.a) + std::abs(t.b)))
                record_failure(report, report.normalization_ok, "normalization", t,
                               std::abs(z2), 0.0);
        }

        // (ii) Lipschitz in the velocity slot
        {
            const double lhs =
                std::abs(phi_eval(spec, t.a, t.b, t.w) - phi_eval(spec, t.a, t.b, t.v));
            const double rhs =
                L * (std::abs(t.a) + std::abs(t.b)) * std::abs(t.w - t.v);
            if (lhs > rhs + slack(lhs + rhs))
                record_failure(report, report.lipschitz_velocity_ok,
                               "lipschitz_velocity", t, lhs, rhs);
        }

        // (ii') Lipschitz in the density slots
        {
            const double lhs =
                std::abs(phi_eval(spec, t.a, t.b, t.v) - phi_eval(spec, t.c, t.d, t.v));
            const double rhs =
                L * (std::abs(t.a - t.c) + std::abs(t.b - t.d)) * std::abs(t.v);
            if (lhs > rhs + slack(lhs + rhs))
                record_failure(report, report.lipschitz_density_ok,
                               "lipschitz_density", t, lhs, rhs);
        }

        // (iii) positive one-homogeneity
        {
            const double lhs = phi_eval(spec, t.alpha * t.a, t.alpha * t.b, t.w);
            const double rhs = t.alpha * phi_eval(spec, t.a, t.b, t.w);
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            if (std::abs(lhs - rhs) > 1e-12 * scale)
                record_failure(report, report.homogeneity_ok, "homogeneity", t,
                               lhs, rhs);
        }

        // joint antisymmetry (detection, not an admissibility condition)
        {
            const double lhs = phi_eval(spec, t.a, t.b, -t.v);
            const double rhs = -phi_eval(spec, t.b, t.a, t.v);
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            if (std::abs(lhs - rhs) > 1e-14 * scale &&
                report.jointly_antisymmetric_observed) {
                report.jointly_antisymmetric_observed = false;
                report.counterexamples.push_back(
                    {"joint_antisymmetry", t.a, t.b, t.c, t.d, t.v, t.w, t.alpha,
                     lhs, rhs});
            }
        }
    }
    return report;
}

}  // namespace graphncl
