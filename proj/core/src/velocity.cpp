#include "graphncl/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphncl/calculus.hpp"
#include "graphncl/errors.hpp"

namespace graphncl {

KernelSpec KernelSpec::quadratic() { return {KernelKind::quadratic, 0.0, {}, nullptr}; }
KernelSpec KernelSpec::gaussian() { return {KernelKind::gaussian, 0.0, {}, nullptr}; }
KernelSpec KernelSpec::constant(double c) { return {KernelKind::constant, c, {}, nullptr}; }
KernelSpec KernelSpec::table_kernel(std::vector<std::vector<double>> values) {
    return {KernelKind::table, 0.0, std::move(values), nullptr};
}
KernelSpec KernelSpec::custom(
    std::function<double(std::span<const double>, std::span<const double>)> fn) {
    return {KernelKind::custom, 0.0, {}, std::move(fn)};
}

PotentialSpec PotentialSpec::zero() { return {PotentialKind::zero, {}, nullptr}; }
PotentialSpec PotentialSpec::table_potential(std::vector<double> values) {
    return {PotentialKind::table, std::move(values), nullptr};
}
PotentialSpec PotentialSpec::quadratic() { return {PotentialKind::quadratic, {}, nullptr}; }
PotentialSpec PotentialSpec::custom(std::function<double(std::span<const double>)> fn) {
    return {PotentialKind::custom, {}, std::move(fn)};
}

VelocitySpec VelocitySpec::static_velocity(EdgeField field) {
    VelocitySpec s;
    s.kind = VelocityKind::static_field;
    s.static_field = std::move(field);
    return s;
}
VelocitySpec VelocitySpec::potential_velocity(PotentialSpec P) {
    VelocitySpec s;
    s.kind = VelocityKind::potential;
    s.potential = std::move(P);
    return s;
}
VelocitySpec VelocitySpec::nl2ie_velocity(KernelSpec K, PotentialSpec P) {
    VelocitySpec s;
    s.kind = VelocityKind::nl2ie;
    s.kernel = std::move(K);
    s.potential = std::move(P);
    return s;
}

double VelocitySpec::modulation(double t) const {
    return time_modulation ? time_modulation(t) : 1.0;
}

void VelocitySpec::validate(const Graph& g) const {
    const auto pairs = static_cast<std::size_t>(g.edge_count());
    const auto n = static_cast<std::size_t>(g.vertex_count());
    switch (kind) {
        case VelocityKind::static_field:
            if (static_field.forward.size() != pairs ||
                static_field.backward.size() != pairs)
                throw std::invalid_argument("velocity: static field size mismatch");
            if (!static_field.antisymmetric)
                throw std::invalid_argument("velocity: static field must be antisymmetric");
            for (std::size_t e = 0; e < pairs; ++e)
                if (!std::isfinite(static_field.forward[e]))
                    throw std::invalid_argument("velocity: non-finite static value");
            break;
        case VelocityKind::potential:
        case VelocityKind::nl2ie:
            if (potential.kind == PotentialKind::table && potential.values.size() != n)
                throw std::invalid_argument("velocity: potential table size mismatch");
            if (potential.kind == PotentialKind::custom && !potential.fn)
                throw std::invalid_argument("velocity: custom potential needs a handle");
            if (kind == VelocityKind::nl2ie) {
                if (kernel.kind == KernelKind::table &&
                    (kernel.table.size() != n ||
                     std::any_of(kernel.table.begin(), kernel.table.end(),
                                 [n](const auto& row) { return row.size() != n; })))
                    throw std::invalid_argument("velocity: kernel table size mismatch");
                if (kernel.kind == KernelKind::custom && !kernel.fn)
                    throw std::invalid_argument("velocity: custom kernel needs a handle");
            }
            break;
    }
}

namespace {

double eval_kernel(const KernelSpec& kernel, const Graph& g, int i, int j) {
    switch (kernel.kind) {
        case KernelKind::quadratic: {
            double s = 0.0;
            const auto x = g.point(i);
            const auto z = g.point(j);
            for (std::size_t k = 0; k < x.size(); ++k) {
                const double d = x[k] - z[k];
                s += d * d;
            }
            return s;
        }
        case KernelKind::gaussian: {
            double s = 0.0;
            const auto x = g.point(i);
            const auto z = g.point(j);
            for (std::size_t k = 0; k < x.size(); ++k) {
                const double d = x[k] - z[k];
                s += d * d;
            }
            return std::exp(-s);
        }
        case KernelKind::constant:
            return kernel.value;
        case KernelKind::table:
            return kernel.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        case KernelKind::custom:
            return kernel.fn(g.point(i), g.point(j));
    }
    return 0.0;
}

double eval_potential(const PotentialSpec& P, const Graph& g, int i) {
    switch (P.kind) {
        case PotentialKind::zero:
            return 0.0;
        case PotentialKind::table:
            return P.values[static_cast<std::size_t>(i)];
        case PotentialKind::quadratic: {
            double s = 0.0;
            for (double c : g.point(i)) s += c * c;
            return s;
        }
        case PotentialKind::custom:
            return P.fn(g.point(i));
    }
    return 0.0;
}

EdgeField scaled_antisymmetric(const EdgeField& v, double c) {
    EdgeField out(v.pair_count());
    for (std::size_t e = 0; e < v.pair_count(); ++e) out.forward[e] = v.forward[e] * c;
    out.set_antisymmetric_from_forward();
    return out;
}

}  // namespace

VertexField convolve_kernel(const Graph& g, const KernelSpec& kernel,
                            const VertexField& rho) {
    if (rho.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument("convolve_kernel: density size mismatch");
    const int n = g.vertex_count();
    VertexField out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {  // includes j == i, ascending order
            const double value = eval_kernel(kernel, g, i, j);
            if (!std::isfinite(value))
                throw numerical_error("convolve_kernel: non-finite kernel value");
            acc += value * g.mass(j) * rho[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

EdgeField eval_velocity(const VelocitySpec& spec, double t, const Graph& g,
                        const VertexField& rho) {
    spec.validate(g);
    const double c = spec.modulation(t);
    if (!std::isfinite(c))
        throw numerical_error("eval_velocity: non-finite time modulation", t);
    switch (spec.kind) {
        case VelocityKind::static_field:
            return scaled_antisymmetric(spec.static_field, c);
        case VelocityKind::potential: {
            VertexField P(static_cast<std::size_t>(g.vertex_count()));
            for (int i = 0; i < g.vertex_count(); ++i)
                P[static_cast<std::size_t>(i)] = eval_potential(spec.potential, g, i);
            return scaled_antisymmetric(nonlocal_gradient(g, P), -c);
        }
        case VelocityKind::nl2ie: {
            // -grad(K * rho + P), scaled by c(t)
            VertexField u = convolve_kernel(g, spec.kernel, rho);
            for (int i = 0; i < g.vertex_count(); ++i)
                u[static_cast<std::size_t>(i)] += eval_potential(spec.potential, g, i);
            return scaled_antisymmetric(nonlocal_gradient(g, u), -c);
        }
    }
    return EdgeField{};
}

ConstantsReport compute_constants(const Graph& g, const VelocitySpec& spec,
                                  double M, const std::vector<double>& time_grid) {
    if (!(M > 0.0) || !std::isfinite(M))
        throw std::invalid_argument("compute_constants: M must be positive");
    spec.validate(g);
    const int n = g.vertex_count();

    ConstantsReport report;
    report.M = M;
    report.row_sums.assign(static_cast<std::size_t>(n), 0.0);

    if (spec.kind == VelocityKind::nl2ie) {
        // Exact finite-graph constants by enumeration over the cloud.
        std::vector<double> P(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            P[static_cast<std::size_t>(i)] = eval_potential(spec.potential, g, i);

        double sup_c = 0.0;
        if (spec.time_modulation) {
            for (double t : time_grid) {
                const double c = spec.time_modulation(t);
                if (!std::isfinite(c))
                    throw std::invalid_argument(
                        "compute_constants: non-finite time modulation on the grid");
                sup_c = std::max(sup_c, std::abs(c));
            }
            if (time_grid.empty()) sup_c = 1.0;
        } else {
            sup_c = 1.0;
        }

        double C_V = 0.0;
        double L_V = 0.0;
        for (int i = 0; i < n; ++i) {
            double row_c = 0.0;
            double row_l = 0.0;
            for (const auto& nb : g.neighbors(i)) {
                const int j = nb.vertex;
                double delta = 0.0;  // max_z |K(x_j, x_z) - K(x_i, x_z)|
                for (int z = 0; z < n; ++z) {
                    const double kj = eval_kernel(spec.kernel, g, j, z);
                    const double ki = eval_kernel(spec.kernel, g, i, z);
                    if (!std::isfinite(kj) || !std::isfinite(ki))
                        throw numerical_error("compute_constants: non-finite kernel value");
                    delta = std::max(delta, std::abs(kj - ki));
                }
                const double dP = std::abs(P[static_cast<std::size_t>(j)] -
                                           P[static_cast<std::size_t>(i)]);
                row_c += (M * delta + dP) * nb.weight * g.mass(j);
                row_l += delta * nb.weight * g.mass(j);
            }
            report.row_sums[static_cast<std::size_t>(i)] = sup_c * row_c;
            C_V = std::max(C_V, row_c);
            L_V = std::max(L_V, row_l);
        }
        report.C_V = sup_c * C_V;
        report.L_V = sup_c * L_V;
        return report;
    }

    // Static and potential fields do not depend on the state: L_V = 0 and
    // C_V is the modulation sup times the largest weighted row sum.
    EdgeField v;
    if (spec.kind == VelocityKind::static_field) {
        v = spec.static_field;
    } else {
        VertexField P(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            P[static_cast<std::size_t>(i)] = eval_potential(spec.potential, g, i);
        v = nonlocal_gradient(g, P);  // sign is irrelevant for row sums
    }

    double sup_c = 1.0;
    if (spec.time_modulation) {
        sup_c = 0.0;
        for (double t : time_grid) {
            const double c = spec.time_modulation(t);
            if (!std::isfinite(c))
                throw std::invalid_argument(
                    "compute_constants: non-finite time modulation on the grid");
            sup_c = std::max(sup_c, std::abs(c));
        }
        if (time_grid.empty()) sup_c = 1.0;
    }

    double C_V = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (const auto& nb : g.neighbors(i))
            row += std::abs(v.directed(static_cast<std::size_t>(nb.pair), nb.lower)) *
                   nb.weight * g.mass(nb.vertex);
        report.row_sums[static_cast<std::size_t>(i)] = sup_c * row;
        C_V = std::max(C_V, row);
    }
    report.C_V = sup_c * C_V;
    report.L_V = 0.0;
    return report;
}

std::string velocity_kind_name(VelocityKind kind) {
    switch (kind) {
        case VelocityKind::static_field: return "static";
        case VelocityKind::potential: return "potential";
        case VelocityKind::nl2ie: return "nl2ie";
    }
    return "unknown";
}

}  // namespace graphncl
