#include "graphncl/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace graphncl {

namespace {

void require_vertex_size(const Graph& g, const VertexField& f, const char* who) {
    if (f.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument(std::string(who) + ": vertex field size mismatch");
}

void require_edge_size(const Graph& g, const EdgeField& f, const char* who) {
    if (f.forward.size() != static_cast<std::size_t>(g.edge_count()) ||
        f.backward.size() != static_cast<std::size_t>(g.edge_count()))
        throw std::invalid_argument(std::string(who) + ": edge field size mismatch");
}

}  // namespace

EdgeField nonlocal_gradient(const Graph& g, const VertexField& phi) {
    require_vertex_size(g, phi, "nonlocal_gradient");
    EdgeField out(static_cast<std::size_t>(g.edge_count()));
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double lo = phi[static_cast<std::size_t>(edges[e].i)];
        const double hi = phi[static_cast<std::size_t>(edges[e].j)];
        out.forward[e] = hi - lo;
        out.backward[e] = lo - hi;  // exact negation in IEEE arithmetic
    }
    out.antisymmetric = true;
    return out;
}

VertexField nonlocal_divergence(const Graph& g, const EdgeField& J) {
    require_edge_size(g, J, "nonlocal_divergence");
    const int n = g.vertex_count();
    VertexField out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (const auto& nb : g.neighbors(i)) {  // ascending neighbor order
            const double out_value = J.directed(static_cast<std::size_t>(nb.pair), nb.lower);
            const double in_value = J.directed(static_cast<std::size_t>(nb.pair), !nb.lower);
            acc += 0.5 * (out_value - in_value) * nb.weight *
                   g.mass(nb.vertex);
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

FieldStats field_stats(const Graph& g, const VertexField& rho,
                       const std::vector<double>& p_list) {
    require_vertex_size(g, rho, "field_stats");
    for (double p : p_list)
        if (!(p >= 1.0))
            throw std::invalid_argument("field_stats: p must be >= 1");

    FieldStats s;
    s.min_value = rho.size() ? rho[0] : 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double m = g.mass(static_cast<int>(i));
        s.mass += m * rho[i];
        s.tv_norm += m * std::abs(rho[i]);
        s.min_value = std::min(s.min_value, rho[i]);
    }
    for (double p : p_list) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i)
            acc += g.mass(static_cast<int>(i)) * std::pow(std::abs(rho[i]), p);
        s.lp_norms[p] = std::pow(acc, 1.0 / p);
    }
    return s;
}

double field_mass(const Graph& g, const VertexField& rho) {
    require_vertex_size(g, rho, "field_mass");
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        acc += g.mass(static_cast<int>(i)) * rho[i];
    return acc;
}

double tv_norm(const Graph& g, const VertexField& rho) {
    require_vertex_size(g, rho, "tv_norm");
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        acc += g.mass(static_cast<int>(i)) * std::abs(rho[i]);
    return acc;
}

double tv_distance(const Graph& g, const VertexField& a, const VertexField& b) {
    require_vertex_size(g, a, "tv_distance");
    require_vertex_size(g, b, "tv_distance");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += g.mass(static_cast<int>(i)) * std::abs(a[i] - b[i]);
    return acc;
}

double max_weighted_row_sum(const Graph& g, const EdgeField& v) {
    require_edge_size(g, v, "max_weighted_row_sum");
    double best = 0.0;
    for (int i = 0; i < g.vertex_count(); ++i) {
        double row = 0.0;
        for (const auto& nb : g.neighbors(i))
            row += std::abs(v.directed(static_cast<std::size_t>(nb.pair), nb.lower)) *
                   nb.weight * g.mass(nb.vertex);
        best = std::max(best, row);
    }
    return best;
}

}  // namespace graphncl
