#pragma once

#include <map>
#include <vector>

#include "graphncl/fields.hpp"
#include "graphncl/graph.hpp"

namespace graphncl {

/// Edge function phi(y) - phi(x) on every stored pair; the result is exactly
/// antisymmetric.
EdgeField nonlocal_gradient(const Graph& g, const VertexField& phi);

/// Density (with respect to the vertex masses) of the divergence of the edge
/// measure J:
///
///   div(J)_i = 1/2 * sum_j (J_ij - J_ji) * eta_ij * m_j
///
/// summed over neighbors j in ascending order. Valid for arbitrary (not
/// necessarily antisymmetric) edge fields; for antisymmetric J it reduces to
/// sum_j J_ij eta_ij m_j bit-exactly.
VertexField nonlocal_divergence(const Graph& g, const EdgeField& J);

struct FieldStats {
    double mass = 0.0;      // sum_i m_i r_i
    double tv_norm = 0.0;   // sum_i m_i |r_i|
    double min_value = 0.0; // min_i r_i
    std::map<double, double> lp_norms;  // p -> (sum_i m_i |r_i|^p)^(1/p)
};

/// Mass, total variation, minimum and the requested L^p(mass) norms of a
/// density field. Each requested p must be >= 1.
FieldStats field_stats(const Graph& g, const VertexField& rho,
                       const std::vector<double>& p_list = {});

double field_mass(const Graph& g, const VertexField& rho);
double tv_norm(const Graph& g, const VertexField& rho);
double tv_distance(const Graph& g, const VertexField& a, const VertexField& b);

/// Max over vertices of sum_j |v_ij| eta_ij m_j (the velocity row bound the
/// a-priori estimates consume).
double max_weighted_row_sum(const Graph& g, const EdgeField& v);

}  // namespace graphncl
