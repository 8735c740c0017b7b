#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "graphncl/fields.hpp"
#include "graphncl/graph.hpp"

namespace graphncl {

enum class KernelKind { quadratic, gaussian, constant, table, custom };

/// Interaction kernel K(x, z) on point pairs. Built-ins:
///   quadratic: |x - z|^2
///   gaussian:  exp(-|x - z|^2)
///   constant:  c
/// Tables are indexed by vertex pairs of the graph they are declared for;
/// custom closures are available through the library API only.
struct KernelSpec {
    KernelKind kind = KernelKind::quadratic;
    double value = 0.0;  // constant
    std::vector<std::vector<double>> table;
    std::function<double(std::span<const double>, std::span<const double>)> fn;

    static KernelSpec quadratic();
    static KernelSpec gaussian();
    static KernelSpec constant(double c);
    static KernelSpec table_kernel(std::vector<std::vector<double>> values);
    static KernelSpec custom(
        std::function<double(std::span<const double>, std::span<const double>)> fn);
};

enum class PotentialKind { zero, table, quadratic, custom };

/// External potential P on vertices: zero, per-vertex table, |x|^2, or a
/// custom closure over coordinates.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::zero;
    std::vector<double> values;  // table, by vertex index
    std::function<double(std::span<const double>)> fn;

    static PotentialSpec zero();
    static PotentialSpec table_potential(std::vector<double> values);
    static PotentialSpec quadratic();
    static PotentialSpec custom(std::function<double(std::span<const double>)> fn);
};

enum class VelocityKind { static_field, potential, nl2ie };

/// Velocity field specification:
///   static_field: a fixed antisymmetric edge field
///   potential:    -grad(P)
///   nl2ie:        -grad(K * rho) - grad(P), i.e. the solution-dependent
///                 interaction velocity
/// all optionally modulated by a scalar c(t) (default identically 1).
struct VelocitySpec {
    VelocityKind kind = VelocityKind::static_field;
    EdgeField static_field;  // must be flagged antisymmetric
    KernelSpec kernel;
    PotentialSpec potential;
    std::function<double(double)> time_modulation;  // null => 1

    static VelocitySpec static_velocity(EdgeField field);
    static VelocitySpec potential_velocity(PotentialSpec P);
    static VelocitySpec nl2ie_velocity(KernelSpec K, PotentialSpec P = PotentialSpec::zero());

    bool solution_dependent() const noexcept { return kind == VelocityKind::nl2ie; }
    double modulation(double t) const;

    void validate(const Graph& g) const;
};

/// (K * rho)_i = sum_j K(x_i, x_j) m_j r_j over all vertices j (including
/// j == i), in ascending order. Non-finite kernel values throw
/// numerical_error.
VertexField convolve_kernel(const Graph& g, const KernelSpec& kernel,
                            const VertexField& rho);

/// Evaluates the velocity edge field at time t and state rho. The result is
/// antisymmetric by construction.
EdgeField eval_velocity(const VelocitySpec& spec, double t, const Graph& g,
                        const VertexField& rho);

/// Compressibility and Lipschitz constants of the velocity map over the mass
/// class of size M, computed exactly on the finite graph by enumeration.
struct ConstantsReport {
    double C_V = 0.0;  // uniform row bound of |V[rho]| eta m over the class
    double L_V = 0.0;  // TV-Lipschitz constant of rho -> V[rho]
    double M = 0.0;    // TV mass bound the constants were computed for
    std::vector<double> row_sums;  // per-vertex row bounds (diagnostics)
};

/// For nl2ie: with D_ij = max over vertices z of |K(x_j,x_z) - K(x_i,x_z)|
/// and dP_ij = |P_j - P_i|,
///   C_V = max_i sum_j (M * D_ij + dP_ij) eta_ij m_j,
///   L_V = max_i sum_j D_ij eta_ij m_j.
/// For static/potential fields: C_V = sup_t |c(t)| * max_i sum_j |v_ij|
/// eta_ij m_j (sup over `time_grid`) and L_V = 0. Throws on non-finite
/// modulation values over the grid.
ConstantsReport compute_constants(const Graph& g, const VelocitySpec& spec,
                                  double M, const std::vector<double>& time_grid);

std::string velocity_kind_name(VelocityKind kind);

}  // namespace graphncl
