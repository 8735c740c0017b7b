#pragma once

#include <span>
#include <string>
#include <vector>

namespace graphncl {

enum class EtaKind { gaussian, indicator, constant, table };

/// Symmetric nonnegative edge-weight function on pairs of distinct points.
/// Built-in forms:
///   gaussian(sigma):  exp(-|x-y|^2 / sigma^2)
///   indicator(r):     1 if |x-y| <= r else 0   (closed ball)
///   constant(c):      c
///   table:            dense symmetric matrix with zero diagonal, indexed by
///                     the vertex cloud the table was declared for
struct EtaSpec {
    EtaKind kind = EtaKind::constant;
    double sigma = 1.0;   // gaussian
    double radius = 1.0;  // indicator
    double value = 1.0;   // constant

    // Table form. `table_points` is the point cloud the matrix refers to;
    // evaluation resolves arguments by exact coordinate match.
    std::vector<std::vector<double>> table;
    std::vector<std::vector<double>> table_points;

    static EtaSpec gaussian_spec(double sigma);
    static EtaSpec indicator_spec(double radius);
    static EtaSpec constant_spec(double value);
    static EtaSpec table_spec(std::vector<std::vector<double>> table,
                              std::vector<std::vector<double>> points);

    /// Upper bound on all values this spec can take.
    double bound() const;

    /// Throws std::invalid_argument on malformed parameters (nonpositive
    /// scale, asymmetric or negative table, nonzero table diagonal, ...).
    void validate() const;
};

/// Evaluates eta(x, y). Symmetric in its arguments and bounded by
/// spec.bound(). The diagonal x == y is outside the domain and throws
/// std::domain_error.
double eval_eta(const EtaSpec& spec, std::span<const double> x,
                std::span<const double> y);

std::string eta_kind_name(EtaKind kind);

}  // namespace graphncl
