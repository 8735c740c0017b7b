#include "graphncl/eta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphncl {

namespace {

double squared_distance(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        s += d * d;
    }
    return s;
}

bool same_point(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] != y[k]) return false;
    return true;
}

// Table weights are only defined on the declared cloud; arguments resolve by
// exact coordinate match.
int table_index(const EtaSpec& spec, std::span<const double> x) {
    for (std::size_t i = 0; i < spec.table_points.size(); ++i) {
        if (same_point(spec.table_points[i], x)) return static_cast<int>(i);
    }
    throw std::invalid_argument(
        "eta table: point is not a vertex of the declared cloud");
}

}  // namespace

EtaSpec EtaSpec::gaussian_spec(double sigma) {
    EtaSpec s;
    s.kind = EtaKind::gaussian;
    s.sigma = sigma;
    s.validate();
    return s;
}

EtaSpec EtaSpec::indicator_spec(double radius) {
    EtaSpec s;
    s.kind = EtaKind::indicator;
    s.radius = radius;
    s.validate();
    return s;
}

EtaSpec EtaSpec::constant_spec(double value) {
    EtaSpec s;
    s.kind = EtaKind::constant;
    s.value = value;
    s.validate();
    return s;
}

EtaSpec EtaSpec::table_spec(std::vector<std::vector<double>> table,
                            std::vector<std::vector<double>> points) {
    EtaSpec s;
    s.kind = EtaKind::table;
    s.table = std::move(table);
    s.table_points = std::move(points);
    s.validate();
    return s;
}

double EtaSpec::bound() const {
    switch (kind) {
        case EtaKind::gaussian:
        case EtaKind::indicator:
            return 1.0;
        case EtaKind::constant:
            return value;
        case EtaKind::table: {
            double m = 0.0;
            for (const auto& row : table)
                for (double w : row) m = std::max(m, w);
            return m;
        }
    }
    return 0.0;
}

void EtaSpec::validate() const {
    switch (kind) {
        case EtaKind::gaussian:
            if (!(sigma > 0.0) || !std::isfinite(sigma))
                throw std::invalid_argument("eta gaussian: sigma must be positive");
            break;
        case EtaKind::indicator:
            if (!(radius > 0.0) || !std::isfinite(radius))
                throw std::invalid_argument("eta indicator: radius must be positive");
            break;
        case EtaKind::constant:
            if (!(value > 0.0) || !std::isfinite(value))
                throw std::invalid_argument("eta constant: value must be positive");
            break;
        case EtaKind::table: {
            const std::size_t n = table.size();
            if (n == 0 || table_points.size() != n)
                throw std::invalid_argument(
                    "eta table: matrix and point cloud sizes must match");
            for (std::size_t i = 0; i < n; ++i) {
                if (table[i].size() != n)
                    throw std::invalid_argument("eta table: matrix must be square");
                if (table[i][i] != 0.0)
                    throw std::invalid_argument("eta table: diagonal must be zero");
                for (std::size_t j = 0; j < n; ++j) {
                    const double w = table[i][j];
                    if (!std::isfinite(w) || w < 0.0)
                        throw std::invalid_argument(
                            "eta table: entries must be finite and nonnegative");
                    if (w != table[j][i])
                        throw std::invalid_argument("eta table: matrix must be symmetric");
                }
            }
            break;
        }
    }
}

double eval_eta(const EtaSpec& spec, std::span<const double> x,
                std::span<const double> y) {
    if (same_point(x, y))
        throw std::domain_error("eta is defined on the off-diagonal only (x != y)");
    switch (spec.kind) {
        case EtaKind::gaussian:
            return std::exp(-squared_distance(x, y) / (spec.sigma * spec.sigma));
        case EtaKind::indicator:
            return squared_distance(x, y) <= spec.radius * spec.radius ? 1.0 : 0.0;
        case EtaKind::constant:
            return spec.value;
        case EtaKind::table: {
            const int i = table_index(spec, x);
            const int j = table_index(spec, y);
            return spec.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return 0.0;
}

std::string eta_kind_name(EtaKind kind) {
    switch (kind) {
        case EtaKind::gaussian: return "gaussian";
        case EtaKind::indicator: return "indicator";
        case EtaKind::constant: return "constant";
        case EtaKind::table: return "table";
    }
    return "unknown";
}

}  // namespace graphncl
