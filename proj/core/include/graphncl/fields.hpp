#pragma once

#include <cstddef>
#include <vector>

namespace graphncl {

/// Density values with respect to the vertex masses: the measure's atom at
/// vertex i is mass(i) * values[i].
struct VertexField {
    std::vector<double> values;

    VertexField() = default;
    explicit VertexField(std::size_t n, double fill = 0.0) : values(n, fill) {}
    VertexField(std::initializer_list<double> init) : values(init) {}

    std::size_t size() const noexcept { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    bool operator==(const VertexField&) const = default;
};

/// One real value per directed edge. For the stored unordered pair p with
/// endpoints i < j, forward[p] is the value on (i -> j) and backward[p] the
/// value on (j -> i). When `antisymmetric` is set, backward[p] == -forward[p]
/// holds exactly.
struct EdgeField {
    std::vector<double> forward;
    std::vector<double> backward;
    bool antisymmetric = false;

    EdgeField() = default;
    explicit EdgeField(std::size_t pairs, double fill = 0.0)
        : forward(pairs, fill), backward(pairs, fill) {}

    std::size_t pair_count() const noexcept { return forward.size(); }

    /// Directed value leaving the pair's lower endpoint when `from_lower`,
    /// else leaving the upper endpoint.
    double directed(std::size_t pair, bool from_lower) const {
        return from_lower ? forward[pair] : backward[pair];
    }

    /// Makes backward the exact negation of forward and sets the flag.
    void set_antisymmetric_from_forward() {
        backward.resize(forward.size());
        for (std::size_t p = 0; p < forward.size(); ++p) backward[p] = -forward[p];
        antisymmetric = true;
    }
};

}  // namespace graphncl
