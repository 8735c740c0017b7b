#pragma once

#include <span>
#include <string>
#include <vector>

#include "graphncl/eta.hpp"

namespace graphncl {

/// Finite weighted graph: a vertex cloud with positive masses plus the
/// symmetric positive-weight edge set induced by an EtaSpec. Immutable after
/// construction; safe for shared read access from multiple threads.
///
/// Edges are stored once per unordered pair {i, j} with i < j, in
/// lexicographic (i, j) order, so rebuilding from the same inputs is
/// bit-identical. Directed edge quantities live in EdgeField.
class Graph {
public:
    struct EdgePair {
        int i = 0;  // lower vertex index
        int j = 0;  // upper vertex index
        double weight = 0.0;
    };

    struct Neighbor {
        int vertex = 0;      // neighbor index
        int pair = 0;        // index into edges()
        bool lower = false;  // true when this vertex is the pair's i
        double weight = 0.0;
    };

    Graph() = default;

    int vertex_count() const noexcept { return n_; }
    int dimension() const noexcept { return d_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

    std::span<const double> point(int i) const {
        return {points_.data() + static_cast<std::size_t>(i) * d_,
                static_cast<std::size_t>(d_)};
    }
    double mass(int i) const { return masses_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& masses() const noexcept { return masses_; }
    double total_mass() const noexcept { return total_mass_; }

    const std::vector<EdgePair>& edges() const noexcept { return edges_; }

    /// Neighbors of vertex i in ascending neighbor-index order.
    const std::vector<Neighbor>& neighbors(int i) const {
        return adjacency_[static_cast<std::size_t>(i)];
    }

    const EtaSpec& eta() const noexcept { return eta_; }
    double weight_floor() const noexcept { return weight_floor_; }

    std::string to_json_string(int indent = -1) const;
    static Graph from_json_string(const std::string& text);

    friend Graph build_graph(const std::vector<std::vector<double>>& points,
                             const std::vector<double>& masses,
                             const EtaSpec& eta, double weight_floor);

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<double> points_;  // n*d, row-major
    std::vector<double> masses_;
    double total_mass_ = 0.0;
    std::vector<EdgePair> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    EtaSpec eta_;
    double weight_floor_ = 0.0;
};

/// Builds the graph whose edges are all unordered pairs with
/// eta(x_i, x_j) > weight_floor. Throws std::invalid_argument on duplicate
/// coordinates, nonpositive masses, non-finite input, or size mismatch.
/// An empty edge set is legal (the dynamics are then constant).
Graph build_graph(const std::vector<std::vector<double>>& points,
                  const std::vector<double>& masses, const EtaSpec& eta,
                  double weight_floor = 0.0);

}  // namespace graphncl
