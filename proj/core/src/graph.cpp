#include "graphncl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace graphncl {

using nlohmann::json;

Graph build_graph(const std::vector<std::vector<double>>& points,
                  const std::vector<double>& masses, const EtaSpec& eta,
                  double weight_floor) {
    eta.validate();
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("graph: empty point cloud");
    if (masses.size() != n)
        throw std::invalid_argument("graph: points and masses sizes differ");
    if (!(weight_floor >= 0.0) || !std::isfinite(weight_floor))
        throw std::invalid_argument("graph: weight_floor must be finite and >= 0");

    const std::size_t d = points[0].size();
    if (d == 0) throw std::invalid_argument("graph: zero-dimensional points");

    Graph g;
    g.n_ = static_cast<int>(n);
    g.d_ = static_cast<int>(d);
    g.points_.reserve(n * d);
    for (const auto& p : points) {
        if (p.size() != d)
            throw std::invalid_argument("graph: inconsistent point dimensions");
        for (double c : p) {
            if (!std::isfinite(c))
                throw std::invalid_argument("graph: non-finite coordinate");
            g.points_.push_back(c);
        }
    }

    g.total_mass_ = 0.0;
    for (double m : masses) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("graph: masses must be strictly positive");
        g.total_mass_ += m;
    }
    g.masses_ = masses;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::equal(points[i].begin(), points[i].end(), points[j].begin()))
                throw std::invalid_argument(
                    "graph: duplicate coordinates at vertices " + std::to_string(i) +
                    " and " + std::to_string(j));
        }
    }

    // All unordered pairs with eta above the floor, lexicographic (i, j).
    for (int i = 0; i < g.n_; ++i) {
        for (int j = i + 1; j < g.n_; ++j) {
            const double w = eval_eta(eta, g.point(i), g.point(j));
            if (!std::isfinite(w))
                throw std::invalid_argument("graph: non-finite edge weight");
            if (w > weight_floor)
                g.edges_.push_back({i, j, w});
        }
    }

    g.adjacency_.assign(n, {});
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& pair = g.edges_[static_cast<std::size_t>(e)];
        g.adjacency_[static_cast<std::size_t>(pair.i)].push_back(
            {pair.j, e, true, pair.weight});
        g.adjacency_[static_cast<std::size_t>(pair.j)].push_back(
            {pair.i, e, false, pair.weight});
    }
    for (auto& row : g.adjacency_) {
        std::sort(row.begin(), row.end(),
                  [](const Graph::Neighbor& a, const Graph::Neighbor& b) {
                      return a.vertex < b.vertex;
                  });
    }

    g.eta_ = eta;
    g.weight_floor_ = weight_floor;
    return g;
}

namespace {

json eta_to_json(const EtaSpec& eta) {
    json j;
    j["kind"] = eta_kind_name(eta.kind);
    switch (eta.kind) {
        case EtaKind::gaussian: j["sigma"] = eta.sigma; break;
        case EtaKind::indicator: j["radius"] = eta.radius; break;
        case EtaKind::constant: j["value"] = eta.value; break;
        case EtaKind::table: j["values"] = eta.table; break;
    }
    return j;
}

EtaSpec eta_from_json(const json& j, const std::vector<std::vector<double>>& points) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gaussian") return EtaSpec::gaussian_spec(j.at("sigma").get<double>());
    if (kind == "indicator") return EtaSpec::indicator_spec(j.at("radius").get<double>());
    if (kind == "constant") return EtaSpec::constant_spec(j.at("value").get<double>());
    if (kind == "table")
        return EtaSpec::table_spec(j.at("values").get<std::vector<std::vector<double>>>(),
                                   points);
    throw std::invalid_argument("eta: unknown kind '" + kind + "'");
}

}  // namespace

std::string Graph::to_json_string(int indent) const {
    json j;
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        pts[static_cast<std::size_t>(i)].assign(point(i).begin(), point(i).end());
    j["points"] = pts;
    j["masses"] = masses_;
    j["eta"] = eta_to_json(eta_);
    j["weight_floor"] = weight_floor_;
    return j.dump(indent);
}

Graph Graph::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("graph JSON: ") + e.what());
    }
    const auto points = j.at("points").get<std::vector<std::vector<double>>>();
    const auto masses = j.at("masses").get<std::vector<double>>();
    const EtaSpec eta = eta_from_json(j.at("eta"), points);
    const double floor = j.value("weight_floor", 0.0);
    return build_graph(points, masses, eta, floor);
}

}  // namespace graphncl
