#include "graphncl/run_config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "graphncl/presets.hpp"

namespace graphncl {

using nlohmann::json;

void RunConfig::validate() const {
    if (graph.vertex_count() == 0)
        throw std::invalid_argument("config: empty graph");
    interpolation.validate();
    velocity.validate(graph);
    if (initial_density.size() != static_cast<std::size_t>(graph.vertex_count()))
        throw std::invalid_argument("config: initial density size mismatch");
    for (double r : initial_density.values)
        if (!std::isfinite(r))
            throw std::invalid_argument("config: non-finite initial density");
    solver.validate();
    for (double p : diagnostics.p_list)
        if (!(p >= 1.0))
            throw std::invalid_argument("config: diagnostics p_list entries must be >= 1");
    if (diagnostics.lp && !(diagnostics.lp->p > 1.0))
        throw std::invalid_argument("config: lp monitor needs p in (1, inf)");
}

namespace {

json kernel_to_json(const KernelSpec& k) {
    json j;
    switch (k.kind) {
        case KernelKind::quadratic: j["kind"] = "quadratic"; break;
        case KernelKind::gaussian: j["kind"] = "gaussian"; break;
        case KernelKind::constant:
            j["kind"] = "constant";
            j["value"] = k.value;
            break;
        case KernelKind::table:
            j["kind"] = "table";
            j["values"] = k.table;
            break;
        case KernelKind::custom: j["kind"] = "custom"; break;
    }
    return j;
}

json potential_to_json(const PotentialSpec& p) {
    json j;
    switch (p.kind) {
        case PotentialKind::zero: j["kind"] = "zero"; break;
        case PotentialKind::table:
            j["kind"] = "table";
            j["values"] = p.values;
            break;
        case PotentialKind::quadratic: j["kind"] = "quadratic"; break;
        case PotentialKind::custom: j["kind"] = "custom"; break;
    }
    return j;
}

json velocity_to_json(const VelocitySpec& v, const Graph& g) {
    json j;
    j["kind"] = velocity_kind_name(v.kind);
    switch (v.kind) {
        case VelocityKind::static_field: {
            json edges = json::array();
            for (std::size_t e = 0; e < v.static_field.pair_count(); ++e) {
                const auto& pair = g.edges()[e];
                edges.push_back({pair.i, pair.j, v.static_field.forward[e]});
            }
            j["edges"] = edges;
            break;
        }
        case VelocityKind::potential:
            j["potential"] = potential_to_json(v.potential);
            break;
        case VelocityKind::nl2ie:
            j["kernel"] = kernel_to_json(v.kernel);
            j["potential"] = potential_to_json(v.potential);
            break;
    }
    if (v.time_modulation) j["modulation"] = "custom";
    return j;
}

KernelSpec kernel_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "quadratic") return KernelSpec::quadratic();
    if (kind == "gaussian") return KernelSpec::gaussian();
    if (kind == "constant") return KernelSpec::constant(j.at("value").get<double>());
    if (kind == "table")
        return KernelSpec::table_kernel(
            j.at("values").get<std::vector<std::vector<double>>>());
    throw std::invalid_argument("config: unknown kernel kind '" + kind + "'");
}

PotentialSpec potential_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return PotentialSpec::zero();
    if (kind == "table")
        return PotentialSpec::table_potential(j.at("values").get<std::vector<double>>());
    if (kind == "quadratic") return PotentialSpec::quadratic();
    throw std::invalid_argument("config: unknown potential kind '" + kind + "'");
}

VelocitySpec velocity_from_json(const json& j, const Graph& g) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "static") {
        EdgeField v(static_cast<std::size_t>(g.edge_count()));
        for (const auto& entry : j.at("edges")) {
            if (!entry.is_array() || entry.size() != 3)
                throw std::invalid_argument(
                    "config: static velocity entries must be [i, j, value]");
            int a = entry[0].get<int>();
            int b = entry[1].get<int>();
            double value = entry[2].get<double>();
            if (a == b)
                throw std::invalid_argument("config: static velocity self-edge");
            if (a > b) {
                std::swap(a, b);
                value = -value;
            }
            bool found = false;
            for (std::size_t e = 0; e < g.edges().size(); ++e) {
                if (g.edges()[e].i == a && g.edges()[e].j == b) {
                    v.forward[e] = value;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw std::invalid_argument(
                    "config: static velocity references a non-edge (" +
                    std::to_string(a) + ", " + std::to_string(b) + ")");
        }
        v.set_antisymmetric_from_forward();
        return VelocitySpec::static_velocity(std::move(v));
    }
    if (kind == "potential")
        return VelocitySpec::potential_velocity(potential_from_json(j.at("potential")));
    if (kind == "nl2ie") {
        PotentialSpec P = j.contains("potential")
                              ? potential_from_json(j.at("potential"))
                              : PotentialSpec::zero();
        return VelocitySpec::nl2ie_velocity(kernel_from_json(j.at("kernel")),
                                            std::move(P));
    }
    throw std::invalid_argument("config: unknown velocity kind '" + kind + "'");
}

InterpolationSpec interpolation_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    InterpolationSpec spec;
    if (kind == "upwind")
        spec = InterpolationSpec::upwind();
    else if (kind == "arithmetic_mean")
        spec = InterpolationSpec::arithmetic_mean();
    else if (kind == "min_mean")
        spec = InterpolationSpec::min_mean();
    else if (kind == "max_mean")
        spec = InterpolationSpec::max_mean();
    else
        throw std::invalid_argument(
            "config: unknown interpolation kind '" + kind +
            "' (custom interpolations are library-only)");
    if (j.contains("lipschitz_constant"))
        spec.lipschitz_constant = j.at("lipschitz_constant").get<double>();
    spec.validate();
    return spec;
}

}  // namespace

std::string RunConfig::semantic_json() const {
    json j;
    j["graph"] = json::parse(graph.to_json_string());
    j["interpolation"] = {
        {"kind", interpolation_kind_name(interpolation.kind)},
        {"lipschitz_constant", interpolation.lipschitz_constant},
        {"jointly_antisymmetric", interpolation.jointly_antisymmetric}};
    j["velocity"] = velocity_to_json(velocity, graph);
    j["initial_density"] = initial_density.values;
    j["solver"] = {{"horizon", solver.horizon},
                   {"window_safety", solver.window_safety},
                   {"substeps_per_window", solver.substeps_per_window},
                   {"picard_tolerance", solver.picard_tolerance},
                   {"picard_max_iterations", solver.picard_max_iterations}};
    json diag;
    diag["p_list"] = diagnostics.p_list;
    diag["tolerances"] = {{"mass_rel", diagnostics.tolerances.mass_rel},
                          {"positivity_floor", diagnostics.tolerances.positivity_floor},
                          {"gronwall_rel", diagnostics.tolerances.gronwall_rel},
                          {"isolated_drift", diagnostics.tolerances.isolated_drift}};
    if (diagnostics.lp)
        diag["lp"] = {{"p", diagnostics.lp->p},
                      {"density_bound", diagnostics.lp->density_bound},
                      {"cv_p", diagnostics.lp->cv_p}};
    j["diagnostics"] = diag;
    json hard;
    hard["mass"] = hard_checks.mass;
    hard["tv_bound"] = hard_checks.tv_bound;
    if (hard_checks.positivity) hard["positivity"] = *hard_checks.positivity;
    hard["isolated"] = hard_checks.isolated;
    hard["lp"] = hard_checks.lp;
    j["hard"] = hard;
    if (seed) j["seed"] = *seed;
    return j.dump();
}

std::string RunConfig::config_hash() const {
    const std::string text = semantic_json();
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config JSON: ") + e.what());
    }

    try {
        RunConfig cfg;
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();

        const json& gj = j.at("graph");
        if (gj.contains("preset")) {
            cfg.graph = preset(gj.at("preset").get<std::string>(), cfg.seed).graph;
        } else if (gj.contains("file")) {
            const auto path =
                std::filesystem::path(base_dir) / gj.at("file").get<std::string>();
            std::ifstream in(path);
            if (!in)
                throw std::invalid_argument("config: cannot open graph file " +
                                            path.string());
            std::stringstream buffer;
            buffer << in.rdbuf();
            cfg.graph = Graph::from_json_string(buffer.str());
        } else {
            cfg.graph = Graph::from_json_string(gj.dump());
        }

        cfg.name = j.value("name", std::string("run"));
        cfg.interpolation = interpolation_from_json(j.at("interpolation"));
        cfg.velocity = velocity_from_json(j.at("velocity"), cfg.graph);

        const json& dj = j.at("initial_density");
        if (dj.is_array()) {
            cfg.initial_density.values = dj.get<std::vector<double>>();
        } else if (dj.contains("preset")) {
            cfg.initial_density =
                preset(dj.at("preset").get<std::string>(), cfg.seed).initial_density;
        } else {
            throw std::invalid_argument("config: initial_density must be an array "
                                        "or a preset reference");
        }

        if (j.contains("solver")) {
            const json& sj = j.at("solver");
            cfg.solver.horizon = sj.value("horizon", cfg.solver.horizon);
            cfg.solver.window_safety = sj.value("window_safety", cfg.solver.window_safety);
            cfg.solver.substeps_per_window =
                sj.value("substeps_per_window", cfg.solver.substeps_per_window);
            cfg.solver.picard_tolerance =
                sj.value("picard_tolerance", cfg.solver.picard_tolerance);
            cfg.solver.picard_max_iterations =
                sj.value("picard_max_iterations", cfg.solver.picard_max_iterations);
        }

        if (j.contains("diagnostics")) {
            const json& dgj = j.at("diagnostics");
            if (dgj.contains("p_list"))
                cfg.diagnostics.p_list = dgj.at("p_list").get<std::vector<double>>();
            if (dgj.contains("tolerances")) {
                const json& tj = dgj.at("tolerances");
                auto& tol = cfg.diagnostics.tolerances;
                tol.mass_rel = tj.value("mass_rel", tol.mass_rel);
                tol.positivity_floor = tj.value("positivity_floor", tol.positivity_floor);
                tol.gronwall_rel = tj.value("gronwall_rel", tol.gronwall_rel);
                tol.isolated_drift = tj.value("isolated_drift", tol.isolated_drift);
            }
            if (dgj.contains("lp")) {
                const json& lj = dgj.at("lp");
                cfg.diagnostics.lp = LpConstants{lj.at("p").get<double>(),
                                                 lj.at("density_bound").get<double>(),
                                                 lj.at("cv_p").get<double>()};
            }
        }

        if (j.contains("hard")) {
            const json& hj = j.at("hard");
            cfg.hard_checks.mass = hj.value("mass", cfg.hard_checks.mass);
            cfg.hard_checks.tv_bound = hj.value("tv_bound", cfg.hard_checks.tv_bound);
            if (hj.contains("positivity"))
                cfg.hard_checks.positivity = hj.at("positivity").get<bool>();
            cfg.hard_checks.isolated = hj.value("isolated", cfg.hard_checks.isolated);
            cfg.hard_checks.lp = hj.value("lp", cfg.hard_checks.lp);
        }

        cfg.output_dir = j.value("output_dir", std::string());
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(),
                            std::filesystem::path(path).parent_path().string());
}

}  // namespace graphncl
