#include "cli_config.hpp"

#include <fstream>

namespace affineproj::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

double get_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
}

template <typename T>
void read_if_present(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        fail(key, "has the wrong type");
    }
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: top-level document must be an object");
    RunConfig config;

    if (!doc.contains("maps") || !doc.at("maps").is_array() || doc.at("maps").empty()) {
        throw ConfigError("config: 'maps' must be a nonempty array");
    }
    for (std::size_t i = 0; i < doc.at("maps").size(); ++i) {
        const json& entry = doc.at("maps").at(i);
        const std::string where = "maps[" + std::to_string(i) + "]";
        if (!entry.is_object()) fail(where, "expected an object");
        if (!entry.contains("matrix") || !entry.at("matrix").is_array() ||
            entry.at("matrix").size() != 4) {
            fail(where + ".matrix", "expected 4 row-major numbers");
        }
        if (!entry.contains("translation") || !entry.at("translation").is_array() ||
            entry.at("translation").size() != 2) {
            fail(where + ".translation", "expected 2 numbers");
        }
        const json& m = entry.at("matrix");
        const json& t = entry.at("translation");
        Matrix2 linear;
        try {
            linear = Matrix2(get_number(m.at(0), where), get_number(m.at(1), where),
                             get_number(m.at(2), where), get_number(m.at(3), where));
        } catch (const Error& e) {
            fail(where + ".matrix", e.what());
        }
        config.maps.push_back(
            {linear, {get_number(t.at(0), where), get_number(t.at(1), where)}});
    }

    if (doc.contains("weights")) {
        if (!doc.at("weights").is_array()) fail("weights", "expected an array");
        std::vector<double> w;
        for (const json& x : doc.at("weights")) w.push_back(get_number(x, "weights"));
        if (w.size() != config.maps.size()) fail("weights", "size must match 'maps'");
        config.weights = std::move(w);
    }

    read_if_present(doc, "seed", config.seed);
    read_if_present(doc, "output", config.output);
    read_if_present(doc, "rescale_to_disk", config.rescale_to_disk);
    read_if_present(doc, "include_exceptional", config.include_exceptional);
    read_if_present(doc, "theta0_grid", config.theta0_grid);
    read_if_present(doc, "I_grid", config.orbit_grid);

    if (doc.contains("params")) {
        const json& p = doc.at("params");
        if (!p.is_object()) fail("params", "expected an object");
        read_if_present(p, "n_atoms", config.params.n_atoms);
        read_if_present(p, "depth", config.params.depth);
        read_if_present(p, "r_min", config.params.r_min);
        read_if_present(p, "r_max", config.params.r_max);
        read_if_present(p, "n_r", config.params.n_r);
        read_if_present(p, "n_theta", config.params.n_theta);
        read_if_present(p, "N", config.params.level_spacing);
        read_if_present(p, "n_terms", config.params.n_terms);
        read_if_present(p, "I", config.params.n_orbit);
        read_if_present(p, "burn_in", config.params.burn_in);
        read_if_present(p, "n_bins", config.params.n_bins);
        read_if_present(p, "lyapunov_steps", config.params.lyapunov_steps);
        read_if_present(p, "lyapunov_samples", config.params.lyapunov_samples);
        read_if_present(p, "dim_tol", config.params.dim_tol);
        read_if_present(p, "pressure_word_length", config.params.pressure_word_length);
    }

    if (config.orbit_grid.empty()) {
        const std::size_t I = config.params.n_orbit;
        config.orbit_grid = {std::max<std::size_t>(I / 100, 10),
                             std::max<std::size_t>(I / 10, 100), I};
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    return parse_config(doc);
}

SelfAffineIFS build_ifs(const RunConfig& config) {
    return validate_ifs(config.maps, IfsOptions{config.rescale_to_disk});
}

BernoulliWeights build_weights(const RunConfig& config) {
    if (config.weights) return BernoulliWeights(*config.weights);
    return BernoulliWeights::uniform(static_cast<int>(config.maps.size()));
}

}  // namespace affineproj::cli
