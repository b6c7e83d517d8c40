#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "affineproj/affineproj.hpp"

namespace affineproj::cli {

struct EstimatorParams {
    std::size_t n_atoms = 20000;
    int depth = 40;
    double r_min = 1e-3;
    double r_max = 0.25;
    int n_r = 12;
    int n_theta = 64;
    double level_spacing = 6.0;  // "N" of the entropy statistic / flow step, log2 units
    int n_terms = 50;
    std::size_t n_orbit = 10000;  // "I" of the equidistribution test
    int burn_in = 80;
    int n_bins = 32;
    int lyapunov_steps = 2000;
    int lyapunov_samples = 64;
    double dim_tol = 1e-4;
    int pressure_word_length = 8;
};

/// One JSON document drives every subcommand. Matrices are row-major, all
/// angles are radians.
struct RunConfig {
    std::vector<AffineMap2> maps;
    std::optional<std::vector<double>> weights;  // defaults to uniform
    std::uint64_t seed = 0;
    EstimatorParams params;
    std::string output;  // optional CSV/JSON destination
    bool rescale_to_disk = true;
    bool include_exceptional = false;
    std::vector<double> theta0_grid = {0.3, 1.1, 1.9, 2.7};
    std::vector<std::size_t> orbit_grid;  // defaults to {I/100, I/10, I}
    std::uint64_t budget = kDefaultWordBudget;
    int workers = 1;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

SelfAffineIFS build_ifs(const RunConfig& config);
BernoulliWeights build_weights(const RunConfig& config);

}  // namespace affineproj::cli
