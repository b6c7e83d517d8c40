#include "cli_commands.hpp"

#include <algorithm>
#include <sstream>

namespace affineproj::cli {

namespace {

using nlohmann::json;

json direction_json(const std::optional<Direction>& d) {
    if (!d) return nullptr;
    return json{{"theta", d->theta()}};
}

}  // namespace

CommandResult cmd_validate(const RunConfig& config) {
    const SelfAffineIFS ifs = build_ifs(config);
    const BernoulliWeights weights = build_weights(config);
    const ValidationReport& report = ifs.report();
    const auto exceptional = exceptional_set(ifs);

    CommandResult result;
    result.summary = json{
        {"k", ifs.size()},
        {"strictly_positive", report.strictly_positive},
        {"contracting", report.contracting},
        {"disk_invariant", report.disk_invariant},
        {"not_positive", report.not_positive},
        {"not_contracting", report.not_contracting},
        {"rescaled", report.rescaled},
        {"rescale_factor", report.rescale_factor},
        {"max_operator_norm", report.max_operator_norm},
        {"exceptional", direction_json(exceptional)},
        {"weights", weights.p},
    };

    std::ostringstream text;
    text << "k: " << ifs.size() << " maps\n";
    text << "strictly_positive: " << (report.strictly_positive ? "true" : "false");
    if (!report.not_positive.empty()) {
        text << "  (violated by map";
        for (int i : report.not_positive) text << ' ' << i;
        text << ')';
    }
    text << '\n';
    text << "contracting: true (max operator norm " << report.max_operator_norm << ")\n";
    text << "disk_invariant: " << (report.disk_invariant ? "true" : "false");
    if (report.rescaled) text << "  (translations rescaled by " << report.rescale_factor << ")";
    text << '\n';
    if (exceptional) {
        text << "exceptional: theta = " << exceptional->theta() << '\n';
    } else {
        text << "exceptional: none\n";
    }
    result.text = text.str();
    return result;
}

CommandResult cmd_dims(const RunConfig& config) {
    const SelfAffineIFS ifs = build_ifs(config);
    const BernoulliWeights weights = build_weights(config);
    const EstimatorParams& p = config.params;

    const AffinityResult affinity =
        affinity_dimension(ifs, p.dim_tol, p.pressure_word_length, config.budget);
    const PressureEstimate at_root =
        pressure(ifs, affinity.raw_root, p.pressure_word_length, config.budget);
    const LyapunovReport lyap =
        lyapunov_exponents(ifs, weights, p.lyapunov_steps, p.lyapunov_samples, config.seed);

    json ladder = json::array();
    for (int n = 1; n <= 3; ++n) {
        const BlockMeasure block = block_bernoulli(ifs, n, 1e-10, config.budget);
        ladder.push_back(json{{"N", n}, {"s_N", block.s_exponent}});
    }

    CommandResult result;
    result.summary = json{
        {"affinity",
         {{"dim", affinity.value},
          {"raw_root", affinity.raw_root},
          {"clamped", affinity.clamped},
          {"tol", affinity.tol},
          {"word_length", affinity.word_length},
          {"pressure_at_root",
           {{"value", at_root.value},
            {"lower_bound", at_root.lower_bound},
            {"upper_bound", at_root.upper_bound}}}}},
        {"lyapunov",
         {{"lambda1", lyap.lambda1},
          {"lambda2", lyap.lambda2},
          {"std_err_lambda1", lyap.std_err_lambda1},
          {"std_err_lambda2", lyap.std_err_lambda2},
          {"entropy", lyap.entropy},
          {"dim", lyap.dim_lyapunov},
          {"dim_raw", lyap.dim_lyapunov_raw},
          {"clamped", lyap.clamped},
          {"n_steps", lyap.n_steps},
          {"n_samples", lyap.n_samples}}},
        {"block_ladder", ladder},
        {"k", ifs.size()},
        {"seed", config.seed},
    };
    return result;
}

CommandResult cmd_scan(const RunConfig& config) {
    const SelfAffineIFS ifs = build_ifs(config);
    const BernoulliWeights weights = build_weights(config);
    const EstimatorParams& p = config.params;

    ScanParams scan;
    scan.n_atoms = p.n_atoms;
    scan.depth = p.depth;
    scan.r_min = p.r_min;
    scan.r_max = p.r_max;
    scan.n_r = p.n_r;
    scan.include_exceptional = config.include_exceptional;
    scan.workers = config.workers;

    const auto rows = theta_scan(ifs, weights, p.n_theta, scan, config.seed);
    const auto exceptional = exceptional_set(ifs);

    double min_beta = 2.0;
    double argmin_theta = 0.0;
    double min_beta_all = 2.0;
    double argmin_theta_all = 0.0;
    for (const ThetaScanRow& row : rows) {
        if (row.beta_hat < min_beta_all) {
            min_beta_all = row.beta_hat;
            argmin_theta_all = row.theta.theta();
        }
        if (!row.near_exceptional && row.beta_hat < min_beta) {
            min_beta = row.beta_hat;
            argmin_theta = row.theta.theta();
        }
    }

    CommandResult result;
    result.csv = to_csv(rows);
    result.summary = json{
        {"min_beta", min_beta},
        {"argmin_theta", argmin_theta},
        {"min_beta_all", min_beta_all},
        {"argmin_theta_all", argmin_theta_all},
        {"exceptional_theta", exceptional ? json(exceptional->theta()) : json(nullptr)},
        {"n_rows", rows.size()},
        {"n_atoms", p.n_atoms},
        {"seed", config.seed},
    };
    return result;
}

CommandResult cmd_furstenberg(const RunConfig& config) {
    const SelfAffineIFS ifs = build_ifs(config);
    const BernoulliWeights weights = build_weights(config);
    const EstimatorParams& p = config.params;

    const auto nu = furstenberg_sample(ifs, weights, p.burn_in, p.n_atoms, config.seed);
    const double residual = stationarity_residual(ifs, weights, nu, p.n_bins);
    const double rho = cone_contraction_rate(ifs, 256);

    CommandResult result;
    result.csv = to_csv(nu);
    result.summary = json{
        {"stationarity_residual", residual},
        {"rho", rho},
        {"n_atoms", p.n_atoms},
        {"burn_in", p.burn_in},
        {"n_bins", p.n_bins},
        {"seed", config.seed},
    };
    return result;
}

CommandResult cmd_equidist(const RunConfig& config) {
    const SelfAffineIFS ifs = build_ifs(config);
    const BernoulliWeights weights = build_weights(config);
    const EstimatorParams& p = config.params;

    // one target shared across the grid
    const auto target = nu_F_estimate(ifs, weights, std::max<std::size_t>(p.n_atoms, 50000),
                                      p.burn_in, derive_seed(config.seed, 0xf10eULL));
    const auto exceptional = exceptional_set(ifs);

    json results = json::array();
    std::uint64_t cell = 0;
    for (double theta0 : config.theta0_grid) {
        const Direction d(theta0);
        if (exceptional && direction_distance(d, *exceptional) < 1e-9) {
            results.push_back(json{{"theta0", d.theta()}, {"skipped", "exceptional direction"}});
            continue;
        }
        for (std::size_t I : config.orbit_grid) {
            const double dist =
                equidistribution_statistic(ifs, weights, d, p.level_spacing, I, p.n_bins,
                                           derive_seed(config.seed, ++cell), target);
            results.push_back(json{{"theta0", d.theta()}, {"I", I}, {"distance", dist}});
        }
    }

    CommandResult result;
    result.summary = json{
        {"N_log2", p.level_spacing},
        {"n_bins", p.n_bins},
        {"results", results},
        {"seed", config.seed},
    };
    return result;
}

CommandResult cmd_render(const RunConfig& config) {
    const SelfAffineIFS ifs = build_ifs(config);
    const BernoulliWeights weights = build_weights(config);
    const EstimatorParams& p = config.params;

    const auto points = chaos_game(ifs, weights, p.n_atoms, p.depth, config.seed);
    double min_x = 1.0, max_x = -1.0, min_y = 1.0, max_y = -1.0;
    for (const Vec2& pt : points) {
        min_x = std::min(min_x, pt.x);
        max_x = std::max(max_x, pt.x);
        min_y = std::min(min_y, pt.y);
        max_y = std::max(max_y, pt.y);
    }

    CommandResult result;
    result.csv = points_to_csv(points);
    result.summary = json{
        {"n_points", points.size()},
        {"bbox", {min_x, min_y, max_x, max_y}},
        {"seed", config.seed},
    };
    return result;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const BudgetError*>(&e)) return 4;
    if (dynamic_cast<const PreconditionError*>(&e)) return 3;
    return 1;
}

}  // namespace affineproj::cli
