#include "affineproj/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace affineproj {

namespace {

std::vector<std::size_t> sort_permutation(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return idx;
}

}  // namespace

AtomicMeasure1D::AtomicMeasure1D(std::vector<double> positions, std::vector<double> weights) {
    if (positions.empty() || positions.size() != weights.size()) {
        throw ConfigError("AtomicMeasure1D: positions/weights must be nonempty and aligned");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!std::isfinite(positions[i]) || std::abs(positions[i]) > 1.0 + 1e-9) {
            throw ConfigError("AtomicMeasure1D: support must lie in [-1, 1]");
        }
        if (!(weights[i] > 0.0)) {
            throw ConfigError("AtomicMeasure1D: weights must be positive");
        }
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw ConfigError("AtomicMeasure1D: weights must sum to 1 within 1e-10");
    }
    const auto perm = sort_permutation(positions);
    positions_.reserve(positions.size());
    weights_.reserve(weights.size());
    for (std::size_t i : perm) {
        positions_.push_back(positions[i]);
        weights_.push_back(weights[i]);
    }
}

AtomicMeasure1D AtomicMeasure1D::equal_weights(std::vector<double> positions) {
    if (positions.empty()) throw ConfigError("AtomicMeasure1D: no atoms");
    std::vector<double> w(positions.size(), 1.0 / static_cast<double>(positions.size()));
    return AtomicMeasure1D(std::move(positions), std::move(w));
}

AtomicMeasure1D scale_measure(const AtomicMeasure1D& nu, double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("scale_measure: rho must be in (0, 1]");
    std::vector<double> xs = nu.positions();
    for (double& x : xs) x *= rho;
    return AtomicMeasure1D(std::move(xs), nu.weights());
}

double projected_width(const SelfAffineIFS& ifs, const Word& w, Direction theta) {
    const Matrix2 a = word_matrix(ifs, w);
    return 2.0 * norm(a.transpose() * projection_axis(theta));
}

LengthFunctionValue length(const SelfAffineIFS& ifs, const Word& w, Direction theta) {
    LengthFunctionValue v;
    v.word = w;
    v.theta = theta;
    v.value = -std::log2(0.5 * projected_width(ifs, w, theta));
    if (w.empty()) v.value = 0.0;
    return v;
}

double symbol_length_log2(const SelfAffineIFS& ifs, int symbol, Direction theta) {
    ifs.check_symbol(symbol);
    return -std::log2(norm(ifs.matrix(symbol).transpose() * projection_axis(theta)));
}

double lambda_max(const SelfAffineIFS& ifs) {
    // min over unit u of ||A_i^T u|| is alpha2, so the supremum over theta of
    // |i|_theta is -log2(alpha2) exactly.
    double best = 0.0;
    for (int i = 0; i < ifs.size(); ++i) {
        best = std::max(best, -std::log2(singular_values(ifs.matrix(i)).alpha2));
    }
    return best;
}

FContraction f_contraction(const SelfAffineIFS& ifs, int i, Direction theta) {
    ifs.check_symbol(i);
    FContraction f;
    f.image_theta = phi_map(ifs, i, theta);
    // A_i^T u_theta is parallel to u_{phi_i theta}; the signed projection
    // extracts the contraction ratio with its orientation.
    const Vec2 w = ifs.matrix(i).transpose() * projection_axis(theta);
    f.ratio = dot(w, projection_axis(f.image_theta));
    f.offset = dot(ifs.map(i).translation, projection_axis(theta));
    return f;
}

StoppingWalkResult stopping_walk(const SelfAffineIFS& ifs, SymbolStream& symbols, Direction theta,
                                 double level_spacing, int count) {
    if (!(level_spacing >= 1.0)) throw ConfigError("stopping_walk: level spacing must be >= 1");
    if (count < 1) throw ConfigError("stopping_walk: count must be >= 1");

    StoppingWalkResult result;
    result.records.reserve(static_cast<std::size_t>(count));
    Direction theta_cur = theta;
    double total = 0.0;
    std::size_t n = 0;
    int level = 1;
    while (static_cast<int>(result.records.size()) < count) {
        const int sym = symbols.next();
        result.symbols.push_back(sym);
        ++n;
        total += symbol_length_log2(ifs, sym, theta_cur);
        theta_cur = phi_map(ifs, sym, theta_cur);
        while (total >= level_spacing * level &&
               static_cast<int>(result.records.size()) < count) {
            result.records.push_back({n, total, theta_cur});
            ++level;
        }
    }
    return result;
}

std::vector<std::size_t> stopping_indices(const SelfAffineIFS& ifs, SymbolStream& symbols,
                                          Direction theta, double level_spacing, int count) {
    const auto walk = stopping_walk(ifs, symbols, theta, level_spacing, count);
    std::vector<std::size_t> out;
    out.reserve(walk.records.size());
    for (const StoppingRecord& r : walk.records) out.push_back(r.index);
    return out;
}

double r_entropy(const AtomicMeasure1D& nu, double r) {
    if (!(r > 0.0)) throw ConfigError("r_entropy: r must be positive");
    const auto& xs = nu.positions();
    const auto& ws = nu.weights();
    std::vector<double> prefix(xs.size() + 1, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) prefix[i + 1] = prefix[i] + ws[i];

    double h = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto lo = std::lower_bound(xs.begin(), xs.end(), xs[i] - r) - xs.begin();
        const auto hi = std::upper_bound(xs.begin(), xs.end(), xs[i] + r) - xs.begin();
        const double mass = prefix[static_cast<std::size_t>(hi)] -
                            prefix[static_cast<std::size_t>(lo)];
        h -= ws[i] * std::log(mass);
    }
    return std::max(h, 0.0);
}

bool rescaled_entropy_identity_check(const AtomicMeasure1D& nu, double rho, double r,
                                     double tol) {
    const double lhs = r_entropy(scale_measure(nu, rho), r);
    const double rhs = r_entropy(nu, r / rho);
    return std::abs(lhs - rhs) <= tol;
}

AtomicMeasure1D projected_measure(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                  Direction theta, std::size_t n_atoms, int depth,
                                  std::uint64_t seed) {
    const auto points = chaos_game(ifs, weights, n_atoms, depth, seed);
    std::vector<double> xs;
    xs.reserve(points.size());
    for (const Vec2& p : points) xs.push_back(project_point(p, theta));
    return AtomicMeasure1D::equal_weights(std::move(xs));
}

DimensionFit local_dimension_estimate(const AtomicMeasure1D& nu, double r_min, double r_max,
                                      int n_r) {
    if (!(r_min > 0.0 && r_min < r_max && r_max < 1.0)) {
        throw ConfigError("local_dimension_estimate: need 0 < r_min < r_max < 1");
    }
    if (n_r < 4) throw ConfigError("local_dimension_estimate: n_r must be >= 4");
    if (nu.size() < 2) return {0.0, 0.0};

    std::vector<double> xs(static_cast<std::size_t>(n_r));
    std::vector<double> ys(static_cast<std::size_t>(n_r));
    for (int t = 0; t < n_r; ++t) {
        const double r = r_max * std::pow(r_min / r_max, static_cast<double>(t) / (n_r - 1));
        xs[static_cast<std::size_t>(t)] = -std::log(r);
        ys[static_cast<std::size_t>(t)] = r_entropy(nu, r);
    }

    double mx = 0.0, my = 0.0;
    for (int t = 0; t < n_r; ++t) {
        mx += xs[static_cast<std::size_t>(t)];
        my += ys[static_cast<std::size_t>(t)];
    }
    mx /= n_r;
    my /= n_r;
    double sxx = 0.0, sxy = 0.0;
    for (int t = 0; t < n_r; ++t) {
        const double dx = xs[static_cast<std::size_t>(t)] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[static_cast<std::size_t>(t)] - my);
    }
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (int t = 0; t < n_r; ++t) {
        const double e = ys[static_cast<std::size_t>(t)] - my -
                         slope * (xs[static_cast<std::size_t>(t)] - mx);
        ssr += e * e;
    }
    const double sigma2 = n_r > 2 ? ssr / (n_r - 2) : 0.0;
    return {slope, std::sqrt(sigma2 / sxx)};
}

std::vector<ThetaScanRow> theta_scan(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                     int n_theta, const ScanParams& params, std::uint64_t seed) {
    if (n_theta < 1) throw ConfigError("theta_scan: n_theta must be >= 1");
    const int workers = std::max(1, params.workers);
    const auto exceptional = exceptional_set(ifs);
    const double spacing = std::numbers::pi / n_theta;

    std::vector<Direction> grid;
    grid.reserve(static_cast<std::size_t>(n_theta) + 1);
    for (int t = 0; t < n_theta; ++t) {
        Direction d((t + 0.5) * spacing);
        // the half-step offset avoids the exceptional direction for the
        // usual grids; nudge in the remaining degenerate cases
        if (exceptional && direction_distance(d, *exceptional) < 1e-12) {
            d = Direction(d.theta() + 1e-3 * spacing);
        }
        grid.push_back(d);
    }
    if (params.include_exceptional && exceptional) grid.push_back(*exceptional);

    std::vector<ThetaScanRow> rows(grid.size());
    auto compute_row = [&](std::size_t t) {
        const Direction theta = grid[t];
        const auto nu = projected_measure(ifs, weights, theta, params.n_atoms, params.depth,
                                          derive_seed(seed, t));
        const auto fit = local_dimension_estimate(nu, params.r_min, params.r_max, params.n_r);
        ThetaScanRow row;
        row.theta = theta;
        row.beta_hat = std::clamp(fit.beta_hat, 0.0, 1.2);
        row.std_err = fit.std_err;
        row.r_min = params.r_min;
        row.r_max = params.r_max;
        row.n_atoms = params.n_atoms;
        row.near_exceptional =
            exceptional && direction_distance(theta, *exceptional) <= spacing;
        rows[t] = row;
    };

    if (workers == 1) {
        for (std::size_t t = 0; t < grid.size(); ++t) compute_row(t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t t = static_cast<std::size_t>(w); t < grid.size();
                     t += static_cast<std::size_t>(workers)) {
                    compute_row(t);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }
    return rows;
}

EntropyAverageResult entropy_average_statistic(const SelfAffineIFS& ifs,
                                               const BernoulliWeights& weights, Direction theta,
                                               double level_spacing, int n_terms,
                                               const EntropyAverageParams& params,
                                               std::uint64_t seed) {
    if (!(level_spacing >= 2.0)) {
        throw ConfigError("entropy_average_statistic: level spacing must be >= 2");
    }
    if (n_terms < 10) throw ConfigError("entropy_average_statistic: n_terms must be >= 10");

    BernoulliStream stream(weights.p, derive_seed(seed, 0));
    const auto walk = stopping_walk(ifs, stream, theta, level_spacing, n_terms);

    EntropyAverageResult result;
    result.terms_requested = n_terms;
    for (int i = 1; i <= n_terms; ++i) {
        const StoppingRecord& rec = walk.records[static_cast<std::size_t>(i) - 1];
        // rescaled radius 2^{|w|_theta - (i+1)N}, which stays of order 2^{-N}
        const double radius = std::exp2(rec.length_log2 - (i + 1) * level_spacing);
        const auto nu = projected_measure(ifs, weights, rec.theta_after, params.n_atoms,
                                          params.depth, derive_seed(seed, static_cast<std::uint64_t>(i)));
        const double h = r_entropy(nu, radius);
        // geometric-mean ball occupancy; below the floor the entropy is
        // dominated by sampling noise, so the sum truncates there
        const double occupancy = static_cast<double>(params.n_atoms) * std::exp(-h);
        if (occupancy < static_cast<double>(params.min_ball_occupancy)) {
            result.first_unreliable_term = i;
            break;
        }
        result.term_entropies.push_back(h);
    }
    result.terms_used = static_cast<int>(result.term_entropies.size());
    if (result.terms_used > 0) {
        double sum = 0.0;
        for (double h : result.term_entropies) sum += h;
        result.value = sum / (level_spacing * std::numbers::ln2 * result.terms_used);
    }
    return result;
}

}  // namespace affineproj
