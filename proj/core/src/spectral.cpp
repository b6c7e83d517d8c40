#include "affineproj/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace affineproj {

namespace {

std::uint64_t word_count_checked(int k, int n, std::uint64_t budget) {
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) {
        if (count > budget / static_cast<std::uint64_t>(k)) {
            throw BudgetError("word enumeration k^n = " + std::to_string(k) + "^" +
                              std::to_string(n) + " exceeds the budget of " +
                              std::to_string(budget));
        }
        count *= static_cast<std::uint64_t>(k);
    }
    return count;
}

/// Singular value pairs of every length-n product, in lexicographic word
/// order.
std::vector<SingularValues> enumerate_word_svals(const SelfAffineIFS& ifs, int n,
                                                 std::uint64_t budget) {
    const std::uint64_t count = word_count_checked(ifs.size(), n, budget);
    std::vector<SingularValues> out;
    out.reserve(count);
    // DFS over the word tree, sharing prefix products.
    std::vector<Matrix2> stack(static_cast<std::size_t>(n) + 1);
    std::vector<int> word(static_cast<std::size_t>(n), 0);
    stack[0] = Matrix2::identity();
    if (n == 0) {
        out.push_back(singular_values(stack[0]));
        return out;
    }
    int depth = 0;
    while (true) {
        while (depth < n) {
            stack[static_cast<std::size_t>(depth) + 1] =
                stack[static_cast<std::size_t>(depth)] * ifs.matrix(word[static_cast<std::size_t>(depth)]);
            ++depth;
        }
        out.push_back(singular_values(stack[static_cast<std::size_t>(n)]));
        // advance the odometer
        while (depth > 0 && word[static_cast<std::size_t>(depth) - 1] == ifs.size() - 1) {
            word[static_cast<std::size_t>(depth) - 1] = 0;
            --depth;
        }
        if (depth == 0) break;
        ++word[static_cast<std::size_t>(depth) - 1];
        --depth;
    }
    return out;
}

double svf_from_svals(const SingularValues& sv, double s) {
    if (s <= 1.0) return std::pow(sv.alpha1, s);
    if (s <= 2.0) return sv.alpha1 * std::pow(sv.alpha2, s - 1.0);
    return std::pow(sv.alpha1 * sv.alpha2, 0.5 * s);
}

double pressure_from_svals(const std::vector<SingularValues>& svals, double s, int n) {
    double sum = 0.0;
    for (const SingularValues& sv : svals) sum += svf_from_svals(sv, s);
    return std::log(sum) / n;
}

}  // namespace

PressureEstimate pressure(const SelfAffineIFS& ifs, double s, int n, std::uint64_t budget) {
    if (s < 0.0) throw ConfigError("pressure: s must be nonnegative");
    if (n < 1) throw ConfigError("pressure: word length must be >= 1");
    const auto svals = enumerate_word_svals(ifs, n, budget);
    const double value = pressure_from_svals(svals, s, n);

    PressureEstimate est;
    est.s = s;
    est.word_length = n;
    est.value = value;
    // p_m/m decreases to the limit (subadditivity), so the finite value is an
    // upper bound; the one-sided supermultiplicativity constant gives the
    // lower bound value - log(c)/n.
    est.upper_bound = value;
    const double c_est = detail::norm_ratio_constant(ifs, std::min(n, 6), 200, 0x5eedULL);
    est.lower_bound = value - std::log(c_est) / n;
    return est;
}

AffinityResult affinity_dimension(const SelfAffineIFS& ifs, double tol, int n,
                                  std::uint64_t budget) {
    if (!(tol > 0.0)) throw ConfigError("affinity_dimension: tol must be positive");
    if (n < 1) throw ConfigError("affinity_dimension: word length must be >= 1");
    const auto svals = enumerate_word_svals(ifs, n, budget);
    auto p = [&](double s) { return pressure_from_svals(svals, s, n); };

    AffinityResult result;
    result.tol = tol;
    result.word_length = n;

    double lo = 0.0;
    double hi = 4.0;
    double p_lo = p(lo);
    if (p_lo <= 0.0) {
        // k = 1 gives pressure log(1) = 0 at s = 0; the root sits on the
        // boundary.
        result.value = 0.0;
        result.raw_root = 0.0;
        return result;
    }
    if (p(hi) >= 0.0) {
        throw PreconditionError(
            "affinity_dimension: pressure still positive at s = 4; input is not a valid "
            "contracting system");
    }

    int iterations = 0;
    double mid = 0.5 * (lo + hi);
    while (iterations < 200) {
        mid = 0.5 * (lo + hi);
        const double pm = p(mid);
        if (pm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iterations;
        if (hi - lo < 0.25 * tol) {
            // stop once the residual is provably inside the slope band
            const double h = std::max(0.5 * tol, 1e-7);
            const double slope = (p(mid + h) - p(mid - h)) / (2.0 * h);
            if (std::abs(p(mid)) < tol * std::abs(slope)) break;
        }
    }

    result.raw_root = mid;
    result.clamped = mid > 2.0;
    result.value = std::clamp(mid, 0.0, 2.0);
    return result;
}

double shannon_entropy(const BernoulliWeights& weights) {
    double h = 0.0;
    for (double w : weights.p) h -= w * std::log(w);
    return h;
}

namespace {

struct QRStep {
    Matrix2 q;
    double r11 = 0.0;
    double r22 = 0.0;
};

QRStep qr2(const Matrix2& m) {
    QRStep st;
    const double n1 = std::hypot(m.a11, m.a21);
    double q11, q21;
    if (n1 > 0.0) {
        q11 = m.a11 / n1;
        q21 = m.a21 / n1;
    } else {
        q11 = 1.0;
        q21 = 0.0;
    }
    const double r12 = q11 * m.a12 + q21 * m.a22;
    const double u1 = m.a12 - r12 * q11;
    const double u2 = m.a22 - r12 * q21;
    const double n2 = std::hypot(u1, u2);
    double q12, q22;
    if (n2 > 0.0) {
        q12 = u1 / n2;
        q22 = u2 / n2;
    } else {
        q12 = -q21;
        q22 = q11;
    }
    st.q = Matrix2{q11, q12, q21, q22};
    st.r11 = n1;
    st.r22 = n2;
    return st;
}

}  // namespace

LyapunovReport lyapunov_exponents(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                  int n_steps, int n_samples, std::uint64_t seed) {
    if (n_steps < 100) throw ConfigError("lyapunov_exponents: n_steps must be >= 100");
    if (n_samples < 1) throw ConfigError("lyapunov_exponents: n_samples must be >= 1");
    if (weights.size() != ifs.size()) {
        throw ConfigError("lyapunov_exponents: weights/maps size mismatch");
    }

    const SymbolSampler sampler(weights.p);
    // Short warmup lets the frame align with the top singular direction
    // before logging starts, removing the O(1/n) alignment transient.
    const int warmup = std::clamp(n_steps / 10, 16, 200);

    std::vector<double> est1(static_cast<std::size_t>(n_samples));
    std::vector<double> est2(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
        Matrix2 q = Matrix2::identity();
        for (int t = 0; t < warmup; ++t) q = qr2(ifs.matrix(sampler(rng)) * q).q;
        double s1 = 0.0;
        double s2 = 0.0;
        for (int t = 0; t < n_steps; ++t) {
            const QRStep st = qr2(ifs.matrix(sampler(rng)) * q);
            q = st.q;
            s1 += std::log(st.r11);
            s2 += std::log(st.r22);
        }
        est1[static_cast<std::size_t>(j)] = s1 / n_steps;
        est2[static_cast<std::size_t>(j)] = s2 / n_steps;
    }

    auto mean_se = [n_samples](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= n_samples;
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var = n_samples > 1 ? var / (n_samples - 1) : 0.0;
        return std::pair<double, double>(mean, std::sqrt(var / n_samples));
    };
    auto [l1, se1] = mean_se(est1);
    auto [l2, se2] = mean_se(est2);
    if (l1 < l2) {
        std::swap(l1, l2);
        std::swap(se1, se2);
    }

    LyapunovReport report;
    report.lambda1 = l1;
    report.lambda2 = l2;
    report.std_err_lambda1 = se1;
    report.std_err_lambda2 = se2;
    report.entropy = shannon_entropy(weights);
    report.n_steps = n_steps;
    report.n_samples = n_samples;

    const double h = report.entropy;
    double dim;
    if (h <= -l1) {
        dim = l1 < 0.0 ? h / (-l1) : 0.0;
    } else {
        dim = l2 < 0.0 ? 1.0 + (h + l1) / (-l2) : 2.0;
    }
    report.dim_lyapunov_raw = dim;
    report.dim_lyapunov = std::clamp(dim, 0.0, 2.0);
    report.clamped = report.dim_lyapunov != dim;
    return report;
}

Word BlockMeasure::word_at(std::size_t index) const {
    Word w(static_cast<std::size_t>(block_length));
    for (int pos = block_length - 1; pos >= 0; --pos) {
        w[static_cast<std::size_t>(pos)] =
            static_cast<int>(index % static_cast<std::size_t>(alphabet_size));
        index /= static_cast<std::size_t>(alphabet_size);
    }
    return w;
}

BlockMeasure block_bernoulli(const SelfAffineIFS& ifs, int block_length, double tol,
                             std::uint64_t budget) {
    if (block_length < 1) throw ConfigError("block_bernoulli: block length must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("block_bernoulli: tol must be positive");
    const auto svals = enumerate_word_svals(ifs, block_length, budget);

    auto total = [&](double s) {
        double sum = 0.0;
        for (const SingularValues& sv : svals) sum += svf_from_svals(sv, s);
        return sum;
    };

    // sum phi^s over the blocks is continuous and strictly decreasing in s;
    // bisect sum = 1 on [0, 4].
    const double goal_tol = std::min(tol, 1e-11);
    double lo = 0.0;
    double hi = 4.0;
    if (total(lo) - 1.0 < 0.0) {
        throw PreconditionError("block_bernoulli: block sum below 1 at s = 0");
    }
    if (total(hi) - 1.0 >= 0.0) {
        throw PreconditionError("block_bernoulli: block sum still >= 1 at s = 4");
    }
    double mid = 0.0;
    for (int it = 0; it < 300; ++it) {
        mid = 0.5 * (lo + hi);
        const double g = total(mid) - 1.0;
        if (std::abs(g) <= goal_tol || hi - lo < 1e-15) break;
        if (g > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    BlockMeasure block;
    block.block_length = block_length;
    block.s_exponent = mid;
    block.alphabet_size = ifs.size();
    block.weights.reserve(svals.size());
    for (const SingularValues& sv : svals) block.weights.push_back(svf_from_svals(sv, mid));
    return block;
}

namespace detail {

std::pair<Word, Word> cone_pair(int alphabet, int n_max, std::uint64_t seed,
                                std::uint64_t index) {
    std::mt19937_64 rng(derive_seed(seed, index));
    std::uniform_int_distribution<int> len(1, n_max);
    std::uniform_int_distribution<int> sym(0, alphabet - 1);
    Word a(static_cast<std::size_t>(len(rng)));
    for (int& s : a) s = sym(rng);
    Word b(static_cast<std::size_t>(len(rng)));
    for (int& s : b) s = sym(rng);
    return {std::move(a), std::move(b)};
}

double norm_ratio_constant(const SelfAffineIFS& ifs, int n_max, int n_pairs,
                           std::uint64_t seed) {
    if (n_max < 1) throw ConfigError("cone_constant: n_max must be >= 1");
    if (n_pairs < 1) throw ConfigError("cone_constant: n_pairs must be >= 1");
    double c = 1.0;
    for (int j = 0; j < n_pairs; ++j) {
        const auto [wa, wb] = cone_pair(ifs.size(), n_max, seed, static_cast<std::uint64_t>(j));
        const Matrix2 ma = word_matrix(ifs, wa);
        const Matrix2 mb = word_matrix(ifs, wb);
        const double denom = operator_norm(ma * mb);
        if (denom > 0.0) {
            c = std::max(c, operator_norm(ma) * operator_norm(mb) / denom);
        }
    }
    return c;
}

}  // namespace detail

double cone_constant(const SelfAffineIFS& ifs, int n_max, int n_pairs, std::uint64_t seed) {
    ifs.require_strictly_positive("cone_constant");
    return detail::norm_ratio_constant(ifs, n_max, n_pairs, seed);
}

}  // namespace affineproj
