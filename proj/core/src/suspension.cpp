#include "affineproj/suspension.hpp"

#include <algorithm>
#include <cmath>

namespace affineproj {

FlowState skew_step(const SelfAffineIFS& ifs, SymbolStream& symbols, const FlowState& state) {
    const int sym = symbols.next();
    return {state.offset + 1, phi_map(ifs, sym, state.theta), 0.0};
}

double roof(const SelfAffineIFS& ifs, int symbol, Direction theta) {
    return symbol_length_log2(ifs, symbol, theta);
}

FlowState flow_to_time(const SelfAffineIFS& ifs, SymbolStream& symbols, FlowState state,
                       double s) {
    if (!(s >= 0.0)) throw ConfigError("flow_to_time: time must be nonnegative");
    double remaining = s;
    double rf = roof(ifs, symbols.peek(), state.theta);
    // cross base levels through the identification (a, theta, roof) ~
    // (sigma a, phi_{a_1} theta, 0); landing exactly on the roof shifts too
    while (state.t + remaining >= rf) {
        remaining -= rf - state.t;
        const int sym = symbols.next();
        state.theta = phi_map(ifs, sym, state.theta);
        state.offset += 1;
        state.t = 0.0;
        rf = roof(ifs, symbols.peek(), state.theta);
    }
    state.t += remaining;
    return state;
}

std::vector<Direction> time_N_orbit(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                    Direction theta0, double flow_step, std::size_t I,
                                    std::uint64_t seed) {
    if (!(flow_step > 0.0)) throw ConfigError("time_N_orbit: flow step must be positive");
    BernoulliStream stream(weights.p, derive_seed(seed, 0));
    FlowState state{0, theta0, 0.0};
    std::vector<Direction> orbit;
    orbit.reserve(I);
    for (std::size_t i = 0; i < I; ++i) {
        state = flow_to_time(ifs, stream, state, flow_step);
        orbit.push_back(state.theta);
    }
    return orbit;
}

namespace detail {

EmpiricalDirectionMeasure nu_f_estimate_unchecked(const SelfAffineIFS& ifs,
                                                  const BernoulliWeights& weights,
                                                  std::size_t n_samples, int burn_in,
                                                  std::uint64_t seed) {
    if (n_samples == 0) throw ConfigError("nu_F_estimate: need at least one sample");
    if (burn_in < 1) throw ConfigError("nu_F_estimate: burn_in must be >= 1");
    if (weights.size() != ifs.size()) {
        throw ConfigError("nu_F_estimate: weights/maps size mismatch");
    }
    const SymbolSampler sampler(weights.p);
    std::vector<DirectionAtom> atoms(n_samples);
    std::vector<int> word(static_cast<std::size_t>(burn_in));
    double total = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        std::mt19937_64 rng(derive_seed(seed, j));
        for (int t = 0; t < burn_in; ++t) word[static_cast<std::size_t>(t)] = sampler(rng);
        Direction theta(kConeMidpoint);
        for (int t = burn_in - 1; t >= 0; --t) {
            theta = phi_map(ifs, word[static_cast<std::size_t>(t)], theta);
        }
        // weight by the Lebesgue fiber length |a_1|_theta of an independent
        // first symbol; this realizes the projective marginal of the
        // flow-invariant measure
        const int first = sampler(rng);
        atoms[j] = {theta, roof(ifs, first, theta)};
        total += atoms[j].weight;
    }
    for (DirectionAtom& a : atoms) a.weight /= total;
    return EmpiricalDirectionMeasure(std::move(atoms));
}

}  // namespace detail

EmpiricalDirectionMeasure nu_F_estimate(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                        std::size_t n_samples, int burn_in, std::uint64_t seed) {
    ifs.require_strictly_positive("nu_F_estimate");
    return detail::nu_f_estimate_unchecked(ifs, weights, n_samples, burn_in, seed);
}

double arc_ks_distance(const EmpiricalDirectionMeasure& a, const EmpiricalDirectionMeasure& b,
                       int n_bins) {
    if (n_bins < 1) throw ConfigError("arc_ks_distance: n_bins must be >= 1");
    const double bin_width = std::numbers::pi / n_bins;
    auto bin_masses = [&](const EmpiricalDirectionMeasure& m) {
        std::vector<double> mass(static_cast<std::size_t>(n_bins), 0.0);
        for (const DirectionAtom& atom : m.atoms()) {
            const int j =
                std::min(static_cast<int>(atom.theta.theta() / bin_width), n_bins - 1);
            mass[static_cast<std::size_t>(j)] += atom.weight;
        }
        return mass;
    };
    const auto ma = bin_masses(a);
    const auto mb = bin_masses(b);
    double cum = 0.0;
    double dist = 0.0;
    for (int j = 0; j < n_bins; ++j) {
        cum += ma[static_cast<std::size_t>(j)] - mb[static_cast<std::size_t>(j)];
        dist = std::max(dist, std::abs(cum));
    }
    return dist;
}

double equidistribution_statistic(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                  Direction theta0, double flow_step, std::size_t I, int n_bins,
                                  std::uint64_t seed, const EmpiricalDirectionMeasure& target) {
    const auto exceptional = exceptional_set(ifs);
    if (exceptional && direction_distance(theta0, *exceptional) < 1e-9) {
        throw ExceptionalDirectionError(
            "equidistribution_statistic: theta0 is the exceptional direction");
    }
    const auto orbit = time_N_orbit(ifs, weights, theta0, flow_step, I, seed);
    std::vector<DirectionAtom> atoms;
    atoms.reserve(orbit.size());
    const double w = 1.0 / static_cast<double>(orbit.size());
    for (const Direction& d : orbit) atoms.push_back({d, w});
    return arc_ks_distance(EmpiricalDirectionMeasure(std::move(atoms)), target, n_bins);
}

double equidistribution_statistic(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                  Direction theta0, double flow_step, std::size_t I, int n_bins,
                                  std::uint64_t seed, std::size_t nu_samples, int nu_burn_in) {
    ifs.require_strictly_positive("equidistribution_statistic");
    const auto target =
        nu_F_estimate(ifs, weights, nu_samples, nu_burn_in, derive_seed(seed, 0xf10eULL));
    return equidistribution_statistic(ifs, weights, theta0, flow_step, I, n_bins, seed, target);
}

}  // namespace affineproj
