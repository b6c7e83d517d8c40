#pragma once

#include <cstdint>
#include <vector>

#include "affineproj/projection.hpp"

namespace affineproj {

/// Point of the suspension space: how many base symbols were consumed, the
/// current direction, and the time 0 <= t < roof spent over the current base
/// point. The identification (a, theta, roof) ~ (sigma a, phi_{a_1} theta, 0)
/// is applied eagerly.
struct FlowState {
    std::size_t offset = 0;
    Direction theta;
    double t = 0.0;
};

/// One base step of the skew product: consumes the stream's next symbol and
/// maps theta through phi of it.
FlowState skew_step(const SelfAffineIFS& ifs, SymbolStream& symbols, const FlowState& state);

/// Roof over (a, theta): the single-symbol length |a_1|_theta (log2 units).
double roof(const SelfAffineIFS& ifs, int symbol, Direction theta);

/// Advances total flow time s, crossing base levels via the identification.
/// The stream must be positioned at state.offset.
FlowState flow_to_time(const SelfAffineIFS& ifs, SymbolStream& symbols, FlowState state, double s);

/// Directions of the time-N map orbit from (a, theta0, 0): the direction
/// coordinate at flow times N, 2N, ..., I*N along one mu-random sequence.
/// The stream is a BernoulliStream seeded with derive_seed(seed, 0), so the
/// orbit can be replayed symbol-for-symbol.
std::vector<Direction> time_N_orbit(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                    Direction theta0, double flow_step, std::size_t I,
                                    std::uint64_t seed);

/// Estimate of the projective marginal of the flow-invariant measure: draws
/// theta from the Furstenberg backward sampler and a first symbol from the
/// weights, then weights the atom by the roof (the Lebesgue fiber length) and
/// normalizes. Equivalent to the Furstenberg measure.
EmpiricalDirectionMeasure nu_F_estimate(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                        std::size_t n_samples, int burn_in, std::uint64_t seed);

/// Binned Kolmogorov-Smirnov distance on n_bins arcs of [0, pi), anchored at
/// theta = 0: the max absolute difference of cumulative bin masses.
double arc_ks_distance(const EmpiricalDirectionMeasure& a, const EmpiricalDirectionMeasure& b,
                       int n_bins);

/// Equidistribution test: KS-type distance between the empirical law of the
/// time-N orbit and the nu_F estimate. Rejects theta0 at the exceptional
/// direction. The target may be passed in to share one estimate across seeds.
double equidistribution_statistic(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                  Direction theta0, double flow_step, std::size_t I, int n_bins,
                                  std::uint64_t seed, std::size_t nu_samples = 50000,
                                  int nu_burn_in = 80);

double equidistribution_statistic(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                  Direction theta0, double flow_step, std::size_t I, int n_bins,
                                  std::uint64_t seed, const EmpiricalDirectionMeasure& target);

namespace detail {

/// nu_F_estimate without the positivity check, for systems (constant-roof
/// scaled rotations) where the construction still makes sense numerically.
EmpiricalDirectionMeasure nu_f_estimate_unchecked(const SelfAffineIFS& ifs,
                                                  const BernoulliWeights& weights,
                                                  std::size_t n_samples, int burn_in,
                                                  std::uint64_t seed);

}  // namespace detail

}  // namespace affineproj
