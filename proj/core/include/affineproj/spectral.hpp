#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "affineproj/ifs.hpp"

namespace affineproj {

inline constexpr std::uint64_t kDefaultWordBudget = 10'000'000;

/// Finite-word pressure p_n/n with rigorous one-sided bounds.
struct PressureEstimate {
    double s = 0.0;
    int word_length = 0;
    double value = 0.0;        // (1/n) log sum_{|w|=n} phi^s(A_w)
    double upper_bound = 0.0;  // = value, by subadditivity
    double lower_bound = 0.0;  // value - log(c_est)/n
};

/// Exact enumeration of all k^n words. Throws BudgetError when k^n exceeds
/// the budget.
PressureEstimate pressure(const SelfAffineIFS& ifs, double s, int n,
                          std::uint64_t budget = kDefaultWordBudget);

struct AffinityResult {
    double value = 0.0;     // clamped to [0, 2] for reporting
    double raw_root = 0.0;  // unclamped pressure zero
    bool clamped = false;
    double tol = 0.0;
    int word_length = 0;
};

/// Affinity dimension: zero of s -> pressure(ifs, s, n).value, found by
/// bisection on [0, 4]. The pressure is strictly decreasing in s for
/// contracting systems; a positive value at s = 4 signals invalid input.
AffinityResult affinity_dimension(const SelfAffineIFS& ifs, double tol = 1e-4, int n = 8,
                                  std::uint64_t budget = kDefaultWordBudget);

/// -sum p_i log p_i in nats.
double shannon_entropy(const BernoulliWeights& weights);

struct LyapunovReport {
    double lambda1 = 0.0;  // nats per symbol, lambda1 >= lambda2
    double lambda2 = 0.0;
    double std_err_lambda1 = 0.0;
    double std_err_lambda2 = 0.0;
    double entropy = 0.0;  // nats
    double dim_lyapunov = 0.0;
    double dim_lyapunov_raw = 0.0;
    bool clamped = false;
    int n_steps = 0;
    int n_samples = 0;
};

/// Monte Carlo Lyapunov exponents of random matrix products, with a QR
/// re-orthogonalization each step so that 0.4^n-type underflow never occurs.
/// Per-sample seeds are derived from (seed, sample index).
LyapunovReport lyapunov_exponents(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                  int n_steps, int n_samples, std::uint64_t seed);

/// Bernoulli measure on blocks of length N whose weights are phi^{s_N}(A_w),
/// with s_N chosen so the weights sum to one.
struct BlockMeasure {
    int block_length = 0;
    double s_exponent = 0.0;
    int alphabet_size = 0;
    std::vector<double> weights;  // indexed by word, base-k big-endian

    Word word_at(std::size_t index) const;
};

BlockMeasure block_bernoulli(const SelfAffineIFS& ifs, int block_length, double tol = 1e-10,
                             std::uint64_t budget = kDefaultWordBudget);

/// Sampled sub/super-multiplicativity constant: the max over random word
/// pairs of ||A_a|| ||A_b|| / ||A_a A_b||. Requires strict positivity, which
/// makes the true constant finite. Pair j is a deterministic function of
/// (seed, j), so the estimate is a running maximum in n_pairs.
double cone_constant(const SelfAffineIFS& ifs, int n_max, int n_pairs, std::uint64_t seed);

namespace detail {

/// The deterministic word pair used by cone_constant for index j.
std::pair<Word, Word> cone_pair(int alphabet, int n_max, std::uint64_t seed, std::uint64_t index);

/// cone_constant without the positivity check; used internally for pressure
/// lower bounds where the value is a diagnostic, not a guarantee.
double norm_ratio_constant(const SelfAffineIFS& ifs, int n_max, int n_pairs, std::uint64_t seed);

}  // namespace detail

}  // namespace affineproj
