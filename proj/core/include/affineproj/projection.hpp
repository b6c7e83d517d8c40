#pragma once

#include <cstdint>
#include <vector>

#include "affineproj/projective.hpp"
#include "affineproj/random.hpp"

namespace affineproj {

/// Finitely supported probability measure on [-1, 1]. Atoms are kept sorted
/// by position.
class AtomicMeasure1D {
public:
    AtomicMeasure1D(std::vector<double> positions, std::vector<double> weights);
    static AtomicMeasure1D equal_weights(std::vector<double> positions);

    const std::vector<double>& positions() const { return positions_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return positions_.size(); }

private:
    std::vector<double> positions_;
    std::vector<double> weights_;
};

/// S_rho: pushes the measure through x -> rho * x.
AtomicMeasure1D scale_measure(const AtomicMeasure1D& nu, double rho);

/// Coordinate along u_theta = (-sin theta, cos theta); collapses lines of
/// direction theta. The image of the unit disk is [-1, 1].
inline Vec2 projection_axis(Direction theta) {
    return {-std::sin(theta.theta()), std::cos(theta.theta())};
}

inline double project_point(Vec2 p, Direction theta) { return dot(p, projection_axis(theta)); }

/// Exact width of the projection of the cylinder ellipse T_w(D):
/// 2 ||A_w^T u_theta||. The empty word gives 2.
double projected_width(const SelfAffineIFS& ifs, const Word& w, Direction theta);

/// Length function value -log2(projected width / 2); zero on the empty word.
struct LengthFunctionValue {
    Word word;
    Direction theta;
    double value = 0.0;  // log2 units
};

LengthFunctionValue length(const SelfAffineIFS& ifs, const Word& w, Direction theta);

/// |i|_theta for a single symbol; the hot-path version of length().
double symbol_length_log2(const SelfAffineIFS& ifs, int symbol, Direction theta);

/// max_i sup_theta |i|_theta = max_i -log2(alpha2(A_i)), in closed form.
double lambda_max(const SelfAffineIFS& ifs);

/// The induced contraction f_{i,theta} of [-1, 1]: the affine map with
/// pi_theta(T_i p) = ratio * pi_{phi_i theta}(p) + offset for all p in D.
struct FContraction {
    double ratio = 0.0;  // signed; |ratio| = projected_width(ifs, {i}, theta)/2
    double offset = 0.0;
    Direction image_theta;  // phi_i(theta)
};

FContraction f_contraction(const SelfAffineIFS& ifs, int i, Direction theta);

/// Stopping data at level j: the first index n_j with
/// |a_1...a_{n_j-1}|_theta < N*j <= |a_1...a_{n_j}|_theta.
struct StoppingRecord {
    std::size_t index = 0;     // number of symbols consumed (1-based count)
    double length_log2 = 0.0;  // |a_1...a_{n_j}|_theta
    Direction theta_after;     // phi_{a_{n_j}} o ... o phi_{a_1}(theta)
};

struct StoppingWalkResult {
    std::vector<StoppingRecord> records;
    std::vector<int> symbols;  // everything consumed from the stream
};

/// Walks the stream incrementally through the length cocycle
///   |a_1...a_{n+1}|_theta - |a_1...a_n|_theta = |a_{n+1}|_{phi_{a_n...a_1}(theta)},
/// recording the first crossing of each level N*j. Indices are strictly
/// increasing whenever N >= lambda_max; a single symbol crossing several
/// levels repeats its index, matching the defining inequalities.
StoppingWalkResult stopping_walk(const SelfAffineIFS& ifs, SymbolStream& symbols, Direction theta,
                                 double level_spacing, int count);

std::vector<std::size_t> stopping_indices(const SelfAffineIFS& ifs, SymbolStream& symbols,
                                          Direction theta, double level_spacing, int count);

/// r-scale entropy -sum_x w_x log(nu(B_r(x))) in nats; exact on atoms, with
/// closed balls |y - x| <= r.
double r_entropy(const AtomicMeasure1D& nu, double r);

/// Checks the exact rescaling identity H_r(S_rho nu) = H_{r/rho}(nu).
bool rescaled_entropy_identity_check(const AtomicMeasure1D& nu, double rho, double r,
                                     double tol = 1e-12);

/// Projection of the chaos-game sample in direction theta, equal weights.
AtomicMeasure1D projected_measure(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                  Direction theta, std::size_t n_atoms, int depth,
                                  std::uint64_t seed);

struct DimensionFit {
    double beta_hat = 0.0;
    double std_err = 0.0;
};

/// Least-squares slope of H_r against -log r over a geometric r-grid.
/// Degenerate measures give slope 0 with zero error.
DimensionFit local_dimension_estimate(const AtomicMeasure1D& nu, double r_min, double r_max,
                                      int n_r);

struct ScanParams {
    std::size_t n_atoms = 20000;
    int depth = 40;
    double r_min = 1e-3;
    double r_max = 0.25;
    int n_r = 12;
    bool include_exceptional = false;  // append an explicit row at the exceptional direction
    int workers = 1;
};

struct ThetaScanRow {
    Direction theta;
    double beta_hat = 0.0;  // clamped to [0, 1.2]
    double std_err = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    std::size_t n_atoms = 0;
    bool near_exceptional = false;  // within one grid step of the exceptional direction
};

/// Dimension estimates of the projected measure over a uniform grid of
/// n_theta directions (offset by half a step so the exceptional direction is
/// never hit exactly unless explicitly requested). Row t uses seed
/// derive_seed(seed, t); rows are independent tasks, so the table does not
/// depend on the worker count.
std::vector<ThetaScanRow> theta_scan(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                                     int n_theta, const ScanParams& params, std::uint64_t seed);

struct EntropyAverageParams {
    std::size_t n_atoms = 20000;
    int depth = 40;
    std::size_t min_ball_occupancy = 20;  // truncate terms whose balls hold fewer atoms
};

struct EntropyAverageResult {
    double value = 0.0;  // (1 / (N log 2 * terms_used)) * sum of the entropies
    int terms_requested = 0;
    int terms_used = 0;
    int first_unreliable_term = 0;       // 1-based, 0 when every term was reliable
    std::vector<double> term_entropies;  // nats, one per used term
};

/// The entropy-average statistic: one mu-random symbol sequence, stopping
/// indices at levels N*i, and for each term the r-scale entropy of the
/// projected conditional measure on the cylinder [a_1...a_{n_i}] at radius
/// 2^{-(i+1)N}.
///
/// Each term is evaluated through the exact rescaling identity
///   H_{2^{-(i+1)N}}(pi_theta(mu_[w])) = H_{2^{|w|_theta-(i+1)N}}(pi_{theta'}(mu)),
/// theta' = phi_{a_{n_i}...a_1}(theta), which keeps all radii of order
/// 2^{-N} and avoids the double-precision collapse of deep cylinders.
/// The symbol stream is seeded with derive_seed(seed, 0) and term i samples
/// with derive_seed(seed, i).
EntropyAverageResult entropy_average_statistic(const SelfAffineIFS& ifs,
                                               const BernoulliWeights& weights, Direction theta,
                                               double level_spacing, int n_terms,
                                               const EntropyAverageParams& params,
                                               std::uint64_t seed);

}  // namespace affineproj
