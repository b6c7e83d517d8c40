#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "affineproj/ifs.hpp"

namespace affineproj {

/// A point of the projective line: the line through the origin at angle
/// theta, with theta normalized into [0, pi).
class Direction {
public:
    Direction() = default;
    explicit Direction(double theta_radians) {
        if (!std::isfinite(theta_radians)) throw ConfigError("Direction: angle must be finite");
        double m = std::fmod(theta_radians, std::numbers::pi);
        if (m < 0.0) m += std::numbers::pi;
        if (m >= std::numbers::pi) m = 0.0;
        if (m == 0.0) m = 0.0;  // normalize -0.0
        theta_ = m;
    }

    double theta() const { return theta_; }

private:
    double theta_ = 0.0;
};

/// Projective metric d(a, b) = min(|a-b|, pi - |a-b|).
inline double direction_distance(Direction a, Direction b) {
    const double d = std::abs(a.theta() - b.theta());
    return std::min(d, std::numbers::pi - d);
}

/// Direction of a nonzero vector.
inline Direction direction_of(Vec2 v) {
    if (v.x == 0.0 && v.y == 0.0) throw ConfigError("direction_of: zero vector");
    return Direction(std::atan2(v.y, v.x));
}

/// Unit vector (cos theta, sin theta) spanning the line.
inline Vec2 unit_vector(Direction d) { return {std::cos(d.theta()), std::sin(d.theta())}; }

/// Lines with negative slope, theta in (pi/2, pi). Strictly positive matrices
/// act on this cone through their inverses as strict contractions.
inline bool in_negative_quadrant_cone(Direction d) {
    return d.theta() > 0.5 * std::numbers::pi && d.theta() < std::numbers::pi;
}

struct DirectionAtom {
    Direction theta;
    double weight = 0.0;
};

/// Finitely many weighted directions; weights positive and summing to one.
class EmpiricalDirectionMeasure {
public:
    explicit EmpiricalDirectionMeasure(std::vector<DirectionAtom> atoms);
    const std::vector<DirectionAtom>& atoms() const { return atoms_; }

private:
    std::vector<DirectionAtom> atoms_;
};

/// Angle of M * (cos theta, sin theta) reduced mod pi. Needs det M != 0.
Direction projective_action(const Matrix2& m, Direction theta);

/// The induced map phi_i: action of A_i^{-1} on the projective line.
Direction phi_map(const SelfAffineIFS& ifs, int i, Direction theta);

/// Contraction rate of the phi_i on the invariant part of the cone: grid
/// points are first driven onto the attractor, then the maximal ratio
/// d(phi_i x, phi_i y)/d(x, y) over sample pairs is returned. Throws
/// EstimateNotContractingError when a sampled ratio reaches 1.
double cone_contraction_rate(const SelfAffineIFS& ifs, int n_grid);

inline constexpr double kConeMidpoint = 0.75 * std::numbers::pi;

/// Backward-iteration samples of the Furstenberg measure: atom j is
/// phi_{a_1} o ... o phi_{a_burn}(theta0) with its own word drawn i.i.d.
/// from weights and per-atom seed derive_seed(seed, j). Backward orbits
/// converge geometrically, so deepening the burn-in only perturbs each atom
/// by rho^burn_in.
EmpiricalDirectionMeasure furstenberg_sample(const SelfAffineIFS& ifs,
                                             const BernoulliWeights& weights, int burn_in,
                                             std::size_t n_atoms, std::uint64_t seed,
                                             Direction theta0 = Direction(kConeMidpoint));

/// Max over n_bins arcs U of |nu(U) - sum_i p_i nu(phi_i^{-1} U)|. The
/// preimage masses are evaluated exactly by pushing every atom through phi_i
/// and re-binning.
double stationarity_residual(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                             const EmpiricalDirectionMeasure& nu, int n_bins);

/// The common dominant eigendirection of all the A_i when one exists within
/// tol, otherwise nullopt. The projection theorems hold off this single
/// direction. Complex eigenvalues are reported as InputNotPositiveError.
std::optional<Direction> exceptional_set(const SelfAffineIFS& ifs, double tol = 1e-9);

/// Eigendirection of the larger-modulus eigenvalue; nullopt when no unique
/// dominant direction exists (scalar matrices, equal-modulus pairs).
std::optional<Direction> dominant_eigendirection(const Matrix2& m);

namespace detail {

/// Shared backward-iteration sampler, without precondition checks.
std::vector<Direction> backward_direction_samples(const SelfAffineIFS& ifs,
                                                  const BernoulliWeights& weights, int burn_in,
                                                  std::size_t n_atoms, std::uint64_t seed,
                                                  Direction theta0);

}  // namespace detail

}  // namespace affineproj
