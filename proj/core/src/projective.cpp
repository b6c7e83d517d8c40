#include "affineproj/projective.hpp"

#include <algorithm>
#include <cmath>

namespace affineproj {

EmpiricalDirectionMeasure::EmpiricalDirectionMeasure(std::vector<DirectionAtom> atoms)
    : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw ConfigError("EmpiricalDirectionMeasure: no atoms");
    double sum = 0.0;
    for (const DirectionAtom& a : atoms_) {
        if (!(a.weight > 0.0)) {
            throw ConfigError("EmpiricalDirectionMeasure: weights must be positive");
        }
        sum += a.weight;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw ConfigError("EmpiricalDirectionMeasure: weights must sum to 1 within 1e-10");
    }
}

Direction projective_action(const Matrix2& m, Direction theta) {
    if (m.det() == 0.0) {
        throw SingularMatrixError("projective_action: matrix must be invertible");
    }
    return direction_of(m * unit_vector(theta));
}

Direction phi_map(const SelfAffineIFS& ifs, int i, Direction theta) {
    return projective_action(ifs.inverse_matrix(i), theta);
}

double cone_contraction_rate(const SelfAffineIFS& ifs, int n_grid) {
    ifs.require_strictly_positive("cone_contraction_rate");
    if (n_grid < 2) throw ConfigError("cone_contraction_rate: n_grid must be >= 2");

    // Seed a grid across the cone and drive each point onto the attractor
    // along its own cyclic word; the ratios below then measure contraction
    // where the dynamics actually lives. Iteration stops once per-step
    // movement is small but nonzero, so pairs stay numerically resolvable.
    const double half_pi = 0.5 * std::numbers::pi;
    std::vector<Direction> pts;
    pts.reserve(static_cast<std::size_t>(n_grid));
    for (int j = 0; j < n_grid; ++j) {
        pts.emplace_back(half_pi + (j + 0.5) * half_pi / n_grid);
    }
    const int k = ifs.size();
    for (int step = 0; step < 200; ++step) {
        double movement = 0.0;
        for (int j = 0; j < n_grid; ++j) {
            const int sym = (j + step) % k;
            const Direction next = phi_map(ifs, sym, pts[static_cast<std::size_t>(j)]);
            movement = std::max(movement,
                                direction_distance(next, pts[static_cast<std::size_t>(j)]));
            pts[static_cast<std::size_t>(j)] = next;
        }
        if (step >= 8 && movement < 1e-7) break;
    }

    double rho = 0.0;
    for (int i = 0; i < k; ++i) {
        std::vector<Direction> images;
        images.reserve(pts.size());
        for (const Direction& d : pts) images.push_back(phi_map(ifs, i, d));
        for (std::size_t a = 0; a < pts.size(); ++a) {
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                const double base = direction_distance(pts[a], pts[b]);
                if (base < 1e-12) continue;
                rho = std::max(rho, direction_distance(images[a], images[b]) / base);
            }
        }
    }
    if (rho >= 1.0) {
        throw EstimateNotContractingError(
            "cone_contraction_rate: sampled ratio >= 1; cone contraction fails");
    }
    return rho;
}

namespace detail {

std::vector<Direction> backward_direction_samples(const SelfAffineIFS& ifs,
                                                  const BernoulliWeights& weights, int burn_in,
                                                  std::size_t n_atoms, std::uint64_t seed,
                                                  Direction theta0) {
    if (burn_in < 1) throw ConfigError("backward sampling: burn_in must be >= 1");
    if (weights.size() != ifs.size()) {
        throw ConfigError("backward sampling: weights/maps size mismatch");
    }
    const SymbolSampler sampler(weights.p);
    std::vector<Direction> out(n_atoms);
    std::vector<int> word(static_cast<std::size_t>(burn_in));
    for (std::size_t j = 0; j < n_atoms; ++j) {
        std::mt19937_64 rng(derive_seed(seed, j));
        for (int t = 0; t < burn_in; ++t) word[static_cast<std::size_t>(t)] = sampler(rng);
        // phi_{a_1} o ... o phi_{a_m}(theta0): apply the newest symbols on
        // the inside, so lengthening the word with the same seed moves the
        // atom by at most rho^burn_in.
        Direction theta = theta0;
        for (int t = burn_in - 1; t >= 0; --t) {
            theta = phi_map(ifs, word[static_cast<std::size_t>(t)], theta);
        }
        out[j] = theta;
    }
    return out;
}

}  // namespace detail

EmpiricalDirectionMeasure furstenberg_sample(const SelfAffineIFS& ifs,
                                             const BernoulliWeights& weights, int burn_in,
                                             std::size_t n_atoms, std::uint64_t seed,
                                             Direction theta0) {
    ifs.require_strictly_positive("furstenberg_sample");
    if (n_atoms == 0) throw ConfigError("furstenberg_sample: need at least one atom");
    const auto thetas =
        detail::backward_direction_samples(ifs, weights, burn_in, n_atoms, seed, theta0);
    std::vector<DirectionAtom> atoms;
    atoms.reserve(n_atoms);
    const double w = 1.0 / static_cast<double>(n_atoms);
    for (const Direction& d : thetas) atoms.push_back({d, w});
    return EmpiricalDirectionMeasure(std::move(atoms));
}

double stationarity_residual(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                             const EmpiricalDirectionMeasure& nu, int n_bins) {
    if (n_bins < 1) throw ConfigError("stationarity_residual: n_bins must be >= 1");
    if (weights.size() != ifs.size()) {
        throw ConfigError("stationarity_residual: weights/maps size mismatch");
    }
    const double bin_width = std::numbers::pi / n_bins;
    auto bin_of = [&](Direction d) {
        const int b = static_cast<int>(d.theta() / bin_width);
        return std::min(b, n_bins - 1);
    };

    // nu(phi_i^{-1} U_j) = sum of atom weights with phi_i(atom) in U_j, so
    // pushing every atom through phi_i and re-binning evaluates the preimage
    // masses exactly.
    std::vector<double> lhs(static_cast<std::size_t>(n_bins), 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(n_bins), 0.0);
    for (const DirectionAtom& a : nu.atoms()) {
        lhs[static_cast<std::size_t>(bin_of(a.theta))] += a.weight;
        for (int i = 0; i < ifs.size(); ++i) {
            const Direction image = phi_map(ifs, i, a.theta);
            rhs[static_cast<std::size_t>(bin_of(image))] +=
                weights.p[static_cast<std::size_t>(i)] * a.weight;
        }
    }
    double residual = 0.0;
    for (int j = 0; j < n_bins; ++j) {
        residual = std::max(residual, std::abs(lhs[static_cast<std::size_t>(j)] -
                                               rhs[static_cast<std::size_t>(j)]));
    }
    return residual;
}

std::optional<Direction> dominant_eigendirection(const Matrix2& m) {
    const double tr = m.a11 + m.a22;
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) {
        throw InputNotPositiveError(
            "dominant_eigendirection: complex eigenvalue pair (matrix is not positive)");
    }
    const double sq = std::sqrt(disc);
    const double l1 = 0.5 * (tr + sq);
    const double l2 = 0.5 * (tr - sq);
    double lam;
    if (std::abs(l1) > std::abs(l2)) {
        lam = l1;
    } else if (std::abs(l2) > std::abs(l1)) {
        lam = l2;
    } else if (l1 == l2) {
        lam = l1;  // repeated eigenvalue; direction may still be unique (Jordan block)
    } else {
        return std::nullopt;  // distinct eigenvalues of equal modulus: no dominant one
    }

    const double scale = std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21),
                                   std::abs(m.a22), 1e-300});
    const Vec2 v1{m.a12, lam - m.a11};
    const Vec2 v2{lam - m.a22, m.a21};
    const Vec2 v = norm(v1) >= norm(v2) ? v1 : v2;
    if (norm(v) <= 1e-14 * scale) return std::nullopt;  // scalar matrix: every direction
    return direction_of(v);
}

std::optional<Direction> exceptional_set(const SelfAffineIFS& ifs, double tol) {
    std::optional<Direction> common;
    for (int i = 0; i < ifs.size(); ++i) {
        const auto dir = dominant_eigendirection(ifs.matrix(i));
        if (!dir) continue;  // scalar maps impose no constraint
        if (!common) {
            common = dir;
        } else if (direction_distance(*common, *dir) > tol) {
            return std::nullopt;
        }
    }
    return common;
}

}  // namespace affineproj
