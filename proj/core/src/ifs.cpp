#include "affineproj/ifs.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace affineproj {

BernoulliWeights::BernoulliWeights(std::vector<double> probs) : p(std::move(probs)) {
    if (p.empty()) throw ConfigError("BernoulliWeights: empty vector");
    double sum = 0.0;
    for (double w : p) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ConfigError("BernoulliWeights: every weight must be strictly positive");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ConfigError("BernoulliWeights: weights must sum to 1 within 1e-12");
    }
}

BernoulliWeights BernoulliWeights::uniform(int k) {
    if (k < 1) throw ConfigError("BernoulliWeights: k must be >= 1");
    return BernoulliWeights(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
}

const Matrix2& SelfAffineIFS::inverse_matrix(int i) const {
    check_symbol(i);
    const auto& inv = inverses_[static_cast<std::size_t>(i)];
    if (!inv) {
        throw SingularMatrixError("map " + std::to_string(i) + " has a singular linear part");
    }
    return *inv;
}

void SelfAffineIFS::require_strictly_positive(const char* what) const {
    if (!report_.strictly_positive) {
        throw PositivityRequiredError(std::string(what) +
                                      ": requires strictly positive matrix entries");
    }
}

void SelfAffineIFS::require_disk_invariant(const char* what) const {
    if (!report_.disk_invariant) {
        throw DiskInvarianceRequiredError(
            std::string(what) +
            ": disk invariance not established (validate with rescale_to_disk)");
    }
}

void SelfAffineIFS::check_symbol(int i) const {
    if (i < 0 || i >= size()) {
        throw ConfigError("symbol " + std::to_string(i) + " out of range for " +
                          std::to_string(size()) + " maps");
    }
}

SelfAffineIFS validate_ifs(std::vector<AffineMap2> maps, IfsOptions options) {
    if (maps.empty()) throw ConfigError("validate_ifs: need at least one map");

    ValidationReport report;
    double max_norm = 0.0;
    double max_translation = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const AffineMap2& m = maps[i];
        if (!std::isfinite(m.translation.x) || !std::isfinite(m.translation.y)) {
            throw ConfigError("validate_ifs: translation of map " + std::to_string(i) +
                              " is not finite");
        }
        const double nrm = operator_norm(m.linear);
        max_norm = std::max(max_norm, nrm);
        max_translation = std::max(max_translation, norm(m.translation));
        if (nrm >= 1.0) report.not_contracting.push_back(static_cast<int>(i));
        const Matrix2& a = m.linear;
        if (!(a.a11 > 0.0 && a.a12 > 0.0 && a.a21 > 0.0 && a.a22 > 0.0)) {
            report.not_positive.push_back(static_cast<int>(i));
        }
    }
    report.max_operator_norm = max_norm;
    report.strictly_positive = report.not_positive.empty();
    report.contracting = report.not_contracting.empty();

    if (!report.contracting) {
        std::ostringstream msg;
        msg << "validate_ifs: operator norm >= 1 for map(s)";
        for (int i : report.not_contracting) msg << ' ' << i;
        throw NonContractingError(msg.str());
    }

    // T_i(D) lies in D whenever ||A_i|| + |d_i| <= 1; the canonical rescale
    // factor below targets exactly this bound.
    auto disk_ok = [&maps]() {
        for (const AffineMap2& m : maps) {
            if (operator_norm(m.linear) + norm(m.translation) > 1.0 + 1e-12) return false;
        }
        return true;
    };

    report.disk_invariant = disk_ok();
    if (!report.disk_invariant && options.rescale_to_disk && max_translation > 0.0) {
        const double factor = (1.0 - max_norm) / max_translation;
        for (AffineMap2& m : maps) m.translation = factor * m.translation;
        report.rescaled = true;
        report.rescale_factor = factor;
        report.disk_invariant = disk_ok();
    }

    SelfAffineIFS ifs;
    ifs.maps_ = std::move(maps);
    ifs.report_ = report;
    ifs.inverses_.reserve(ifs.maps_.size());
    for (const AffineMap2& m : ifs.maps_) {
        if (m.linear.det() != 0.0) {
            ifs.inverses_.emplace_back(m.linear.inverse());
        } else {
            ifs.inverses_.emplace_back(std::nullopt);
        }
    }
    return ifs;
}

AffineMap2 compose_word(const SelfAffineIFS& ifs, const Word& w) {
    AffineMap2 acc = AffineMap2::identity();
    for (int s : w) {
        ifs.check_symbol(s);
        acc = compose(acc, ifs.map(s));
    }
    return acc;
}

Matrix2 word_matrix(const SelfAffineIFS& ifs, const Word& w) {
    Matrix2 acc = Matrix2::identity();
    for (int s : w) {
        ifs.check_symbol(s);
        acc = acc * ifs.matrix(s);
    }
    return acc;
}

std::vector<Vec2> chaos_game(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                             std::size_t n_points, int depth, std::uint64_t seed) {
    ifs.require_disk_invariant("chaos_game");
    if (depth < 1) throw ConfigError("chaos_game: depth must be >= 1");
    if (weights.size() != ifs.size()) {
        throw ConfigError("chaos_game: weights/maps size mismatch");
    }

    const SymbolSampler sampler(weights.p);
    std::vector<Vec2> points(n_points);
    std::vector<int> word(static_cast<std::size_t>(depth));
    for (std::size_t j = 0; j < n_points; ++j) {
        std::mt19937_64 rng(derive_seed(seed, j));
        for (int t = 0; t < depth; ++t) word[static_cast<std::size_t>(t)] = sampler(rng);
        // T_{a_1...a_depth}(0): innermost map first, so deepening the word
        // with the same seed refines the tail of the orbit.
        Vec2 x{0.0, 0.0};
        for (int t = depth - 1; t >= 0; --t) x = ifs.map(word[static_cast<std::size_t>(t)])(x);
        points[j] = x;
    }
    return points;
}

}  // namespace affineproj
