#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "affineproj/geometry.hpp"
#include "affineproj/random.hpp"

namespace affineproj {

/// A finite word over the alphabet {0, ..., k-1} of map indices.
using Word = std::vector<int>;

/// Strictly positive probability vector summing to one (within 1e-12).
struct BernoulliWeights {
    std::vector<double> p;

    explicit BernoulliWeights(std::vector<double> probs);
    static BernoulliWeights uniform(int k);

    int size() const { return static_cast<int>(p.size()); }
};

struct IfsOptions {
    /// When the images T_i(D) are not all inside the unit disk, rescale every
    /// translation by (1 - max ||A_i||) / max |d_i| so that they are.
    bool rescale_to_disk = false;
};

struct ValidationReport {
    bool strictly_positive = false;
    bool contracting = false;
    bool disk_invariant = false;
    std::vector<int> not_positive;     // maps with an entry <= 0
    std::vector<int> not_contracting;  // maps with operator norm >= 1
    bool rescaled = false;
    double rescale_factor = 1.0;
    double max_operator_norm = 0.0;
};

/// Validated collection of planar affine contractions.
///
/// Construction rejects non-contracting systems outright. Positivity and disk
/// invariance are recorded as flags; the operations that need them check the
/// flags and fail individually.
class SelfAffineIFS {
public:
    int size() const { return static_cast<int>(maps_.size()); }
    const AffineMap2& map(int i) const { return maps_[static_cast<std::size_t>(i)]; }
    const Matrix2& matrix(int i) const { return maps_[static_cast<std::size_t>(i)].linear; }

    /// Inverse of the i-th linear part; throws SingularMatrixError if singular.
    const Matrix2& inverse_matrix(int i) const;

    bool strictly_positive() const { return report_.strictly_positive; }
    bool contracting() const { return report_.contracting; }
    bool disk_invariant() const { return report_.disk_invariant; }
    const ValidationReport& report() const { return report_; }

    void require_strictly_positive(const char* what) const;
    void require_disk_invariant(const char* what) const;
    void check_symbol(int i) const;

private:
    friend SelfAffineIFS validate_ifs(std::vector<AffineMap2> maps, IfsOptions options);
    SelfAffineIFS() = default;

    std::vector<AffineMap2> maps_;
    std::vector<std::optional<Matrix2>> inverses_;
    ValidationReport report_;
};

/// Validates maps and computes the report. Throws NonContractingError when
/// some operator norm is >= 1; positivity violations are only flagged.
SelfAffineIFS validate_ifs(std::vector<AffineMap2> maps, IfsOptions options = {});

/// T_{w_0} o T_{w_1} o ... o T_{w_{n-1}}; the empty word gives the identity.
AffineMap2 compose_word(const SelfAffineIFS& ifs, const Word& w);

/// Product of the linear parts in word order.
Matrix2 word_matrix(const SelfAffineIFS& ifs, const Word& w);

/// Samples n_points of the push-forward measure: each point is
/// T_{a_1...a_depth}(0) with the word drawn i.i.d. from the weights.
/// Deterministic given the seed; every point lies in the closed unit disk.
std::vector<Vec2> chaos_game(const SelfAffineIFS& ifs, const BernoulliWeights& weights,
                             std::size_t n_points, int depth, std::uint64_t seed);

}  // namespace affineproj
