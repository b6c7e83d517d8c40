#pragma once

#include <cmath>

#include "affineproj/errors.hpp"

namespace affineproj {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// 2x2 real matrix with finite entries. Row-major fields.
struct Matrix2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    Matrix2() = default;
    Matrix2(double m11, double m12, double m21, double m22)
        : a11(m11), a12(m12), a21(m21), a22(m22) {
        if (!(std::isfinite(m11) && std::isfinite(m12) && std::isfinite(m21) &&
              std::isfinite(m22))) {
            throw ConfigError("Matrix2: entries must be finite");
        }
    }

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double det() const { return a11 * a22 - a12 * a21; }

    Matrix2 transpose() const { return {a11, a21, a12, a22}; }

    Matrix2 inverse() const {
        const double d = det();
        if (d == 0.0) throw SingularMatrixError("Matrix2: singular matrix has no inverse");
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
};

inline Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline Vec2 operator*(const Matrix2& m, Vec2 v) {
    return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
}

inline Matrix2 operator*(double s, const Matrix2& m) {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}

struct SingularValues {
    double alpha1 = 0.0;  // operator norm
    double alpha2 = 0.0;
};

/// Singular values from the closed-form eigenvalues of A A^T.
/// alpha1 * alpha2 equals |det A| to rounding.
SingularValues singular_values(const Matrix2& a);

/// Operator norm, i.e. the larger singular value.
double operator_norm(const Matrix2& a);

/// Singular value function: alpha1^s for s <= 1, alpha1 * alpha2^(s-1) for
/// 1 <= s <= 2, and (alpha1 * alpha2)^(s/2) beyond. Continuous at the branch
/// points. Rejects negative s.
double svf(const Matrix2& a, double s);

/// Affine map x -> linear * x + translation.
struct AffineMap2 {
    Matrix2 linear;
    Vec2 translation;

    Vec2 operator()(Vec2 p) const { return linear * p + translation; }

    static AffineMap2 identity() { return {Matrix2::identity(), {0.0, 0.0}}; }
};

/// Composition f after g.
inline AffineMap2 compose(const AffineMap2& f, const AffineMap2& g) {
    return {f.linear * g.linear, f.linear * g.translation + f.translation};
}

}  // namespace affineproj
