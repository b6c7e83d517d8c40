#include "affineproj/geometry.hpp"

#include <algorithm>

namespace affineproj {

SingularValues singular_values(const Matrix2& a) {
    // Eigenvalues of A A^T from trace and determinant. alpha2 is recovered
    // from |det| / alpha1, which avoids the cancellation in t - disc.
    const double t = a.a11 * a.a11 + a.a12 * a.a12 + a.a21 * a.a21 + a.a22 * a.a22;
    const double d = std::abs(a.det());
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * d * d));
    const double alpha1 = std::sqrt(0.5 * (t + disc));
    const double alpha2 = alpha1 > 0.0 ? d / alpha1 : 0.0;
    return {alpha1, alpha2};
}

double operator_norm(const Matrix2& a) { return singular_values(a).alpha1; }

double svf(const Matrix2& a, double s) {
    if (s < 0.0) throw ConfigError("svf: s must be nonnegative");
    const SingularValues sv = singular_values(a);
    if (s <= 1.0) return std::pow(sv.alpha1, s);
    if (s <= 2.0) return sv.alpha1 * std::pow(sv.alpha2, s - 1.0);
    return std::pow(sv.alpha1 * sv.alpha2, 0.5 * s);
}

}  // namespace affineproj
