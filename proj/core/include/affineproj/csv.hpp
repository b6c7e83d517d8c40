#pragma once

#include <string>
#include <vector>

#include "affineproj/projection.hpp"

namespace affineproj {

// All CSV output uses '.' as the decimal separator and '\n' line endings,
// independent of locale.

/// Header "theta,weight", 12 significant digits.
std::string to_csv(const EmpiricalDirectionMeasure& m);

/// Header "theta,beta_hat,stderr,r_min,r_max,n_atoms,is_near_exceptional",
/// floats at 9 significant digits, the flag as 0/1.
std::string to_csv(const std::vector<ThetaScanRow>& rows);

/// Header "x,y", 12 significant digits.
std::string points_to_csv(const std::vector<Vec2>& points);

}  // namespace affineproj
