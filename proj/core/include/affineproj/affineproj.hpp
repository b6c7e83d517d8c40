#pragma once

#include "affineproj/csv.hpp"
#include "affineproj/errors.hpp"
#include "affineproj/geometry.hpp"
#include "affineproj/ifs.hpp"
#include "affineproj/projection.hpp"
#include "affineproj/projective.hpp"
#include "affineproj/random.hpp"
#include "affineproj/spectral.hpp"
#include "affineproj/suspension.hpp"
