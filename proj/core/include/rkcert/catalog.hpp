#pragma once

#include <string>
#include <vector>

#include "rkcert/types.hpp"

namespace rkcert {

// Bundled fixture matrices (exact integer entries), addressable by name from
// the CLI so analyses do not depend on user files.

/// 3x3 upper triangular counterexample of Sun and Shu: -[[1,2,2],[0,1,2],[0,0,1]].
ComplexMatrix sun_shu_matrix();

/// 5x5 test matrix of Levy and Tadmor: -5 * [[1,2,2,2,2],...,[0,...,0,1]].
ComplexMatrix levy_tadmor_matrix();

/// Lower triangular W = [[1,0,0],[0,2,0],[0,2,4]] from the Jordan form of the
/// Sun-Shu matrix.
ComplexMatrix jordan_weight_w();

/// P = W W*, a weight under which the classical 4-stage scheme is
/// non-expansive on the Sun-Shu matrix.
ComplexMatrix ww_star_weight();

/// -I of the given dimension.
ComplexMatrix minus_identity(int n = 3);

/// Catalog names: sunshu, levytadmor, w, ww-star, minus-identity.
const std::vector<std::string>& matrix_catalog_names();
ComplexMatrix matrix_from_catalog(const std::string& name);

}  // namespace rkcert
