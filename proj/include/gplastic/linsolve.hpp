#pragma once

// Dense exact linear algebra over Q(rho), used by the instance generators.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gplastic/numberfield.hpp"

namespace gplastic {

using FieldVector = std::vector<FieldElem>;
/// Row-major list of rows; all rows have the same length.
using FieldMatrix = std::vector<FieldVector>;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
std::vector<std::size_t> rref(FieldMatrix& m, std::size_t cols);

/// Basis of {x : m x = 0}; one vector per free column.
std::vector<FieldVector> nullspace(FieldMatrix m, std::size_t cols);

/// Some solution of m x = b, or nullopt if the system is inconsistent.
std::optional<FieldVector> solve(FieldMatrix m, const FieldVector& b);

/// Matrix of a linear map Q(rho)^unknowns -> Q(rho)^k given as a callback.
/// Columns are the images of the standard basis vectors.
FieldMatrix linear_map_matrix(std::size_t unknowns, const std::function<FieldVector(const FieldVector&)>& map);

FieldElem determinant(FieldMatrix m);

}  // namespace gplastic
