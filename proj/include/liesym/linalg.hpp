#pragma once

// Exact dense linear algebra over the rationals.

#include <optional>
#include <vector>

#include "liesym/symexpr.hpp"

namespace liesym {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;
using IntegerVector = std::vector<Integer>;

/// Divide by the gcd of the entries and make the first nonzero entry positive.
void make_primitive(IntegerVector& row);
/// Scale a rational row to a primitive integer row.
IntegerVector to_integer_row(const RationalVector& row);

struct Echelon {
  RationalMatrix rows;              // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Fraction-free Gauss-Jordan elimination. Rows are deduplicated first; the
/// pivot in each column is the remaining entry of smallest magnitude.
Echelon integer_rref(std::vector<IntegerVector> rows, std::size_t ncols);
Echelon rref(const RationalMatrix& rows, std::size_t ncols);

std::size_t rank(const RationalMatrix& rows, std::size_t ncols);

/// Basis of {x : A x = 0}, presented in reduced row echelon form.
RationalMatrix nullspace(const Echelon& e, std::size_t ncols);

/// Coefficients c with sum_i c_i basis[i] = target, if the target lies in the span.
/// The basis must be linearly independent.
std::optional<RationalVector> solve_in_span(const RationalMatrix& basis, const RationalVector& target);

}  // namespace liesym
