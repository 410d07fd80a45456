#pragma once

// Structure constants and classification of finite-dimensional real Lie algebras.

#include <string>
#include <vector>

#include "liesym/determine.hpp"
#include "liesym/linalg.hpp"
#include "liesym/vectorfield.hpp"

namespace liesym {

/// [X_i, X_j] = sum_k c[i][j][k] X_k
struct StructureConstants {
  std::size_t dim = 0;
  std::vector<std::vector<RationalVector>> c;

  static StructureConstants zero(std::size_t dim);
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return c[i][j][k]; }
  /// The bracket of two elements given by coordinates.
  RationalVector bracket(const RationalVector& x, const RationalVector& y) const;
  bool is_abelian() const;
  bool antisymmetric() const;
  bool satisfies_jacobi() const;
};

/// Throws ClosureError naming the first bracket outside the span, and
/// InputError when the fields are dependent or not polynomial. `names`
/// spells the offending bracket; the default is the t, x, v table.
StructureConstants structure_constants(const std::vector<VectorField>& basis, const NameTable* names = nullptr);
StructureConstants structure_constants(const SymmetryBasis& basis, const NameTable* names = nullptr);

/// "[X1, X2] = X3" lines for the nonzero brackets; "abelian" when there are none.
std::string format_brackets(const StructureConstants& sc);

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

struct AlgebraReport {
  std::size_t dim = 0;
  bool abelian = false;
  std::vector<std::size_t> derived_series;  // dims of g, [g,g], ... until stable
  std::size_t center_dim = 0;
  Signature killing;
  std::vector<std::string> factors;  // labels of the indecomposable pieces, abelian merged
  std::string recognized;            // single label or direct_sum(...)
};

RationalMatrix killing_form(const StructureConstants& sc);
/// Exact congruence diagonalization of a symmetric matrix.
Signature signature(RationalMatrix m);

/// Restriction of the brackets to the span of `basis` (coordinate vectors);
/// the span must be a subalgebra.
StructureConstants restrict_to(const StructureConstants& sc, const RationalMatrix& basis);

/// Splits the algebra into ideals that are not further decomposable as
/// direct sums; each entry is a basis in coordinates of the input.
std::vector<RationalMatrix> decompose(const StructureConstants& sc);

AlgebraReport classify(const StructureConstants& sc);

}  // namespace liesym
