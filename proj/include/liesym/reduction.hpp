#pragma once

// Reduction of order for autonomous three-dimensional systems: one
// coordinate becomes the independent variable y, its velocity becomes u6,
// and the remaining coordinates u1, u2 satisfy second-order equations in y.

#include <vector>

#include "liesym/determine.hpp"
#include "liesym/vectorfield.hpp"

namespace liesym {

/// Variables of the reduced system: y is the independent variable, u1, u2,
/// u6 are coordinates 1, 2, 3 and u1', u2' are velocities 1, 2.
struct ReducedSystem {
  std::size_t pivot = 3;               // 1-based coordinate promoted to y
  std::vector<std::size_t> others;     // original coordinates behind u1, u2
  SymExpr omega1, omega2, omega6;      // u1'' = omega1, u2'' = omega2, u6' = omega6
  NameTable names;

  static VarId y() { return VarId::indep(); }
  static VarId u(std::size_t j) { return VarId::coord(static_cast<std::uint32_t>(j == 6 ? 3 : j)); }
  static VarId du(std::size_t j) { return VarId::velocity(static_cast<std::uint32_t>(j)); }
};

/// Throws InputError for non-autonomous systems, n != 3 or a bad pivot.
ReducedSystem reduce_order(const OdeSystem& sys, std::size_t pivot = 3);

/// zeta d/dy + eta1 d/du1 + eta2 d/du2 + eta6 d/du6 as a three-component
/// VectorField (component 0 is zeta, component 3 is eta6).
struct MixedSymmetry {
  SymExpr zeta, eta1, eta2, eta6;

  VectorField as_field() const { return {zeta, {eta1, eta2, eta6}}; }
  static MixedSymmetry from_field(const VectorField& X) { return {X.tau, X.eta[0], X.eta[1], X.eta[2]}; }
};

/// Residuals of the second-order conditions for u1, u2 and of the
/// first-order condition for u6, from the prolongation of the field with
/// the on-shell total derivative.
std::vector<SymExpr> mixed_residual(const ReducedSystem& rs, const VectorField& Z);

/// Degree <= 2 in (y, u1, u2, u6).
AnsatzSpec reduced_window(int degree = 2);

SymmetryBasis find_reduced_symmetries(const ReducedSystem& rs, const AnsatzSpec& spec);
SymmetryBasis find_reduced_symmetries(const ReducedSystem& rs);

/// The span element with zeta = y, eta1 = u1, eta2 = u2 and eta6 = c u6.
/// Throws ShapeError when there is none or when c is not unique.
MixedSymmetry select_scaling(const SymmetryBasis& basis);

struct NonlocalGenerator {
  Rational xi;
  /// Position coefficients in the original variables: eta_j = G_j and
  /// eta_pivot = zeta, with y, u_j, u6 renamed to x_pivot, x_j, v_pivot.
  std::vector<SymExpr> eta;
};

/// Requires zeta = y and eta6 = c u6; then xi = 1 - c. ShapeError otherwise.
NonlocalGenerator reconstruct_nonlocal(const MixedSymmetry& ms, const ReducedSystem& rs);

}  // namespace liesym
