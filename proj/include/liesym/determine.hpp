#pragma once

// Determining equations and their exact solution on a finite ansatz.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liesym/linalg.hpp"
#include "liesym/vectorfield.hpp"

namespace liesym {

/// Exponent bounds for one variable of the ansatz.
struct VarWindow {
  VarId var;
  int min = 0;
  int max = 2;
};

struct AnsatzSpec {
  std::vector<VarWindow> windows;
  /// Bound on the sum of exponents, when set.
  std::optional<int> total_degree;
  /// Also include every window monomial multiplied by the radical.
  bool allow_radical = false;

  /// t and every x_a in 0..2 with total degree <= 2.
  static AnsatzSpec standard(std::size_t n, int degree = 2);
  /// Window for a variable, or nullptr.
  const VarWindow* window(VarId v) const;
  /// Throws WindowError when a bound is inverted or the window is empty.
  void validate() const;
  /// "t:0..2,x1:0..2,x2:0..2,x3:0..2,total:2"
  std::string str(const NameTable& names) const;
};

/// One unknown: the coefficient of `monomial` in component `component`
/// (0 is tau, a is eta_a).
struct AnsatzTerm {
  std::size_t component = 0;
  Monomial monomial;

  VectorField field(std::size_t n) const;
};

/// Unknowns ordered by component, then ascending monomial order.
/// `radical` is the radical attached to r-monomials when allowed.
std::vector<AnsatzTerm> build_ansatz(const AnsatzSpec& spec, std::size_t n, VarId radical);

struct DeterminingRow {
  std::size_t equation = 0;
  Monomial monomial;  // monomial in all jet variables whose coefficient vanishes
  RationalVector coeffs;
};

struct DeterminingSystem {
  std::vector<AnsatzTerm> unknowns;
  std::vector<DeterminingRow> rows;
  std::size_t n = 0;
};

/// Assemble rows from the residuals of each unknown's basis field: for every
/// equation, multiply by a common denominator and equate the coefficient of
/// every monomial to zero. residuals[j][a] is equation a for unknown j.
DeterminingSystem assemble_rows(std::vector<AnsatzTerm> unknowns, std::size_t n,
                                const std::vector<std::vector<SymExpr>>& residuals);

DeterminingSystem determining_equations(const OdeSystem& sys, const std::vector<AnsatzTerm>& ansatz);

struct SymmetryBasis {
  std::vector<VectorField> fields;
  RationalMatrix coeff_vectors;
  std::vector<AnsatzTerm> unknowns;
  std::size_t rank = 0;  // rank of the determining system
  std::size_t n = 0;

  std::size_t dim() const { return fields.size(); }
};

/// Nullspace in reduced row echelon form. When `check` is given, every basis
/// field is passed to it and must return true; otherwise SymbolicError.
SymmetryBasis solve_nullspace(const DeterminingSystem& ds,
                              const std::function<bool(const VectorField&)>& check = {});

SymmetryBasis find_symmetries(const OdeSystem& sys, const AnsatzSpec& spec);
SymmetryBasis find_symmetries(const OdeSystem& sys);

/// Coefficient vector of a field on the given unknowns. Throws WindowError
/// when a component is not a combination of the ansatz monomials.
RationalVector project(const VectorField& X, const std::vector<AnsatzTerm>& unknowns);

enum class SpanRelation { Equal, Contains, Differs };

struct SpanComparison {
  SpanRelation relation = SpanRelation::Differs;
  /// Indices of expected fields outside the found span.
  std::vector<std::size_t> missing;
  /// Found basis fields outside the span of the expected list.
  std::vector<VectorField> surplus;
  /// A field in one span but not the other, when the spans differ.
  std::optional<VectorField> witness;
};

SpanComparison span_compare(const SymmetryBasis& found, const std::vector<VectorField>& expected);
std::string to_string(SpanRelation r);

/// True when every right-hand side is linear and homogeneous in the
/// coordinates and velocities, so solutions can be superposed.
bool is_linear_homogeneous(const OdeSystem& sys);

}  // namespace liesym
