#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liesym/symexpr.hpp"

namespace liesym {

/// `Ode` names variables t, x_a, v_a. `Quantum1d` is the single-equation
/// form u'' = w(x, u, u') with independent variable x and dependent u.
enum class Mode { Ode, Quantum1d };

/// n second-order equations  d^2 x_a / dt^2 = rhs[a](t, x, v).
struct OdeSystem {
  std::size_t n = 0;
  std::vector<SymExpr> rhs;
  bool autonomous = true;
  Mode mode = Mode::Ode;
  NameTable names;

  /// Validates the variables used by `rhs` and derives the autonomous flag.
  static OdeSystem make(std::vector<SymExpr> rhs, Mode mode = Mode::Ode);

  VarId t() const { return VarId::indep(); }
  VarId x(std::size_t a) const { return VarId::coord(static_cast<std::uint32_t>(a + 1)); }
  VarId v(std::size_t a) const { return VarId::velocity(static_cast<std::uint32_t>(a + 1)); }
  VarId radical() const { return VarId::radical_over_coords(n); }
  SlotLayout layout() const { return {n}; }
};

NameTable names_for(Mode mode, std::size_t n);

/// X = tau d/dt + eta_a d/dx_a.
struct VectorField {
  SymExpr tau;
  std::vector<SymExpr> eta;

  static VectorField zero(std::size_t n) { return {SymExpr(), std::vector<SymExpr>(n)}; }
  std::size_t dim() const { return eta.size(); }
  bool is_zero() const;
  /// Component 0 is tau, component a + 1 is eta_a.
  const SymExpr& component(std::size_t c) const { return c == 0 ? tau : eta[c - 1]; }
  SymExpr& component(std::size_t c) { return c == 0 ? tau : eta[c - 1]; }

  /// X(f) for a function of (t, x).
  SymExpr apply(const SymExpr& f) const;
  /// Operator form, e.g. "x3*d/dx2 - x2*d/dx3".
  std::string str(const NameTable& names) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const SymExpr& c, const VectorField& a);
  friend bool operator==(const VectorField& a, const VectorField& b);
};

/// First extension: coefficients of d/dv_a.
struct ProlongedField {
  VectorField base;
  std::vector<SymExpr> etadot;
};

/// etadot_a = D eta_a - v_a D tau with D = d/dt + v_b d/dx_b.
ProlongedField prolong1(const VectorField& X);

/// Lie bracket [X, Y] = X Y - Y X.
VectorField commutator(const VectorField& X, const VectorField& Y);

/// The expanded symmetry condition with the system's right-hand sides
/// substituted; one component per equation. X is a symmetry iff every
/// component is zero.
std::vector<SymExpr> residual(const VectorField& X, const OdeSystem& sys);

/// Caches the derivatives of the right-hand sides so the symmetry condition
/// can be evaluated for many fields.
class ResidualEvaluator {
 public:
  explicit ResidualEvaluator(const OdeSystem& sys);
  std::vector<SymExpr> operator()(const VectorField& X) const;
  const OdeSystem& system() const { return sys_; }

 private:
  OdeSystem sys_;
  std::vector<SymExpr> w_t_;                 // d w_a / dt
  std::vector<std::vector<SymExpr>> w_x_;    // d w_a / dx_b
  std::vector<std::vector<SymExpr>> w_v_;    // d w_a / dv_b
};

}  // namespace liesym
