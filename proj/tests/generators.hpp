#pragma once

// Seeded random generators for the property suites.

#include <random>
#include <vector>

#include "liesym/symexpr.hpp"
#include "liesym/vectorfield.hpp"

namespace liesym::testing {

class ExprGen {
 public:
  explicit ExprGen(unsigned seed, std::size_t n = 3) : rng_(seed), n_(n) {}

  int small(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  VarId base_var() {
    int k = small(0, static_cast<int>(n_));
    return k == 0 ? VarId::indep() : VarId::coord(static_cast<std::uint32_t>(k));
  }
  VarId any_var() {
    int k = small(0, static_cast<int>(2 * n_));
    if (k == 0) return VarId::indep();
    if (k <= static_cast<int>(n_)) return VarId::coord(static_cast<std::uint32_t>(k));
    return VarId::velocity(static_cast<std::uint32_t>(k - n_));
  }

  /// Polynomial with a few small-integer terms in (t, x, v).
  SymExpr polynomial(int terms = 3, int max_exp = 2, bool velocities = true) {
    SymExpr acc;
    for (int i = 0; i < terms; ++i) {
      SymExpr term(small(-3, 3));
      int factors = small(0, 2);
      for (int f = 0; f < factors; ++f) term *= SymExpr::var(velocities ? any_var() : base_var()).pow(small(1, max_exp));
      acc += term;
    }
    return acc;
  }

  /// Rational function with optional radical and Laurent factors.
  SymExpr expression(bool velocities = true) {
    SymExpr e = polynomial(3, 2, velocities);
    if (coin(0.4)) e *= SymExpr::var(VarId::radical_over_coords(n_)).pow(small(-3, 2));
    if (coin(0.3)) e *= SymExpr::var(base_var()).pow(small(-2, -1));
    if (coin(0.3)) e = e / (SymExpr(1) + SymExpr::var(VarId::coord(1)).pow(2));
    if (coin(0.3)) e += polynomial(2, 1, velocities);
    return e;
  }

  /// Polynomial vector field in (t, x), degree <= 2.
  VectorField field() {
    VectorField X;
    X.tau = polynomial(2, 2, false);
    for (std::size_t a = 0; a < n_; ++a) X.eta.push_back(polynomial(2, 2, false));
    return X;
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::size_t n_;
};

}  // namespace liesym::testing
