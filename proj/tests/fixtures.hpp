#pragma once

// Systems and generators built directly from SymExpr, independent of the
// text parser and the case registry.

#include <string>
#include <vector>

#include "liesym/symexpr.hpp"
#include "liesym/vectorfield.hpp"

namespace liesym::fixtures {

inline SymExpr t() { return SymExpr::var(VarId::indep()); }
inline SymExpr x(int a) { return SymExpr::var(VarId::coord(static_cast<std::uint32_t>(a))); }
inline SymExpr v(int a) { return SymExpr::var(VarId::velocity(static_cast<std::uint32_t>(a))); }
inline SymExpr r() { return SymExpr::var(VarId::radical_over_coords(3)); }
inline SymExpr sum_sq() { return x(1).pow(2) + x(2).pow(2) + x(3).pow(2); }

// (v x B)_k for a field given componentwise.
inline std::vector<SymExpr> lorentz(const SymExpr& b1, const SymExpr& b2, const SymExpr& b3) {
  return {v(2) * b3 - v(3) * b2, v(3) * b1 - v(1) * b3, v(1) * b2 - v(2) * b1};
}

inline OdeSystem free_particle(std::size_t n) { return OdeSystem::make(std::vector<SymExpr>(n)); }
inline OdeSystem linear_field() { return OdeSystem::make(lorentz(x(1), x(2), x(3))); }
inline OdeSystem sphere_monopole() {
  auto w = lorentz(x(1), x(2), x(3));
  SymExpr vv = v(1).pow(2) + v(2).pow(2) + v(3).pow(2);
  for (int a = 0; a < 3; ++a) w[a] -= x(a + 1) * vv;
  return OdeSystem::make(w);
}
inline OdeSystem inverse_square_potential() {
  return OdeSystem::make({x(1) / r().pow(4), x(2) / r().pow(4), x(3) / r().pow(4)});
}
inline OdeSystem monopole() {
  auto w = lorentz(x(1), x(2), x(3));
  for (auto& e : w) e = e / r().pow(3);
  return OdeSystem::make(w);
}
inline OdeSystem zwanziger() {
  auto w = lorentz(x(1), x(2), x(3));
  for (int a = 0; a < 3; ++a) w[a] = w[a] / r().pow(3) + x(a + 1) / r().pow(4);
  return OdeSystem::make(w);
}
inline OdeSystem dyon() {
  auto w = lorentz(x(1), x(2), x(3));
  for (int a = 0; a < 3; ++a) w[a] = (w[a] + x(a + 1)) / r().pow(3);
  return OdeSystem::make(w);
}
inline OdeSystem velocity_coupling() {
  return OdeSystem::make({v(1) * sum_sq(), v(2) * sum_sq(), v(3) * sum_sq()});
}
inline OdeSystem inverse_square_field() { return OdeSystem::make(lorentz(0, 0, SymExpr(-1) / x(1).pow(2))); }
inline OdeSystem landau() { return OdeSystem::make(lorentz(0, 0, 1)); }
inline OdeSystem stern_gerlach() { return OdeSystem::make(lorentz(-x(1), 0, SymExpr(1) + x(3))); }
// u'' = -(C/x^2) u in the one-dimensional naming.
inline OdeSystem inverse_square_wave(const Rational& c) {
  return OdeSystem::make({SymExpr(-c) * x(1) / t().pow(2)}, Mode::Quantum1d);
}

inline VectorField field(SymExpr tau, std::vector<SymExpr> eta) { return {std::move(tau), std::move(eta)}; }

// X_a = eps_{akb} x_b d/dx_k
inline VectorField rotation(int a) {
  VectorField X = VectorField::zero(3);
  int k = a % 3 + 1, b = (a + 1) % 3 + 1;
  X.eta[k - 1] = x(b);
  X.eta[b - 1] = -x(k);
  return X;
}
inline VectorField time_translation(std::size_t n = 3) {
  VectorField X = VectorField::zero(n);
  X.tau = 1;
  return X;
}
inline VectorField translation(int a, std::size_t n = 3) {
  VectorField X = VectorField::zero(n);
  X.eta[a - 1] = 1;
  return X;
}
// p t d/dt + q x_a d/dx_a
inline VectorField dilation(const Rational& p, const Rational& q, std::size_t n = 3) {
  VectorField X = VectorField::zero(n);
  X.tau = SymExpr(p) * t();
  for (std::size_t a = 0; a < n; ++a) X.eta[a] = SymExpr(q) * x(static_cast<int>(a + 1));
  return X;
}
// t^2 d/dt + t x_a d/dx_a
inline VectorField projective(std::size_t n = 3) {
  VectorField X = VectorField::zero(n);
  X.tau = t().pow(2);
  for (std::size_t a = 0; a < n; ++a) X.eta[a] = t() * x(static_cast<int>(a + 1));
  return X;
}

inline VectorField scale_x3() {
  VectorField X = VectorField::zero(3);
  X.eta[2] = x(3);
  return X;
}

// A system with its listed generators and fields that must fail.
struct ListedCase {
  std::string name;
  OdeSystem sys;
  std::vector<VectorField> generators;
  std::vector<VectorField> controls;
};

inline std::vector<VectorField> rotations() { return {rotation(1), rotation(2), rotation(3)}; }

inline std::vector<ListedCase> listed_cases() {
  auto with = [](std::vector<VectorField> a, const std::vector<VectorField>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  VectorField lz = VectorField::zero(3);
  lz.eta[0] = -x(2);
  lz.eta[1] = x(1);
  std::vector<VectorField> conformal = with(rotations(), {time_translation(), dilation(2, 1), projective()});
  return {
      {"linear_field", linear_field(), with(rotations(), {time_translation(), dilation(1, -1)}), {dilation(2, 1)}},
      {"sphere_monopole", sphere_monopole(), with(rotations(), {time_translation()}), {dilation(1, -1)}},
      {"inverse_square_potential", inverse_square_potential(), conformal, {dilation(0, 1)}},
      {"monopole", monopole(), conformal, {dilation(0, 1)}},
      {"zwanziger", zwanziger(), conformal, {dilation(0, 1)}},
      {"dyon", dyon(), with(rotations(), {time_translation()}), {dilation(2, 1), projective()}},
      {"velocity_coupling", velocity_coupling(), with(rotations(), {time_translation(), dilation(2, -1)}),
       {dilation(2, 1)}},
      {"inverse_square_field", inverse_square_field(),
       {time_translation(), translation(2), translation(3), scale_x3()}, {translation(1)}},
      {"landau", landau(), {translation(1), translation(2), lz, time_translation()}, {dilation(1, 1)}},
      {"stern_gerlach", stern_gerlach(), {time_translation()}, {translation(1)}},
  };
}

}  // namespace liesym::fixtures
