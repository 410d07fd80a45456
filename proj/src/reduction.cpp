#include "liesym/reduction.hpp"

#include "liesym/errors.hpp"

namespace liesym {

namespace {

NameTable reduced_names() {
  NameTable t;
  t.indep = "y";
  t.coord = {"u1", "u2", "u6"};
  t.velocity = {"u1'", "u2'"};
  return t;
}

SymExpr var(VarId v) { return SymExpr::var(v); }

}  // namespace

ReducedSystem reduce_order(const OdeSystem& sys, std::size_t pivot) {
  if (sys.n != 3) throw InputError("reduction of order needs a three-dimensional system");
  if (pivot < 1 || pivot > 3) throw InputError("the pivot must be 1, 2 or 3");
  if (!sys.autonomous) throw InputError("reduction of order needs an autonomous system");

  ReducedSystem rs;
  rs.pivot = pivot;
  rs.names = reduced_names();
  for (std::size_t a = 1; a <= 3; ++a)
    if (a != pivot) rs.others.push_back(a);

  const SymExpr u6 = var(ReducedSystem::u(6));
  std::map<VarId, SymExpr> bind;
  bind[sys.x(pivot - 1)] = var(ReducedSystem::y());
  bind[sys.v(pivot - 1)] = u6;
  for (std::size_t j = 1; j <= 2; ++j) {
    std::size_t a = rs.others[j - 1];
    bind[sys.x(a - 1)] = var(ReducedSystem::u(j));
    bind[sys.v(a - 1)] = u6 * var(ReducedSystem::du(j));
  }
  std::vector<SymExpr> F;
  for (const auto& w : sys.rhs) F.push_back(w.substitute(bind));
  const SymExpr& Fp = F[pivot - 1];
  const SymExpr inv_sq = u6.pow(-2);
  rs.omega1 = (F[rs.others[0] - 1] - Fp * var(ReducedSystem::du(1))) * inv_sq;
  rs.omega2 = (F[rs.others[1] - 1] - Fp * var(ReducedSystem::du(2))) * inv_sq;
  rs.omega6 = Fp / u6;
  return rs;
}

std::vector<SymExpr> mixed_residual(const ReducedSystem& rs, const VectorField& Z) {
  if (Z.dim() != 3) throw InputError("a reduced-system field has three components");
  const VarId y = ReducedSystem::y();
  const VarId u1 = ReducedSystem::u(1), u2 = ReducedSystem::u(2), u6 = ReducedSystem::u(6);
  const VarId p1 = ReducedSystem::du(1), p2 = ReducedSystem::du(2);
  const SymExpr P1 = var(p1), P2 = var(p2);

  // On-shell total derivative.
  auto D = [&](const SymExpr& f) {
    SymExpr out = f.diff(y);
    SymExpr g;
    if (!(g = f.diff(u1)).is_zero()) out += P1 * g;
    if (!(g = f.diff(u2)).is_zero()) out += P2 * g;
    if (!(g = f.diff(u6)).is_zero()) out += rs.omega6 * g;
    if (!(g = f.diff(p1)).is_zero()) out += rs.omega1 * g;
    if (!(g = f.diff(p2)).is_zero()) out += rs.omega2 * g;
    return out;
  };
  const SymExpr& zeta = Z.tau;
  const SymExpr& eta1 = Z.eta[0];
  const SymExpr& eta2 = Z.eta[1];
  const SymExpr& eta6 = Z.eta[2];

  SymExpr dz = D(zeta);
  SymExpr e1 = D(eta1) - P1 * dz;
  SymExpr e2 = D(eta2) - P2 * dz;
  SymExpr e6 = D(eta6) - rs.omega6 * dz;

  auto apply = [&](const SymExpr& f) {
    SymExpr out;
    SymExpr g;
    if (!zeta.is_zero() && !(g = f.diff(y)).is_zero()) out += zeta * g;
    if (!eta1.is_zero() && !(g = f.diff(u1)).is_zero()) out += eta1 * g;
    if (!eta2.is_zero() && !(g = f.diff(u2)).is_zero()) out += eta2 * g;
    if (!eta6.is_zero() && !(g = f.diff(u6)).is_zero()) out += eta6 * g;
    if (!e1.is_zero() && !(g = f.diff(p1)).is_zero()) out += e1 * g;
    if (!e2.is_zero() && !(g = f.diff(p2)).is_zero()) out += e2 * g;
    return out;
  };

  SymExpr r1 = apply(rs.omega1) - (D(e1) - rs.omega1 * dz);
  SymExpr r2 = apply(rs.omega2) - (D(e2) - rs.omega2 * dz);
  SymExpr r6 = apply(rs.omega6) - e6;
  return {r1, r2, r6};
}

AnsatzSpec reduced_window(int degree) {
  AnsatzSpec s;
  s.windows = {{ReducedSystem::y(), 0, degree},
               {ReducedSystem::u(1), 0, degree},
               {ReducedSystem::u(2), 0, degree},
               {ReducedSystem::u(6), 0, degree}};
  s.total_degree = degree;
  return s;
}

SymmetryBasis find_reduced_symmetries(const ReducedSystem& rs, const AnsatzSpec& spec) {
  VarId radical = rs.omega1.radical().value_or(rs.omega2.radical().value_or(
      rs.omega6.radical().value_or(VarId::radical(0b111))));
  auto ansatz = build_ansatz(spec, 3, radical);
  std::vector<std::vector<SymExpr>> res;
  res.reserve(ansatz.size());
  for (const auto& term : ansatz) res.push_back(mixed_residual(rs, term.field(3)));
  auto ds = assemble_rows(ansatz, 3, res);
  return solve_nullspace(ds, [&](const VectorField& Z) {
    for (const auto& r : mixed_residual(rs, Z))
      if (!r.is_zero()) return false;
    return true;
  });
}

SymmetryBasis find_reduced_symmetries(const ReducedSystem& rs) { return find_reduced_symmetries(rs, reduced_window()); }

MixedSymmetry select_scaling(const SymmetryBasis& basis) {
  const auto& unk = basis.unknowns;
  const Monomial ym = Monomial::var(ReducedSystem::y());
  const Monomial u6m = Monomial::var(ReducedSystem::u(6));
  const std::size_t k = basis.coeff_vectors.size();

  // Affine conditions on the combination coefficients a: rows [A | b].
  // zeta = y, eta_j = u_j exactly; eta6 has no monomial other than u6.
  const Monomial target[3] = {ym, Monomial::var(ReducedSystem::u(1)), Monomial::var(ReducedSystem::u(2))};
  RationalMatrix rows;
  std::optional<std::size_t> scale_col;
  std::size_t hits = 0;
  for (std::size_t j = 0; j < unk.size(); ++j) {
    std::size_t comp = unk[j].component;
    if (comp == 3 && unk[j].monomial == u6m) {
      scale_col = j;
      continue;
    }
    RationalVector row(k + 1);
    for (std::size_t i = 0; i < k; ++i) row[i] = basis.coeff_vectors[i][j];
    if (comp < 3 && unk[j].monomial == target[comp]) {
      row[k] = 1;
      ++hits;
    }
    rows.push_back(std::move(row));
  }
  if (hits != 3 || !scale_col)
    throw ShapeError("the reduced window does not contain zeta = y, eta_j = u_j and eta6 = c*u6");

  Echelon e = rref(rows, k + 1);
  if (!e.pivots.empty() && e.pivots.back() == k)
    throw ShapeError("no reduced symmetry has zeta = y, eta_j = u_j with eta6 proportional to u6");
  RationalVector a(k);
  for (std::size_t i = 0; i < e.rows.size(); ++i) a[e.pivots[i]] = e.rows[i][k];

  // The factor of u6 must not change along the homogeneous solutions.
  RationalMatrix hom;
  for (auto r : e.rows) {
    r.pop_back();
    hom.push_back(std::move(r));
  }
  Echelon he;
  he.rows = hom;
  he.pivots = e.pivots;
  for (const auto& h : nullspace(he, k)) {
    Rational dc = 0;
    for (std::size_t i = 0; i < k; ++i) dc += h[i] * basis.coeff_vectors[i][*scale_col];
    if (dc != 0) throw ShapeError("the factor of u6 is not determined by the scaling shape");
  }

  VectorField Z = VectorField::zero(3);
  for (std::size_t i = 0; i < k; ++i)
    if (a[i] != 0) Z = Z + SymExpr(a[i]) * basis.fields[i];
  return MixedSymmetry::from_field(Z);
}

NonlocalGenerator reconstruct_nonlocal(const MixedSymmetry& ms, const ReducedSystem& rs) {
  const NameTable& nm = rs.names;
  if (!(ms.zeta == var(ReducedSystem::y())))
    throw ShapeError("zeta must equal y to extract xi, got zeta = " + ms.zeta.str(nm));
  SymExpr c = ms.eta6 / var(ReducedSystem::u(6));
  if (!c.is_constant()) throw ShapeError("eta6 must be a constant multiple of u6, got eta6 = " + ms.eta6.str(nm));

  NonlocalGenerator g;
  g.xi = 1 - c.constant_value();
  std::map<VarId, SymExpr> back;
  back[ReducedSystem::y()] = var(VarId::coord(static_cast<std::uint32_t>(rs.pivot)));
  back[ReducedSystem::u(6)] = var(VarId::velocity(static_cast<std::uint32_t>(rs.pivot)));
  for (std::size_t j = 1; j <= 2; ++j)
    back[ReducedSystem::u(j)] = var(VarId::coord(static_cast<std::uint32_t>(rs.others[j - 1])));
  g.eta.assign(3, SymExpr());
  g.eta[rs.pivot - 1] = ms.zeta.substitute(back);
  g.eta[rs.others[0] - 1] = ms.eta1.substitute(back);
  g.eta[rs.others[1] - 1] = ms.eta2.substitute(back);
  return g;
}

}  // namespace liesym
