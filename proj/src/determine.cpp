#include "liesym/determine.hpp"

#include <algorithm>
#include <map>

#include "liesym/errors.hpp"

namespace liesym {

AnsatzSpec AnsatzSpec::standard(std::size_t n, int degree) {
  AnsatzSpec s;
  s.windows.push_back({VarId::indep(), 0, degree});
  for (std::size_t a = 1; a <= n; ++a) s.windows.push_back({VarId::coord(static_cast<std::uint32_t>(a)), 0, degree});
  s.total_degree = degree;
  return s;
}

const VarWindow* AnsatzSpec::window(VarId v) const {
  for (const auto& w : windows)
    if (w.var == v) return &w;
  return nullptr;
}

void AnsatzSpec::validate() const {
  if (windows.empty()) throw WindowError("the ansatz window is empty");
  for (const auto& w : windows) {
    if (w.min > w.max) throw WindowError("window bounds are inverted");
    if (w.var.kind != VarKind::Indep && w.var.kind != VarKind::Coord)
      throw WindowError("windows may only bound the independent variable and coordinates");
  }
  if (total_degree) {
    int lowest = 0;
    for (const auto& w : windows) lowest += w.min;
    if (lowest > *total_degree) throw WindowError("the total degree bound excludes every monomial");
  }
}

std::string AnsatzSpec::str(const NameTable& names) const {
  std::string out;
  for (const auto& w : windows) {
    if (!out.empty()) out += ",";
    out += names.name(w.var) + ":" + std::to_string(w.min) + ".." + std::to_string(w.max);
  }
  if (total_degree) out += ",total:" + std::to_string(*total_degree);
  if (allow_radical) out += ",radical";
  return out;
}

VectorField AnsatzTerm::field(std::size_t n) const {
  VectorField X = VectorField::zero(n);
  X.component(component) = SymExpr(Polynomial::monomial(monomial));
  return X;
}

std::vector<AnsatzTerm> build_ansatz(const AnsatzSpec& spec, std::size_t n, VarId radical) {
  spec.validate();
  std::vector<Monomial> monos{Monomial()};
  std::vector<int> degrees{0};
  for (const auto& w : spec.windows) {
    std::vector<Monomial> next;
    std::vector<int> next_deg;
    for (std::size_t i = 0; i < monos.size(); ++i)
      for (int e = w.min; e <= w.max; ++e) {
        next.push_back(monos[i] * Monomial::var(w.var, e));
        next_deg.push_back(degrees[i] + e);
      }
    monos = std::move(next);
    degrees = std::move(next_deg);
  }
  std::vector<Monomial> all;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if (spec.total_degree && degrees[i] > *spec.total_degree) continue;
    all.push_back(monos[i]);
    if (spec.allow_radical && (!spec.total_degree || degrees[i] + 1 <= *spec.total_degree))
      all.push_back(monos[i] * Monomial::var(radical));
  }
  if (all.empty()) throw WindowError("the ansatz window contains no monomials");
  std::sort(all.begin(), all.end(), MonomialOrder());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<AnsatzTerm> terms;
  for (std::size_t c = 0; c <= n; ++c)
    for (const auto& m : all) terms.push_back({c, m});
  return terms;
}

DeterminingSystem assemble_rows(std::vector<AnsatzTerm> unknowns, std::size_t n,
                                const std::vector<std::vector<SymExpr>>& residuals) {
  DeterminingSystem ds;
  ds.n = n;
  const std::size_t k = unknowns.size();
  ds.unknowns = std::move(unknowns);
  if (residuals.size() != k) throw SymbolicError("one residual per unknown is required");
  if (k == 0) return ds;
  const std::size_t neq = residuals.front().size();

  for (std::size_t a = 0; a < neq; ++a) {
    // Common multiple of the denominators of this equation.
    std::vector<SymExpr::Factor> common;
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& [f, e] : residuals[j][a].denominator_factors()) {
        auto it = std::find_if(common.begin(), common.end(), [&](const auto& c) { return c.first == f; });
        if (it == common.end())
          common.emplace_back(f, e);
        else
          it->second = std::max(it->second, e);
      }

    std::map<Monomial, RationalVector, MonomialOrder> rows;
    for (std::size_t j = 0; j < k; ++j) {
      const SymExpr& R = residuals[j][a];
      if (R.is_zero()) continue;
      Polynomial p = R.numerator();
      for (const auto& [f, e] : common) {
        int have = 0;
        for (const auto& [g, ge] : R.denominator_factors())
          if (g == f) have = ge;
        if (e > have) p = p * f.pow(static_cast<unsigned>(e - have));
      }
      for (const auto& [m, c] : p.terms()) {
        auto& row = rows[m];
        if (row.empty()) row.resize(k);
        row[j] += c;
      }
    }
    for (auto& [m, coeffs] : rows) {
      if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return q == 0; })) continue;
      ds.rows.push_back({a, m, std::move(coeffs)});
    }
  }
  return ds;
}

DeterminingSystem determining_equations(const OdeSystem& sys, const std::vector<AnsatzTerm>& ansatz) {
  ResidualEvaluator ev(sys);
  std::vector<std::vector<SymExpr>> res;
  res.reserve(ansatz.size());
  for (const auto& term : ansatz) res.push_back(ev(term.field(sys.n)));
  return assemble_rows(ansatz, sys.n, res);
}

namespace {

VectorField combine(const std::vector<AnsatzTerm>& unknowns, const RationalVector& c, std::size_t n) {
  std::vector<Polynomial> comps(n + 1);
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    if (c[j] != 0) comps[unknowns[j].component].add_term(unknowns[j].monomial, c[j]);
  VectorField X = VectorField::zero(n);
  for (std::size_t i = 0; i <= n; ++i) X.component(i) = SymExpr(comps[i]);
  return X;
}

}  // namespace

SymmetryBasis solve_nullspace(const DeterminingSystem& ds, const std::function<bool(const VectorField&)>& check) {
  const std::size_t k = ds.unknowns.size();
  std::vector<IntegerVector> rows;
  rows.reserve(ds.rows.size());
  for (const auto& r : ds.rows) rows.push_back(to_integer_row(r.coeffs));
  Echelon e = integer_rref(std::move(rows), k);

  SymmetryBasis basis;
  basis.n = ds.n;
  basis.unknowns = ds.unknowns;
  basis.rank = e.pivots.size();
  basis.coeff_vectors = nullspace(e, k);
  for (const auto& c : basis.coeff_vectors) {
    VectorField X = combine(ds.unknowns, c, ds.n);
    if (check && !check(X)) throw SymbolicError("a nullspace vector failed the residual re-check");
    basis.fields.push_back(std::move(X));
  }
  return basis;
}

SymmetryBasis find_symmetries(const OdeSystem& sys, const AnsatzSpec& spec) {
  auto ansatz = build_ansatz(spec, sys.n, sys.radical());
  auto ds = determining_equations(sys, ansatz);
  ResidualEvaluator ev(sys);
  return solve_nullspace(ds, [&](const VectorField& X) {
    for (const auto& r : ev(X))
      if (!r.is_zero()) return false;
    return true;
  });
}

SymmetryBasis find_symmetries(const OdeSystem& sys) { return find_symmetries(sys, AnsatzSpec::standard(sys.n)); }

RationalVector project(const VectorField& X, const std::vector<AnsatzTerm>& unknowns) {
  RationalVector out(unknowns.size());
  std::size_t n = X.dim();
  for (std::size_t c = 0; c <= n; ++c) {
    const SymExpr& k = X.component(c);
    if (!k.is_polynomial()) throw WindowError("a field component is not a polynomial in the ansatz variables");
    for (const auto& [m, q] : k.numerator().terms()) {
      auto it = std::find_if(unknowns.begin(), unknowns.end(),
                             [&](const AnsatzTerm& t) { return t.component == c && t.monomial == m; });
      if (it == unknowns.end()) throw WindowError("a field component uses a monomial outside the ansatz window");
      out[static_cast<std::size_t>(it - unknowns.begin())] = q;
    }
  }
  return out;
}

SpanComparison span_compare(const SymmetryBasis& found, const std::vector<VectorField>& expected) {
  SpanComparison out;
  RationalMatrix exp;
  for (const auto& X : expected) exp.push_back(project(X, found.unknowns));
  for (std::size_t i = 0; i < exp.size(); ++i)
    if (!solve_in_span(found.coeff_vectors, exp[i])) out.missing.push_back(i);

  RationalMatrix exp_basis = exp.empty() ? RationalMatrix{} : rref(exp, found.unknowns.size()).rows;
  for (std::size_t i = 0; i < found.coeff_vectors.size(); ++i)
    if (!solve_in_span(exp_basis, found.coeff_vectors[i])) out.surplus.push_back(found.fields[i]);

  if (!out.missing.empty()) {
    out.relation = SpanRelation::Differs;
    out.witness = expected[out.missing.front()];
  } else if (out.surplus.empty()) {
    out.relation = SpanRelation::Equal;
  } else {
    out.relation = SpanRelation::Contains;
    out.witness = out.surplus.front();
  }
  return out;
}

std::string to_string(SpanRelation r) {
  switch (r) {
    case SpanRelation::Equal: return "equal";
    case SpanRelation::Contains: return "contains";
    case SpanRelation::Differs: return "differs";
  }
  return "differs";
}

bool is_linear_homogeneous(const OdeSystem& sys) {
  std::vector<VarId> jet;
  for (std::size_t a = 0; a < sys.n; ++a) {
    jet.push_back(sys.x(a));
    jet.push_back(sys.v(a));
  }
  for (const auto& w : sys.rhs) {
    if (w.radical()) return false;
    SymExpr euler;
    for (VarId z : jet) {
      SymExpr dz = w.diff(z);
      for (VarId y : jet)
        if (!dz.diff(y).is_zero()) return false;
      euler += SymExpr::var(z) * dz;
    }
    if (!(euler == w)) return false;
  }
  return true;
}

}  // namespace liesym
