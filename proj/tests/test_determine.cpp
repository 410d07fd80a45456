#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "liesym/determine.hpp"
#include "liesym/errors.hpp"

using namespace liesym;
using namespace liesym::fixtures;

namespace {


std::vector<VectorField> join(std::vector<VectorField> a, const std::vector<VectorField>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

AnsatzSpec quantum_window() {
  AnsatzSpec s;
  s.windows = {{VarId::indep(), -2, 2}, {VarId::coord(1), 0, 2}};
  return s;
}

}  // namespace

TEST_CASE("ansatz enumeration") {
  AnsatzSpec s;
  s.windows = {{VarId::indep(), 0, 1}, {VarId::coord(1), 0, 0}};
  auto terms = build_ansatz(s, 1, VarId::radical_over_coords(1));
  REQUIRE(terms.size() == 4);
  CHECK(terms[0].component == 0);
  CHECK(terms[0].monomial.is_one());
  CHECK(terms[1].monomial == Monomial::var(VarId::indep()));
  CHECK(terms[2].component == 1);
  CHECK(terms[3].monomial == Monomial::var(VarId::indep()));

  // Default window: 15 monomials per component in (t, x1, x2, x3).
  CHECK(build_ansatz(AnsatzSpec::standard(3), 3, VarId::radical_over_coords(3)).size() == 60);
  // Radical monomials double the list below the degree cap.
  AnsatzSpec r = AnsatzSpec::standard(1, 1);
  r.allow_radical = true;
  CHECK(build_ansatz(r, 1, VarId::radical_over_coords(1)).size() == 2 * 4);

  AnsatzSpec bad;
  CHECK_THROWS_AS(build_ansatz(bad, 1, VarId::radical_over_coords(1)), WindowError);
  bad.windows = {{VarId::indep(), 2, 1}};
  CHECK_THROWS_AS(build_ansatz(bad, 1, VarId::radical_over_coords(1)), WindowError);
  bad.windows = {{VarId::indep(), 1, 2}};
  bad.total_degree = 0;
  CHECK_THROWS_AS(build_ansatz(bad, 1, VarId::radical_over_coords(1)), WindowError);
}

TEST_CASE("the default window contains the projective family") {
  auto terms = build_ansatz(AnsatzSpec::standard(1), 1, VarId::radical_over_coords(1));
  SymExpr T = t(), X = x(1);
  for (const auto& F : {field(T * X, {X.pow(2)}), field(T.pow(2), {T * X})}) CHECK_NOTHROW(project(F, terms));
  auto q = build_ansatz(quantum_window(), 1, VarId::radical_over_coords(1));
  CHECK_NOTHROW(project(field(x(1) / t(), {-x(1).pow(2) / t().pow(2)}), q));
  CHECK_THROWS_AS(project(field(t().pow(3), {SymExpr(0)}), terms), WindowError);
  CHECK_THROWS_AS(project(field(SymExpr(1) / (SymExpr(1) + t()), {SymExpr(0)}), terms), WindowError);
}

TEST_CASE("free particle") {
  auto b1 = find_symmetries(free_particle(1));
  CHECK(b1.dim() == 8);
  CHECK(b1.rank == b1.unknowns.size() - 8);
  SymExpr T = t(), X = x(1);
  std::vector<VectorField> family = {field(1, {SymExpr(0)}), field(T, {SymExpr(0)}),   field(X, {SymExpr(0)}),
                                     field(T * X, {X.pow(2)}), field(T.pow(2), {T * X}), field(SymExpr(0), {SymExpr(1)}),
                                     field(SymExpr(0), {T}),    field(SymExpr(0), {X})};
  CHECK(span_compare(b1, family).relation == SpanRelation::Equal);
  CHECK(span_compare(b1, b1.fields).relation == SpanRelation::Equal);
}

TEST_CASE("zero ansatz gives an empty system") {
  auto ds = assemble_rows({}, 3, {});
  CHECK(ds.rows.empty());
  CHECK(solve_nullspace(ds).dim() == 0);
}

TEST_CASE("linear field") {
  auto sys = linear_field();
  auto ansatz = build_ansatz(AnsatzSpec::standard(3), 3, sys.radical());
  auto ds = determining_equations(sys, ansatz);
  auto basis = solve_nullspace(ds);
  CHECK(basis.dim() == 5);
  auto cmp = span_compare(basis, join(rotations(), {time_translation(), dilation(1, -1)}));
  CHECK(cmp.relation == SpanRelation::Equal);
  CHECK(cmp.missing.empty());
  CHECK(cmp.surplus.empty());
  // Rows cubic in the velocities force tau to be free of quadratic x terms.
  for (const auto& c : basis.coeff_vectors)
    for (std::size_t j = 0; j < ansatz.size(); ++j)
      if (ansatz[j].component == 0 && ansatz[j].monomial.degree() == 2 &&
          ansatz[j].monomial.exponent(VarId::indep()) == 0)
        CHECK(c[j] == 0);
  bool cubic = std::any_of(ds.rows.begin(), ds.rows.end(), [](const DeterminingRow& r) {
    int d = 0;
    for (const auto& [v, e] : r.monomial.entries())
      if (v.kind == VarKind::Velocity) d += e;
    return d == 3;
  });
  CHECK(cubic);
}

TEST_CASE("conformal systems share six generators") {
  std::vector<VectorField> expected = join(rotations(), {time_translation(), dilation(2, 1), projective()});
  for (const auto& sys : {inverse_square_potential(), monopole(), zwanziger()}) {
    auto basis = find_symmetries(sys);
    CHECK(basis.dim() == 6);
    CHECK(span_compare(basis, expected).relation == SpanRelation::Equal);
  }
}

TEST_CASE("dyon and sphere keep four") {
  std::vector<VectorField> expected = join(rotations(), {time_translation()});
  for (const auto& sys : {dyon(), sphere_monopole()}) {
    auto basis = find_symmetries(sys);
    CHECK(basis.dim() == 4);
    CHECK(span_compare(basis, expected).relation == SpanRelation::Equal);
  }
}

TEST_CASE("velocity coupling") {
  auto basis = find_symmetries(velocity_coupling());
  auto cmp = span_compare(basis, join(rotations(), {time_translation(), dilation(2, -1)}));
  CHECK(cmp.relation == SpanRelation::Equal);
}

TEST_CASE("fields with a decoupled free coordinate admit more") {
  VectorField x3d = VectorField::zero(3);
  x3d.eta[2] = x(3);
  auto b = find_symmetries(inverse_square_field());
  auto cb = span_compare(b, {time_translation(), translation(2), translation(3), x3d});
  CHECK(cb.relation == SpanRelation::Contains);
  CHECK_FALSE(cb.surplus.empty());

  VectorField L3 = VectorField::zero(3);
  L3.eta[0] = -x(2);
  L3.eta[1] = x(1);
  auto l = find_symmetries(landau());
  auto cl = span_compare(l, {translation(1), translation(2), L3, time_translation()});
  CHECK(cl.relation == SpanRelation::Contains);
  CHECK(cl.missing.empty());
}

TEST_CASE("one-dimensional wave equation") {
  VectorField X1 = field(t(), {SymExpr(0)});
  VectorField X2 = field(SymExpr(0), {x(1)});
  VectorField X3 = field(x(1) / t(), {-x(1).pow(2) / t().pow(2)});
  auto g2 = find_symmetries(inverse_square_wave(-2), quantum_window());
  auto c2 = span_compare(g2, {X1, X2, X3});
  CHECK(c2.missing.empty());
  CHECK(c2.relation != SpanRelation::Differs);

  auto g1 = find_symmetries(inverse_square_wave(-1), quantum_window());
  auto c1 = span_compare(g1, {X1, X2, X3});
  CHECK(c1.missing == std::vector<std::size_t>{2});
  CHECK(span_compare(g1, {X1, X2}).relation == SpanRelation::Equal);
  CHECK(find_symmetries(inverse_square_wave(-3), quantum_window()).dim() == 2);

  CHECK(is_linear_homogeneous(inverse_square_wave(-2)));
  CHECK_FALSE(is_linear_homogeneous(monopole()));
  CHECK(is_linear_homogeneous(landau()));
}

TEST_CASE("window monotonicity") {
  // Three nested windows: total degree 1, 2 and 3.
  std::vector<OdeSystem> systems = {linear_field(), monopole(), zwanziger(), velocity_coupling(),
                                    landau(), inverse_square_field(), dyon(), free_particle(3)};
  for (const auto& sys : systems) {
    std::size_t prev = 0;
    for (int d = 1; d <= 3; ++d) {
      std::size_t dim = find_symmetries(sys, AnsatzSpec::standard(3, d)).dim();
      CHECK(dim >= prev);
      prev = dim;
    }
  }
}

TEST_CASE("nullspace dimension ignores unknown and row order") {
  auto sys = zwanziger();
  auto ansatz = build_ansatz(AnsatzSpec::standard(3), 3, sys.radical());
  auto ds = determining_equations(sys, ansatz);
  std::size_t dim = solve_nullspace(ds).dim();
  std::mt19937 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::size_t> perm(ansatz.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    DeterminingSystem shuffled = ds;
    for (std::size_t j = 0; j < perm.size(); ++j) shuffled.unknowns[j] = ds.unknowns[perm[j]];
    for (auto& row : shuffled.rows) {
      RationalVector c(row.coeffs.size());
      for (std::size_t j = 0; j < perm.size(); ++j) c[j] = row.coeffs[perm[j]];
      row.coeffs = c;
    }
    std::shuffle(shuffled.rows.begin(), shuffled.rows.end(), rng);
    auto b = solve_nullspace(shuffled);
    CHECK(b.dim() == dim);
    CHECK(span_compare(b, solve_nullspace(ds).fields).relation == SpanRelation::Equal);
  }
}
