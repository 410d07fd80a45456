#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "liesym/determine.hpp"
#include "liesym/errors.hpp"
#include "liesym/liealgebra.hpp"

using namespace liesym;
using namespace liesym::fixtures;

namespace {

// Structure constants written down by hand.
StructureConstants table(std::size_t d, const std::vector<std::tuple<int, int, int, Rational>>& entries) {
  StructureConstants sc = StructureConstants::zero(d);
  for (const auto& [i, j, k, q] : entries) {
    sc.c[i][j][k] = q;
    sc.c[j][i][k] = -q;
  }
  return sc;
}

StructureConstants so3() { return table(3, {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}}); }
// [A,B] = 2A, [A,C] = B, [B,C] = 2C
StructureConstants sl2() { return table(3, {{0, 1, 0, 2}, {0, 2, 1, 1}, {1, 2, 2, 2}}); }

std::vector<VectorField> mix(const std::vector<VectorField>& fields, std::mt19937& rng) {
  // Random unimodular-ish change of basis: upper triangular with unit
  // diagonal times a random permutation.
  std::size_t d = fields.size();
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<int> pick(-3, 3);
  std::vector<VectorField> out;
  for (std::size_t i = 0; i < d; ++i) {
    VectorField X = fields[perm[i]];
    for (std::size_t j = i + 1; j < d; ++j) X = X + SymExpr(Rational(pick(rng), 2)) * fields[perm[j]];
    out.push_back(X);
  }
  return out;
}

}  // namespace

TEST_CASE("rotation brackets") {
  auto sc = structure_constants({rotation(1), rotation(2), rotation(3)});
  CHECK(sc.at(0, 1, 2) == 1);
  CHECK(sc.at(1, 2, 0) == 1);
  CHECK(sc.at(2, 0, 1) == 1);
  CHECK(sc.at(0, 1, 0) == 0);
  CHECK(sc.antisymmetric());
  CHECK(sc.satisfies_jacobi());
  CHECK(format_brackets(sc) == "[X1, X2] = X3\n[X1, X3] = -X2\n[X2, X3] = X1\n");
}

TEST_CASE("translations commute") {
  auto sc = structure_constants({translation(1), translation(2)});
  CHECK(sc.is_abelian());
  CHECK(format_brackets(sc) == "abelian\n");
  CHECK(classify(sc).recognized == "abelian(2)");
  CHECK(classify(sc).abelian);
}

TEST_CASE("conformal triple") {
  auto sc = structure_constants({time_translation(), dilation(2, 1), projective()});
  CHECK(sc.at(0, 1, 0) == 2);
  CHECK(sc.at(0, 2, 1) == 1);
  CHECK(sc.at(1, 2, 2) == 2);
  CHECK(classify(sc).recognized == "sl2R");
}

TEST_CASE("closure failures name the bracket") {
  VectorField a = translation(1);
  VectorField b = VectorField::zero(3);
  b.eta[1] = x(1).pow(2);
  try {
    structure_constants({a, b});
    FAIL("expected a closure error");
  } catch (const ClosureError& e) {
    CHECK(e.first == 0);
    CHECK(e.second == 1);
    CHECK(std::string(e.what()).find("2*x1*d/dx2") != std::string::npos);
  }
  CHECK_THROWS_AS(structure_constants({a, SymExpr(2) * a}), InputError);
}

TEST_CASE("signatures") {
  CHECK(signature(killing_form(so3())).negative == 3);
  Signature s = signature(killing_form(sl2()));
  CHECK(s.positive == 2);
  CHECK(s.negative == 1);
  // Zero diagonal with off-diagonal coupling.
  Signature h = signature({{0, 1}, {1, 0}});
  CHECK(h.positive == 1);
  CHECK(h.negative == 1);
  Signature z = signature({{0, 0}, {0, 0}});
  CHECK(z.zero == 2);
}

TEST_CASE("so3 and sl2R are told apart") {
  CHECK(classify(so3()).recognized == "so3");
  CHECK(classify(sl2()).recognized == "sl2R");
  CHECK(classify(so3()).recognized != "sl2R");
  CHECK(classify(sl2()).recognized != "so3");
}

TEST_CASE("algebras of the fixture systems") {
  auto c1 = classify(structure_constants(find_symmetries(linear_field())));
  CHECK(c1.recognized == "direct_sum(so3, g2_nonabelian)");
  CHECK(c1.center_dim == 0);

  for (const auto& sys : {inverse_square_potential(), monopole(), zwanziger()}) {
    auto rep = classify(structure_constants(find_symmetries(sys)));
    CHECK(rep.recognized == "direct_sum(so3, sl2R)");
    CHECK(rep.derived_series == std::vector<std::size_t>{6});
    CHECK(rep.killing.negative == 4);
    CHECK(rep.killing.positive == 2);
  }

  auto dy = classify(structure_constants(find_symmetries(dyon())));
  CHECK(dy.recognized == "direct_sum(so3, abelian(1))");
  CHECK(dy.center_dim == 1);

  // Landau subalgebra: [X1,X3] = X2, [X2,X3] = -X1, X4 central.
  VectorField L3 = VectorField::zero(3);
  L3.eta[0] = -x(2);
  L3.eta[1] = x(1);
  auto sc = structure_constants({translation(1), translation(2), L3, time_translation()});
  CHECK(sc.at(0, 2, 1) == 1);
  CHECK(sc.at(1, 2, 0) == -1);
  auto rep = classify(sc);
  CHECK(rep.recognized == "direct_sum(unclassified(3), abelian(1))");
  CHECK(rep.derived_series == std::vector<std::size_t>{4, 2, 0});
}

TEST_CASE("the label does not depend on the basis") {
  std::mt19937 rng(31);
  std::vector<std::vector<VectorField>> algebras = {
      {rotation(1), rotation(2), rotation(3)},
      {time_translation(), dilation(2, 1), projective()},
      {time_translation(), dilation(1, -1)},
      {rotation(1), rotation(2), rotation(3), time_translation(), dilation(1, -1)},
      {rotation(1), rotation(2), rotation(3), time_translation(), dilation(2, 1), projective()},
      {translation(1), translation(2), rotation(3), time_translation()},
  };
  for (const auto& fields : algebras) {
    std::string label = classify(structure_constants(fields)).recognized;
    for (int trial = 0; trial < 5; ++trial) {
      auto sc = structure_constants(mix(fields, rng));
      CHECK(sc.satisfies_jacobi());
      CHECK(classify(sc).recognized == label);
    }
  }
}

TEST_CASE("direct sum of two copies") {
  // so3 + so3 acting on separate triples is decomposed into two factors.
  StructureConstants sc = StructureConstants::zero(6);
  for (int base : {0, 3})
    for (const auto& [i, j, k] : std::vector<std::tuple<int, int, int>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}) {
      sc.c[base + i][base + j][base + k] = 1;
      sc.c[base + j][base + i][base + k] = -1;
    }
  CHECK(classify(sc).recognized == "direct_sum(so3, so3)");
  CHECK(decompose(sc).size() == 2);
}
