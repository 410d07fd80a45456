#include "liesym/liealgebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "liesym/errors.hpp"

namespace liesym {

StructureConstants StructureConstants::zero(std::size_t dim) {
  StructureConstants sc;
  sc.dim = dim;
  sc.c.assign(dim, std::vector<RationalVector>(dim, RationalVector(dim)));
  return sc;
}

RationalVector StructureConstants::bracket(const RationalVector& x, const RationalVector& y) const {
  RationalVector out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      Rational s = x[i] * y[j];
      for (std::size_t k = 0; k < dim; ++k)
        if (c[i][j][k] != 0) out[k] += s * c[i][j][k];
    }
  }
  return out;
}

bool StructureConstants::is_abelian() const {
  for (const auto& a : c)
    for (const auto& b : a)
      for (const auto& q : b)
        if (q != 0) return false;
  return true;
}

bool StructureConstants::antisymmetric() const {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        if (c[i][j][k] != -c[j][i][k]) return false;
  return true;
}

bool StructureConstants::satisfies_jacobi() const {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t m = 0; m < dim; ++m) {
          Rational s = 0;
          for (std::size_t l = 0; l < dim; ++l)
            s += c[j][k][l] * c[i][l][m] + c[k][i][l] * c[j][l][m] + c[i][j][l] * c[k][l][m];
          if (s != 0) return false;
        }
  return true;
}

namespace {

using Key = std::pair<std::size_t, Monomial>;

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const {
    if (a.first != b.first) return a.first < b.first;
    return MonomialOrder()(a.second, b.second);
  }
};

void index_field(const VectorField& X, std::map<Key, std::size_t, KeyLess>& index) {
  for (std::size_t c = 0; c <= X.dim(); ++c) {
    const SymExpr& k = X.component(c);
    if (!k.is_polynomial()) throw InputError("structure constants need polynomial field components");
    for (const auto& [m, q] : k.numerator().terms()) index.emplace(Key{c, m}, 0);
  }
}

RationalVector coords(const VectorField& X, const std::map<Key, std::size_t, KeyLess>& index) {
  RationalVector v(index.size());
  for (std::size_t c = 0; c <= X.dim(); ++c)
    for (const auto& [m, q] : X.component(c).numerator().terms()) v[index.at(Key{c, m})] = q;
  return v;
}

}  // namespace

StructureConstants structure_constants(const std::vector<VectorField>& basis, const NameTable* names) {
  const std::size_t d = basis.size();
  std::vector<std::vector<VectorField>> br(d, std::vector<VectorField>(d));
  std::map<Key, std::size_t, KeyLess> index;
  for (const auto& X : basis) index_field(X, index);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      br[i][j] = commutator(basis[i], basis[j]);
      index_field(br[i][j], index);
    }
  std::size_t next = 0;
  for (auto& [k, v] : index) v = next++;

  RationalMatrix B;
  for (const auto& X : basis) B.push_back(coords(X, index));
  if (d > 0 && rank(B, index.size()) != d) throw InputError("the fields are linearly dependent");

  StructureConstants sc = StructureConstants::zero(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      auto c = solve_in_span(B, coords(br[i][j], index));
      if (!c) throw ClosureError(i, j, br[i][j].str(names ? *names : NameTable::standard(basis[i].dim())));
      for (std::size_t k = 0; k < d; ++k) {
        sc.c[i][j][k] = (*c)[k];
        sc.c[j][i][k] = -(*c)[k];
      }
    }
  if (!sc.satisfies_jacobi()) throw SymbolicError("structure constants violate the Jacobi identity");
  return sc;
}

StructureConstants structure_constants(const SymmetryBasis& basis, const NameTable* names) {
  return structure_constants(basis.fields, names);
}

std::string format_brackets(const StructureConstants& sc) {
  std::string out;
  for (std::size_t i = 0; i < sc.dim; ++i)
    for (std::size_t j = i + 1; j < sc.dim; ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < sc.dim; ++k) {
        const Rational& q = sc.c[i][j][k];
        if (q == 0) continue;
        std::string name = "X" + std::to_string(k + 1);
        Rational a = abs(q);
        std::string coef = a == 1 ? "" : a.get_str() + "*";
        if (rhs.empty())
          rhs = (q < 0 ? "-" : "") + coef + name;
        else
          rhs += (q < 0 ? " - " : " + ") + coef + name;
      }
      if (rhs.empty()) continue;
      out += "[X" + std::to_string(i + 1) + ", X" + std::to_string(j + 1) + "] = " + rhs + "\n";
    }
  return out.empty() ? "abelian\n" : out;
}

RationalMatrix killing_form(const StructureConstants& sc) {
  const std::size_t d = sc.dim;
  RationalMatrix K(d, RationalVector(d));
  // (ad_i)_{kj} = c[i][j][k];  K_ij = tr(ad_i ad_j) = sum_{k,l} c[i][l][k] c[j][k][l]
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          if (sc.c[i][l][k] != 0 && sc.c[j][k][l] != 0) s += sc.c[i][l][k] * sc.c[j][k][l];
      K[i][j] = K[j][i] = s;
    }
  return K;
}

Signature signature(RationalMatrix m) {
  Signature sig;
  std::size_t d = m.size();
  std::vector<bool> done(d, false);
  auto eliminate = [&](std::size_t p) {
    Rational piv = m[p][p];
    (piv > 0 ? sig.positive : sig.negative)++;
    done[p] = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i] || m[i][p] == 0) continue;
      Rational f = m[i][p] / piv;
      for (std::size_t j = 0; j < d; ++j) m[i][j] -= f * m[p][j];
    }
    for (std::size_t j = 0; j < d; ++j)
      if (!done[j]) m[j][p] = m[p][j] = 0;
    // Keep symmetry on the remaining block.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (!done[i] && !done[j]) m[j][i] = m[i][j];
  };
  for (;;) {
    std::size_t p = d;
    for (std::size_t i = 0; i < d && p == d; ++i)
      if (!done[i] && m[i][i] != 0) p = i;
    if (p != d) {
      eliminate(p);
      continue;
    }
    // All remaining diagonal entries vanish; use an off-diagonal pair.
    std::size_t a = d, b = d;
    for (std::size_t i = 0; i < d && a == d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (!done[i] && !done[j] && m[i][j] != 0) {
          a = i;
          b = j;
          break;
        }
    if (a == d) break;
    // Row/column a += row/column b: the new diagonal entry is 2 m[a][b].
    for (std::size_t j = 0; j < d; ++j) m[a][j] += m[b][j];
    for (std::size_t i = 0; i < d; ++i) m[i][a] += m[i][b];
    eliminate(a);
  }
  for (std::size_t i = 0; i < d; ++i)
    if (!done[i]) sig.zero++;
  return sig;
}

StructureConstants restrict_to(const StructureConstants& sc, const RationalMatrix& basis) {
  const std::size_t k = basis.size();
  StructureConstants out = StructureConstants::zero(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      auto c = solve_in_span(basis, sc.bracket(basis[i], basis[j]));
      if (!c) throw SymbolicError("the span is not closed under the bracket");
      for (std::size_t m = 0; m < k; ++m) {
        out.c[i][j][m] = (*c)[m];
        out.c[j][i][m] = -(*c)[m];
      }
    }
  return out;
}

namespace {

using Square = RationalMatrix;

Square identity(std::size_t d) {
  Square I(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i) I[i][i] = 1;
  return I;
}

Square multiply(const Square& a, const Square& b) {
  const std::size_t d = a.size();
  Square out(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Square power(const Square& a, std::size_t e) {
  Square out = identity(a.size());
  for (std::size_t i = 0; i < e; ++i) out = multiply(out, a);
  return out;
}

// Column space and kernel of a matrix acting on column vectors; results are
// row lists of vectors.
RationalMatrix kernel(const Square& m) {
  std::size_t d = m.size();
  return nullspace(rref(m, d), d);
}

RationalMatrix column_space(const Square& m) {
  std::size_t d = m.size();
  Square t(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t[j][i] = m[i][j];
  return rref(t, d).rows;
}

// Best rational approximation with a bounded denominator.
Rational rationalize(double x) {
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double f = x;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(f);
    long long ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > 1000) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) < 1e-12) break;
    double frac = f - a;
    if (frac < 1e-12) break;
    f = 1.0 / frac;
  }
  Rational q(static_cast<long>(h1), static_cast<long>(k1));
  q.canonicalize();
  return q;
}

// Basis of the commutant {T : T ad_x = ad_x T for all x}.
std::vector<Square> commutant(const StructureConstants& sc) {
  const std::size_t d = sc.dim;
  RationalMatrix rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) {
        RationalVector row(d * d);
        // (T ad_i)[p][q] - (ad_i T)[p][q], with (ad_i)[k][j] = c[i][j][k]
        for (std::size_t m = 0; m < d; ++m) {
          row[p * d + m] += sc.c[i][q][m];
          row[m * d + q] -= sc.c[i][m][p];
        }
        rows.push_back(std::move(row));
      }
  std::vector<Square> out;
  for (const auto& v : nullspace(rref(rows, d * d), d * d)) {
    Square T(d, RationalVector(d));
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) T[p][q] = v[p * d + q];
    out.push_back(std::move(T));
  }
  return out;
}

// Express each row of `sub` (coordinates in `basis`) in the ambient coordinates.
RationalMatrix lift(const RationalMatrix& sub, const RationalMatrix& basis) {
  RationalMatrix out;
  for (const auto& s : sub) {
    RationalVector v(basis.front().size());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != 0)
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += s[i] * basis[i][j];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RationalMatrix> decompose_impl(const StructureConstants& sc, std::mt19937& rng) {
  const std::size_t d = sc.dim;
  if (d == 0) return {};
  if (sc.is_abelian()) {
    std::vector<RationalMatrix> out;
    for (std::size_t i = 0; i < d; ++i) out.push_back({identity(d)[i]});
    return out;
  }
  auto comm = commutant(sc);
  Square T(d, RationalVector(d));
  std::uniform_int_distribution<int> pick(-9, 9);
  for (const auto& B : comm) {
    Rational r = pick(rng);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) T[p][q] += r * B[p][q];
  }

  Eigen::MatrixXd M(d, d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) M(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = T[p][q].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  std::vector<Rational> candidates;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-4) continue;
    Rational q = rationalize(z.real());
    if (std::abs(q.get_d() - z.real()) > 1e-4) continue;
    if (std::find(candidates.begin(), candidates.end(), q) == candidates.end()) candidates.push_back(q);
  }

  // Generalized eigenspaces for the eigenvalues that verify exactly.
  std::vector<RationalMatrix> pieces;
  Square rest = identity(d);
  std::size_t covered = 0;
  for (const auto& lam : candidates) {
    Square shifted = T;
    for (std::size_t i = 0; i < d; ++i) shifted[i][i] -= lam;
    Square P = power(shifted, d);
    RationalMatrix ker = kernel(P);
    if (ker.empty()) continue;
    covered += ker.size();
    pieces.push_back(std::move(ker));
    rest = multiply(rest, P);
  }
  if (covered < d) {
    RationalMatrix im = column_space(rest);
    if (!im.empty()) pieces.push_back(std::move(im));
  }
  if (pieces.size() <= 1) return {identity(d)};

  std::vector<RationalMatrix> out;
  for (const auto& V : pieces) {
    StructureConstants sub = restrict_to(sc, V);
    for (const auto& W : decompose_impl(sub, rng)) out.push_back(lift(W, V));
  }
  return out;
}

std::string factor_label(const StructureConstants& h) {
  if (h.dim == 1) return "abelian(1)";
  if (h.dim == 2) return "g2_nonabelian";
  if (h.dim == 3) {
    Signature s = signature(killing_form(h));
    if (s.negative == 3) return "so3";
    if (s.zero == 0) return "sl2R";
  }
  return "unclassified(" + std::to_string(h.dim) + ")";
}

int label_rank(const std::string& s) {
  if (s == "so3") return 0;
  if (s == "sl2R") return 1;
  if (s == "g2_nonabelian") return 2;
  if (s.rfind("unclassified", 0) == 0) return 3;
  return 4;
}

std::size_t span_dim(const RationalMatrix& rows, std::size_t d) { return rows.empty() ? 0 : rank(rows, d); }

}  // namespace

std::vector<RationalMatrix> decompose(const StructureConstants& sc) {
  std::mt19937 rng(20240611u);
  return decompose_impl(sc, rng);
}

AlgebraReport classify(const StructureConstants& sc) {
  const std::size_t d = sc.dim;
  AlgebraReport rep;
  rep.dim = d;
  rep.abelian = sc.is_abelian();

  RationalMatrix cur = identity(d);
  rep.derived_series.push_back(d);
  while (!cur.empty()) {
    RationalMatrix next;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) next.push_back(sc.bracket(cur[i], cur[j]));
    std::size_t nd = span_dim(next, d);
    if (nd == cur.size()) break;
    cur = nd == 0 ? RationalMatrix{} : rref(next, d).rows;
    rep.derived_series.push_back(nd);
  }

  RationalMatrix center_rows;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      RationalVector row(d);
      for (std::size_t i = 0; i < d; ++i) row[i] = sc.c[i][j][k];
      center_rows.push_back(std::move(row));
    }
  rep.center_dim = d == 0 ? 0 : nullspace(rref(center_rows, d), d).size();
  rep.killing = signature(killing_form(sc));

  std::size_t abelian_total = 0;
  for (const auto& V : decompose(sc)) {
    StructureConstants h = restrict_to(sc, V);
    std::string label = factor_label(h);
    if (label == "abelian(1)")
      ++abelian_total;
    else
      rep.factors.push_back(label);
  }
  if (abelian_total > 0) rep.factors.push_back("abelian(" + std::to_string(abelian_total) + ")");
  std::stable_sort(rep.factors.begin(), rep.factors.end(),
                   [](const std::string& a, const std::string& b) { return label_rank(a) < label_rank(b); });

  if (rep.factors.empty())
    rep.recognized = "abelian(0)";
  else if (rep.factors.size() == 1)
    rep.recognized = rep.factors.front();
  else {
    rep.recognized = "direct_sum(";
    for (std::size_t i = 0; i < rep.factors.size(); ++i) rep.recognized += (i ? ", " : "") + rep.factors[i];
    rep.recognized += ")";
  }
  return rep;
}

}  // namespace liesym
