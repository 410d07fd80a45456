#include "liesym/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace liesym {

void make_primitive(IntegerVector& row) {
  Integer g = 0;
  for (const auto& x : row) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (g == 0) return;
  auto lead = std::find_if(row.begin(), row.end(), [](const Integer& x) { return x != 0; });
  if (*lead < 0) g = -g;
  if (g != 1)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntegerVector to_integer_row(const RationalVector& row) {
  Integer l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntegerVector out;
  out.reserve(row.size());
  for (const auto& q : row) out.push_back(q.get_num() * (l / q.get_den()));
  make_primitive(out);
  return out;
}

Echelon integer_rref(std::vector<IntegerVector> rows, std::size_t ncols) {
  // Deduplicate primitive rows; the determining systems repeat many equations.
  std::set<IntegerVector> seen;
  std::vector<IntegerVector> work;
  for (auto& r : rows) {
    if (r.size() != ncols) throw std::invalid_argument("row length does not match column count");
    make_primitive(r);
    if (std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; })) continue;
    if (seen.insert(r).second) work.push_back(std::move(r));
  }

  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t col = 0; col < ncols && top < work.size(); ++col) {
    std::size_t best = work.size();
    for (std::size_t i = top; i < work.size(); ++i) {
      if (work[i][col] == 0) continue;
      if (best == work.size() || abs(work[i][col]) < abs(work[best][col])) best = i;
    }
    if (best == work.size()) continue;
    std::swap(work[top], work[best]);
    const IntegerVector& p = work[top];
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (i == top || work[i][col] == 0) continue;
      Integer g;
      mpz_gcd(g.get_mpz_t(), p[col].get_mpz_t(), work[i][col].get_mpz_t());
      Integer a = p[col] / g, b = work[i][col] / g;
      IntegerVector& row = work[i];
      for (std::size_t j = 0; j < ncols; ++j) {
        if (p[j] == 0 && row[j] == 0) continue;
        row[j] = a * row[j] - b * p[j];
      }
      make_primitive(row);
    }
    pivots.push_back(col);
    ++top;
  }

  Echelon e;
  e.pivots = pivots;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    RationalVector r(ncols);
    const Integer& d = work[i][pivots[i]];
    for (std::size_t j = 0; j < ncols; ++j) {
      if (work[i][j] == 0) continue;
      r[j] = Rational(work[i][j], d);
      r[j].canonicalize();
    }
    e.rows.push_back(std::move(r));
  }
  return e;
}

Echelon rref(const RationalMatrix& rows, std::size_t ncols) {
  std::vector<IntegerVector> ints;
  ints.reserve(rows.size());
  for (const auto& r : rows) ints.push_back(to_integer_row(r));
  return integer_rref(std::move(ints), ncols);
}

std::size_t rank(const RationalMatrix& rows, std::size_t ncols) { return rref(rows, ncols).pivots.size(); }

RationalMatrix nullspace(const Echelon& e, std::size_t ncols) {
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(ncols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  return rref(basis, ncols).rows;
}

std::optional<RationalVector> solve_in_span(const RationalMatrix& basis, const RationalVector& target) {
  // Columns of the augmented system are the basis vectors; solve by
  // eliminating on the transposed matrix [B^T | target].
  const std::size_t k = basis.size();
  const std::size_t m = target.size();
  RationalMatrix aug(m, RationalVector(k + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
    aug[i][k] = target[i];
  }
  Echelon e = rref(aug, k + 1);
  if (!e.pivots.empty() && e.pivots.back() == k) return std::nullopt;
  if (e.pivots.size() != k) throw std::invalid_argument("basis vectors are linearly dependent");
  RationalVector c(k);
  for (std::size_t i = 0; i < e.rows.size(); ++i) c[e.pivots[i]] = e.rows[i][k];
  return c;
}

}  // namespace liesym
