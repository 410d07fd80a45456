#pragma once

// Exact symbolic arithmetic over the rationals.
//
// Expressions live in the variables of a second-order system: one
// independent variable, coordinates, velocities and at most one radical r,
// where r^2 is the sum of squares of a fixed set of base variables (the
// coordinates, by default). Numerators are Laurent polynomials in which r
// appears to power 0 or 1; denominators are products of powers of primitive,
// radical-free polynomials with no monomial content.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace liesym {

using Rational = mpq_class;
using Integer = mpz_class;

enum class VarKind : std::uint8_t { Indep = 0, Coord = 1, Velocity = 2, Radical = 3 };

/// A variable. For coordinates and velocities `index` is 1-based; for the
/// radical it is a bitmask of its base variables (bit 0: the independent
/// variable, bit a: coordinate a).
struct VarId {
  VarKind kind = VarKind::Indep;
  std::uint32_t index = 0;

  static constexpr VarId indep() { return {VarKind::Indep, 0}; }
  static constexpr VarId coord(std::uint32_t a) { return {VarKind::Coord, a}; }
  static constexpr VarId velocity(std::uint32_t a) { return {VarKind::Velocity, a}; }
  static constexpr VarId radical(std::uint32_t base_mask) { return {VarKind::Radical, base_mask}; }
  /// The radical over coordinates 1..n.
  static VarId radical_over_coords(std::size_t n);

  bool is_radical() const { return kind == VarKind::Radical; }
  /// Base variables of a radical, in VarId order.
  std::vector<VarId> radical_base() const;
  /// True when this radical's square contains `v`.
  bool radical_contains(VarId v) const;

  friend auto operator<=>(const VarId&, const VarId&) = default;
};

class Monomial {
 public:
  using Entry = std::pair<VarId, int>;

  Monomial() = default;
  static Monomial var(VarId v, int exponent = 1);
  /// Entries need not be sorted; zero exponents are dropped, repeats are merged.
  static Monomial from_entries(std::vector<Entry> entries);

  int exponent(VarId v) const;
  int degree() const { return degree_; }
  bool is_one() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  Monomial with_exponent(VarId v, int exponent) const;
  Monomial pow(int k) const;
  /// The radical variable carried by this monomial, if any.
  std::optional<VarId> radical() const;
  bool has_negative_exponent() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Entry> entries_;
  int degree_ = 0;
};

/// Graded lexicographic order; the independent variable is most significant.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);
  static Polynomial var(VarId v) { return monomial(Monomial::var(v)); }
  /// Sum of squares of the radical's base variables.
  static Polynomial radical_square(VarId radical);

  void add_term(const Monomial& m, const Rational& c);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }
  /// Largest term under MonomialOrder. Precondition: nonzero.
  const std::pair<const Monomial, Rational>& leading() const { return *terms_.rbegin(); }

  bool depends_on(VarId v) const;
  std::vector<VarId> variables() const;
  std::optional<VarId> radical() const;
  /// Split p = p0 + r*p1 with p0, p1 radical-free.
  std::pair<Polynomial, Polynomial> split_radical() const;

  /// Formal partial derivative; the radical is treated as an independent symbol.
  Polynomial formal_diff(VarId v) const;
  /// Exact quotient p / f when f divides p (Laurent monomial shifts allowed).
  /// `f` must have nonnegative exponents.
  std::optional<Polynomial> divide_exact(const Polynomial& f) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial times(const Monomial& m) const;
  Polynomial pow(unsigned k) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  /// Product with radical reduction r^2 -> sum of squares.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  /// Total order used to sort denominator factors.
  friend bool operator<(const Polynomial& a, const Polynomial& b);

 private:
  void reduce_radical();
  Terms terms_;
};

/// Display names of variables.
struct NameTable {
  std::string indep = "t";
  std::vector<std::string> coord;
  std::vector<std::string> velocity;
  std::string radical = "r";

  static NameTable standard(std::size_t n);
  std::string name(VarId v) const;
};

std::string to_string(const Polynomial& p, const NameTable& names);

/// Canonical exact rational function. See the file comment for the invariant.
class SymExpr {
 public:
  using Factor = std::pair<Polynomial, int>;

  SymExpr() = default;
  SymExpr(int c);  // NOLINT(google-explicit-constructor)
  SymExpr(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit SymExpr(const Polynomial& p);
  static SymExpr var(VarId v);
  /// num / den; throws DivisionByZero when den is identically zero.
  static SymExpr fraction(const Polynomial& num, const Polynomial& den);

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  bool is_polynomial() const { return den_.empty(); }
  /// Precondition: is_constant().
  Rational constant_value() const { return num_.constant_term(); }
  const Polynomial& numerator() const { return num_; }
  const std::vector<Factor>& denominator_factors() const { return den_; }
  Polynomial denominator() const;
  std::optional<VarId> radical() const { return radical_; }
  bool depends_on(VarId v) const;
  /// num / (this expression's denominator).
  SymExpr with_numerator(const Polynomial& num) const;

  SymExpr diff(VarId v) const;
  SymExpr pow(int k) const;
  /// Simultaneous substitution. When the radical is not bound explicitly, its
  /// base variables may only be renamed to other plain variables.
  SymExpr substitute(const std::map<VarId, SymExpr>& bindings) const;

  SymExpr operator-() const;
  friend SymExpr operator+(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator-(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator/(const SymExpr& a, const SymExpr& b);
  SymExpr& operator+=(const SymExpr& o) { return *this = *this + o; }
  SymExpr& operator-=(const SymExpr& o) { return *this = *this - o; }
  SymExpr& operator*=(const SymExpr& o) { return *this = *this * o; }
  /// Equality as functions on r > 0.
  friend bool operator==(const SymExpr& a, const SymExpr& b);

  std::string str(const NameTable& names) const;

 private:
  static SymExpr canonical(Polynomial num, std::vector<Factor> raw_factors, std::optional<VarId> radical);
  static SymExpr over(const Polynomial& num, const std::vector<Factor>& factors, std::optional<VarId> radical);
  void cancel();

  Polynomial num_;
  std::vector<Factor> den_;
  std::optional<VarId> radical_;
};

/// normalize(): build the canonical form of a raw quotient.
inline SymExpr normalize(const Polynomial& num, const Polynomial& den) { return SymExpr::fraction(num, den); }

/// Coefficients of `e` with respect to the monomials in `vars`.
/// Throws SymbolicError when a denominator factor depends on `vars`.
std::map<Monomial, SymExpr, MonomialOrder> collect(const SymExpr& e, const std::vector<VarId>& vars);

/// e = p / d with d a monomial times the expanded denominator factors.
std::pair<Polynomial, Polynomial> clear_denominators(const SymExpr& e);

/// Slot layout for numerical evaluation: indep -> 0, coord a -> a,
/// velocity a -> n + a. The radical is computed from its base slots.
struct SlotLayout {
  std::size_t n = 0;
  std::size_t size() const { return 2 * n + 1; }
  std::size_t slot(VarId v) const;
};

/// Double-precision evaluator for a fixed expression.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const SymExpr& e, SlotLayout layout);
  /// Throws NumericError when the denominator or a base with a negative
  /// exponent drops below `floor` in magnitude.
  double operator()(std::span<const double> slots, double floor = 1e-300) const;

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<std::size_t, int>> powers;  // slot, exponent; slot == npos: radical
  };
  static double eval_terms(const std::vector<Term>& terms, std::span<const double> slots, double r, double floor);
  std::vector<Term> num_;
  std::vector<std::pair<std::vector<Term>, int>> den_;
  std::vector<std::size_t> radical_slots_;
  bool has_radical_ = false;
};

}  // namespace liesym
