#include "liesym/symexpr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "liesym/errors.hpp"

namespace liesym {

// ---------------------------------------------------------------- VarId

VarId VarId::radical_over_coords(std::size_t n) {
  std::uint32_t mask = 0;
  for (std::size_t a = 1; a <= n; ++a) mask |= (1u << a);
  return radical(mask);
}

std::vector<VarId> VarId::radical_base() const {
  std::vector<VarId> out;
  if (!is_radical()) return out;
  if (index & 1u) out.push_back(indep());
  for (std::uint32_t a = 1; a < 32; ++a)
    if (index & (1u << a)) out.push_back(coord(a));
  return out;
}

bool VarId::radical_contains(VarId v) const {
  if (!is_radical()) return false;
  if (v.kind == VarKind::Indep) return (index & 1u) != 0;
  if (v.kind == VarKind::Coord && v.index < 32) return (index & (1u << v.index)) != 0;
  return false;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(VarId v, int exponent) {
  Monomial m;
  if (exponent != 0) {
    m.entries_.push_back({v, exponent});
    m.degree_ = exponent;
  }
  return m;
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : entries) {
    if (!m.entries_.empty() && m.entries_.back().first == v)
      m.entries_.back().second += e;
    else
      m.entries_.push_back({v, e});
  }
  std::erase_if(m.entries_, [](const Entry& x) { return x.second == 0; });
  for (const auto& [v, e] : m.entries_) m.degree_ += e;
  return m;
}

int Monomial::exponent(VarId v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& a, const VarId& b) { return a.first < b; });
  return (it != entries_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::with_exponent(VarId v, int exponent) const {
  std::vector<Entry> es;
  for (const auto& x : entries_)
    if (x.first != v) es.push_back(x);
  es.push_back({v, exponent});
  return from_entries(std::move(es));
}

Monomial Monomial::pow(int k) const {
  Monomial m;
  if (k == 0) return m;
  m.entries_ = entries_;
  for (auto& x : m.entries_) x.second *= k;
  m.degree_ = degree_ * k;
  return m;
}

std::optional<VarId> Monomial::radical() const {
  if (!entries_.empty() && entries_.back().first.is_radical()) return entries_.back().first;
  return std::nullopt;
}

bool Monomial::has_negative_exponent() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const Entry& x) { return x.second < 0; });
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.entries_.reserve(a.entries_.size() + b.entries_.size());
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() || j != b.entries_.end()) {
    if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
      m.entries_.push_back(*i++);
    } else if (i == a.entries_.end() || j->first < i->first) {
      m.entries_.push_back(*j++);
    } else {
      int e = i->second + j->second;
      if (e != 0) m.entries_.push_back({i->first, e});
      ++i;
      ++j;
    }
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) { return a * b.pow(-1); }

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  auto i = ea.begin();
  auto j = eb.begin();
  while (i != ea.end() || j != eb.end()) {
    VarId v;
    int xa = 0;
    int xb = 0;
    if (j == eb.end() || (i != ea.end() && i->first < j->first)) {
      v = i->first;
      xa = i->second;
      ++i;
    } else if (i == ea.end() || j->first < i->first) {
      v = j->first;
      xb = j->second;
      ++j;
    } else {
      xa = i->second;
      xb = j->second;
      ++i;
      ++j;
    }
    if (xa != xb) return xa < xb;
  }
  return false;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::radical_square(VarId radical) {
  Polynomial s;
  for (VarId b : radical.radical_base()) s.add_term(Monomial::var(b, 2), 1);
  return s;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::depends_on(VarId v) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.exponent(v) != 0; });
}

std::vector<VarId> Polynomial::variables() const {
  std::vector<VarId> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.entries()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::optional<VarId> Polynomial::radical() const {
  std::optional<VarId> r;
  for (const auto& [m, c] : terms_) {
    auto mr = m.radical();
    if (!mr) continue;
    if (r && *r != *mr) throw SymbolicError("expression mixes two different radicals");
    r = mr;
  }
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::split_radical() const {
  Polynomial p0;
  Polynomial p1;
  for (const auto& [m, c] : terms_) {
    auto r = m.radical();
    if (r && m.exponent(*r) == 1)
      p1.add_term(m.with_exponent(*r, 0), c);
    else
      p0.add_term(m, c);
  }
  return {p0, p1};
}

Polynomial Polynomial::formal_diff(VarId v) const {
  Polynomial d;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (e != 0) d.add_term(m.with_exponent(v, e - 1), c * e);
  }
  return d;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial p = *this;
  for (auto& [m, x] : p.terms_) x *= c;
  return p;
}

Polynomial Polynomial::times(const Monomial& m) const {
  Polynomial p;
  for (const auto& [t, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), t * m, c);
  // Multiplying by a monomial preserves the order, so the hint keeps insertion linear.
  if (m.radical() || std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.radical(); }))
    p.reduce_radical();
  return p;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial p = a;
  for (const auto& [m, c] : b.terms_) p.add_term(m, c);
  return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial p = a;
  for (const auto& [m, c] : b.terms_) p.add_term(m, -c);
  return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial p;
  bool radical = false;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma * mb;
      if (m.radical()) radical = true;
      p.add_term(m, ca * cb);
    }
  if (radical) p.reduce_radical();
  return p;
}

bool operator<(const Polynomial& a, const Polynomial& b) {
  auto i = a.terms_.rbegin();
  auto j = b.terms_.rbegin();
  MonomialOrder less;
  for (; i != a.terms_.rend() && j != b.terms_.rend(); ++i, ++j) {
    if (less(i->first, j->first)) return true;
    if (less(j->first, i->first)) return false;
    if (i->second != j->second) return i->second < j->second;
  }
  return a.terms_.size() < b.terms_.size();
}

void Polynomial::reduce_radical() {
  bool needed = false;
  for (const auto& [m, c] : terms_) {
    const auto& es = m.entries();
    if (es.empty() || !es.back().first.is_radical()) continue;
    if (es.size() >= 2 && es[es.size() - 2].first.is_radical())
      throw SymbolicError("expression mixes two different radicals");
    int e = es.back().second;
    if (e < 0) throw SymbolicError("internal: negative radical exponent in a numerator");
    if (e >= 2) needed = true;
  }
  if (!needed) return;
  Terms old;
  old.swap(terms_);
  for (const auto& [m, c] : old) {
    auto r = m.radical();
    int e = r ? m.exponent(*r) : 0;
    if (e < 2) {
      add_term(m, c);
      continue;
    }
    Polynomial s = radical_square(*r).pow(static_cast<unsigned>(e / 2));
    Monomial rest = m.with_exponent(*r, e % 2);
    for (const auto& [ms, cs] : s.terms_) add_term(rest * ms, c * cs);
  }
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& f) const {
  if (f.is_zero()) throw DivisionByZero("division by the zero polynomial");
  if (is_zero()) return Polynomial{};
  // Shift to nonnegative exponents; f is coprime to monomials by construction.
  std::map<VarId, int> mins;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.entries())
      if (e < 0) mins[v] = std::min(mins[v], e);
  std::vector<Monomial::Entry> shift_entries;
  for (const auto& [v, e] : mins) shift_entries.push_back({v, -e});
  Monomial shift = Monomial::from_entries(shift_entries);

  Polynomial rem;
  for (const auto& [m, c] : terms_) rem.terms_.emplace(m * shift, c);
  const auto& [flm, flc] = f.leading();
  Polynomial quotient;
  while (!rem.is_zero()) {
    const auto& [lm, lc] = rem.leading();
    Monomial q = lm / flm;
    if (q.has_negative_exponent()) return std::nullopt;
    Rational qc = lc / flc;
    quotient.add_term(q, qc);
    for (const auto& [fm, fc] : f.terms_) rem.add_term(fm * q, -qc * fc);
  }
  Polynomial out;
  Monomial unshift = shift.pow(-1);
  for (const auto& [m, c] : quotient.terms_) out.terms_.emplace(m * unshift, c);
  return out;
}

// ---------------------------------------------------------------- names / printing

NameTable NameTable::standard(std::size_t n) {
  NameTable t;
  for (std::size_t a = 1; a <= n; ++a) {
    t.coord.push_back("x" + std::to_string(a));
    t.velocity.push_back("v" + std::to_string(a));
  }
  return t;
}

std::string NameTable::name(VarId v) const {
  switch (v.kind) {
    case VarKind::Indep:
      return indep;
    case VarKind::Coord:
      return v.index >= 1 && v.index <= coord.size() ? coord[v.index - 1] : "x" + std::to_string(v.index);
    case VarKind::Velocity:
      return v.index >= 1 && v.index <= velocity.size() ? velocity[v.index - 1] : "v" + std::to_string(v.index);
    case VarKind::Radical:
      return radical;
  }
  return "?";
}

namespace {

std::string monomial_str(const Monomial& m, const NameTable& names) {
  std::string s;
  for (const auto& [v, e] : m.entries()) {
    if (!s.empty()) s += "*";
    s += names.name(v);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string to_string(const Polynomial& p, const NameTable& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string term;
    Rational mag = abs(c);
    bool negative = c < 0;
    if (m.is_one())
      term = mag.get_str();
    else if (mag == 1)
      term = monomial_str(m, names);
    else
      term = mag.get_str() + "*" + monomial_str(m, names);
    if (first)
      out = negative ? "-" + term : term;
    else
      out += negative ? " - " + term : " + " + term;
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------- SymExpr helpers

namespace {

struct Primitive {
  Rational scalar;
  Monomial mono;
  Polynomial prim;
};

// P = scalar * mono * prim with prim integral, content 1, positive leading
// coefficient and no monomial factor.
Primitive make_primitive(const Polynomial& p) {
  std::map<VarId, int> mins;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first) {
      for (const auto& [v, e] : m.entries()) mins[v] = e;
      first = false;
      continue;
    }
    for (auto& [v, e] : mins) e = std::min(e, m.exponent(v));
    for (const auto& [v, e] : m.entries())
      if (!mins.count(v)) mins[v] = std::min(0, e);
  }
  std::vector<Monomial::Entry> es(mins.begin(), mins.end());
  Monomial mono = Monomial::from_entries(es);
  Polynomial shifted = p.times(mono.pow(-1));

  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const auto& [m, c] : shifted.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [m, c] : shifted.terms()) {
    Integer v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_mpz_t());
  }
  Rational scalar(num_gcd, den_lcm);
  scalar.canonicalize();
  if (shifted.leading().second < 0) scalar = -scalar;
  return {scalar, mono, shifted.scaled(1 / scalar)};
}

std::optional<VarId> join_radicals(std::optional<VarId> a, std::optional<VarId> b) {
  if (a && b && *a != *b) throw SymbolicError("expression mixes two different radicals");
  return a ? a : b;
}

void add_canonical_factor(std::vector<SymExpr::Factor>& out, const Polynomial& f, int k) {
  for (auto& [g, e] : out)
    if (g == f) {
      e += k;
      return;
    }
  out.emplace_back(f, k);
}

// Insert prim^k, splitting off already-known factors (and the radical's square).
void insert_factor(std::vector<SymExpr::Factor>& out, Polynomial& num, Polynomial prim, int k,
                   std::optional<VarId> radical) {
  for (auto& [g, e] : out)
    if (g == prim) {
      e += k;
      return;
    }
  std::vector<Polynomial> candidates;
  for (const auto& [g, e] : out) candidates.push_back(g);
  if (radical) candidates.push_back(Polynomial::radical_square(*radical));
  for (const auto& cand : candidates) {
    while (!prim.is_constant()) {
      auto q = prim.divide_exact(cand);
      if (!q || q->is_zero()) break;
      add_canonical_factor(out, cand, k);
      prim = *q;
    }
  }
  if (prim.is_constant()) {
    Rational c = prim.constant_term();
    Rational ck = 1;
    for (int i = 0; i < k; ++i) ck *= c;
    num = num.scaled(1 / ck);
    return;
  }
  Primitive pr = make_primitive(prim);
  Rational sk = 1;
  for (int i = 0; i < k; ++i) sk *= pr.scalar;
  num = num.scaled(1 / sk).times(pr.mono.pow(-k));
  add_canonical_factor(out, pr.prim, k);
}

}  // namespace

// ---------------------------------------------------------------- SymExpr

SymExpr::SymExpr(int c) : num_(Rational(c)) {}
SymExpr::SymExpr(const Rational& c) : num_(c) {}
SymExpr::SymExpr(const Polynomial& p) : num_(p * Polynomial(1)), radical_(p.radical()) {}

SymExpr SymExpr::with_numerator(const Polynomial& num) const { return over(num, den_, radical_); }

SymExpr SymExpr::var(VarId v) {
  SymExpr e(Polynomial::var(v));
  if (v.is_radical()) e.radical_ = v;
  return e;
}

SymExpr SymExpr::canonical(Polynomial num, std::vector<Factor> raw, std::optional<VarId> radical) {
  radical = join_radicals(radical, num.radical());
  std::vector<Factor> out;
  for (auto& [p, k] : raw) {
    if (k == 0) continue;
    if (k < 0) throw SymbolicError("internal: negative denominator exponent");
    if (p.is_zero()) throw DivisionByZero("denominator is identically zero");
    if (p.radical()) throw SymbolicError("internal: radical in a denominator factor");
    Primitive pr = make_primitive(p);
    Rational sk = 1;
    for (int i = 0; i < k; ++i) sk *= pr.scalar;
    num = num.scaled(1 / sk).times(pr.mono.pow(-k));
    if (pr.prim.is_constant()) continue;
    insert_factor(out, num, pr.prim, k, radical);
  }
  SymExpr e;
  e.num_ = std::move(num);
  e.den_ = std::move(out);
  e.radical_ = radical;
  e.cancel();
  return e;
}

SymExpr SymExpr::over(const Polynomial& num, const std::vector<Factor>& factors, std::optional<VarId> radical) {
  SymExpr e;
  e.num_ = num;
  e.den_ = factors;
  e.radical_ = join_radicals(radical, num.radical());
  e.cancel();
  return e;
}

void SymExpr::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [f, k] : den_) {
    while (k > 0) {
      auto q = num_.divide_exact(f);
      if (!q) break;
      num_ = std::move(*q);
      --k;
    }
  }
  std::erase_if(den_, [](const Factor& x) { return x.second == 0; });
  std::sort(den_.begin(), den_.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
}

SymExpr SymExpr::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero("denominator is identically zero");
  auto radical = join_radicals(num.radical(), den.radical());
  if (auto r = den.radical()) {
    auto [a, b] = den.split_radical();
    Polynomial conj = a - b * Polynomial::var(*r);
    Polynomial rational_den = a * a - Polynomial::radical_square(*r) * b * b;
    return canonical(num * conj, {{rational_den, 1}}, radical);
  }
  return canonical(num, {{den, 1}}, radical);
}

Polynomial SymExpr::denominator() const {
  Polynomial d(1);
  for (const auto& [f, k] : den_) d = d * f.pow(static_cast<unsigned>(k));
  return d;
}

bool SymExpr::depends_on(VarId v) const {
  if (num_.depends_on(v)) return true;
  if (radical_ && radical_->radical_contains(v) && num_.radical()) return true;
  return std::any_of(den_.begin(), den_.end(), [&](const Factor& f) { return f.first.depends_on(v); });
}

SymExpr SymExpr::operator-() const {
  SymExpr e = *this;
  e.num_ = -e.num_;
  return e;
}

SymExpr operator+(const SymExpr& a, const SymExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto radical = join_radicals(a.radical_, b.radical_);
  if (a.den_.empty() && b.den_.empty()) {
    SymExpr e;
    e.num_ = a.num_ + b.num_;
    e.radical_ = radical;
    return e;
  }
  std::vector<SymExpr::Factor> lcm = a.den_;
  for (const auto& [f, k] : b.den_) {
    auto it = std::find_if(lcm.begin(), lcm.end(), [&](const SymExpr::Factor& x) { return x.first == f; });
    if (it == lcm.end())
      lcm.emplace_back(f, k);
    else
      it->second = std::max(it->second, k);
  }
  auto lift = [&](const SymExpr& e) {
    Polynomial n = e.num_;
    for (const auto& [f, k] : lcm) {
      int have = 0;
      for (const auto& [g, j] : e.den_)
        if (g == f) have = j;
      if (k > have) n = n * f.pow(static_cast<unsigned>(k - have));
    }
    return n;
  };
  return SymExpr::over(lift(a) + lift(b), lcm, radical);
}

SymExpr operator-(const SymExpr& a, const SymExpr& b) { return a + (-b); }

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  if (a.is_zero() || b.is_zero()) return {};
  auto radical = join_radicals(a.radical_, b.radical_);
  if (a.den_.empty() && b.den_.empty()) {
    SymExpr e;
    e.num_ = a.num_ * b.num_;
    e.radical_ = radical;
    return e;
  }
  std::vector<SymExpr::Factor> den = a.den_;
  for (const auto& [f, k] : b.den_) add_canonical_factor(den, f, k);
  return SymExpr::over(a.num_ * b.num_, den, radical);
}

SymExpr operator/(const SymExpr& a, const SymExpr& b) {
  if (b.is_zero()) throw DivisionByZero("division by an expression that is identically zero");
  if (b.is_constant()) {
    SymExpr e = a;
    e.num_ = e.num_.scaled(1 / b.constant_value());
    return e;
  }
  auto radical = join_radicals(a.radical_, b.radical_);
  Polynomial num = a.num_;
  for (const auto& [f, k] : b.den_) num = num * f.pow(static_cast<unsigned>(k));
  Polynomial rational_den;
  if (auto r = b.num_.radical()) {
    auto [p0, p1] = b.num_.split_radical();
    num = num * (p0 - p1 * Polynomial::var(*r));
    rational_den = p0 * p0 - Polynomial::radical_square(*r) * p1 * p1;
  } else {
    rational_den = b.num_;
  }
  std::vector<SymExpr::Factor> raw = a.den_;
  raw.emplace_back(rational_den, 1);
  return SymExpr::canonical(num, raw, radical);
}

bool operator==(const SymExpr& a, const SymExpr& b) { return (a - b).is_zero(); }

SymExpr SymExpr::pow(int k) const {
  if (k == 0) return SymExpr(1);
  if (is_zero()) {
    if (k < 0) throw DivisionByZero("zero raised to a negative power");
    return {};
  }
  if (den_.empty() && num_.size() == 1) {
    const auto& [m, c] = *num_.terms().begin();
    Rational ck = 1;
    for (int i = 0; i < std::abs(k); ++i) ck *= c;
    if (k < 0) ck = 1 / ck;
    auto r = m.radical();
    int er = r ? m.exponent(*r) * k : 0;
    Monomial rest = r ? m.with_exponent(*r, 0).pow(k) : m.pow(k);
    if (er >= 0) {
      Polynomial p = Polynomial::monomial(rest, ck);
      if (er > 0) p = p * Polynomial::monomial(Monomial::var(*r, er));
      SymExpr e(p);
      e.radical_ = join_radicals(radical_, r);
      return e;
    }
    int q = (-er + 1) / 2;
    int rem = 2 * q + er;
    Polynomial p = Polynomial::monomial(rem ? rest * Monomial::var(*r) : rest, ck);
    return canonical(p, {{Polynomial::radical_square(*r), q}}, r);
  }
  if (k < 0) return (SymExpr(1) / *this).pow(-k);
  SymExpr result(1);
  SymExpr base = *this;
  unsigned u = static_cast<unsigned>(k);
  while (u) {
    if (u & 1u) result = result * base;
    u >>= 1u;
    if (u) base = base * base;
  }
  return result;
}

SymExpr SymExpr::diff(VarId v) const {
  if (v.is_radical()) throw SymbolicError("differentiate with respect to base variables, not the radical");
  if (is_zero()) return {};
  SymExpr dnum(num_.formal_diff(v));
  dnum.radical_ = radical_;
  if (radical_ && radical_->radical_contains(v)) {
    auto [p0, p1] = num_.split_radical();
    if (!p1.is_zero()) {
      // dr/dv = v / r = v r / r^2
      Polynomial top = p1 * Polynomial::var(v) * Polynomial::var(*radical_);
      dnum += canonical(top, {{Polynomial::radical_square(*radical_), 1}}, radical_);
    }
  }
  SymExpr result = den_.empty() ? dnum : dnum * over(Polynomial(1), den_, radical_);
  for (std::size_t i = 0; i < den_.size(); ++i) {
    Polynomial fp = den_[i].first.formal_diff(v);
    if (fp.is_zero()) continue;
    std::vector<Factor> den = den_;
    den[i].second += 1;
    result -= over((num_ * fp).scaled(den_[i].second), den, radical_);
  }
  return result;
}

SymExpr SymExpr::substitute(const std::map<VarId, SymExpr>& bindings) const {
  std::map<VarId, SymExpr> full = bindings;
  if (radical_ && num_.radical() && !full.count(*radical_)) {
    std::uint32_t mask = 0;
    bool touched = false;
    for (VarId b : radical_->radical_base()) {
      VarId image = b;
      auto it = bindings.find(b);
      if (it != bindings.end()) {
        touched = true;
        const SymExpr& e = it->second;
        bool plain = e.den_.empty() && e.num_.size() == 1 && e.num_.terms().begin()->second == 1 &&
                     e.num_.terms().begin()->first.entries().size() == 1 &&
                     e.num_.terms().begin()->first.degree() == 1;
        if (!plain)
          throw SymbolicError("the radical must be bound explicitly when its base variables are not renamed");
        image = e.num_.terms().begin()->first.entries().front().first;
        if (image.kind == VarKind::Coord && image.index < 32)
          mask |= (1u << image.index);
        else if (image.kind == VarKind::Indep)
          mask |= 1u;
        else
          throw SymbolicError("radical base variables can only be renamed to coordinates or the independent variable");
      } else {
        mask |= (b.kind == VarKind::Indep) ? 1u : (1u << b.index);
      }
    }
    if (touched) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != radical_->radical_base().size())
        throw SymbolicError("renaming collapses two radical base variables");
      full[*radical_] = var(VarId::radical(mask));
    }
  }
  auto eval = [&](const Polynomial& p) {
    SymExpr acc;
    for (const auto& [m, c] : p.terms()) {
      SymExpr term(c);
      for (const auto& [v, e] : m.entries()) {
        auto it = full.find(v);
        term *= (it == full.end() ? var(v).pow(e) : it->second.pow(e));
      }
      acc += term;
    }
    return acc;
  };
  SymExpr result = eval(num_);
  for (const auto& [f, k] : den_) {
    SymExpr fv = eval(f);
    if (fv.is_zero()) throw DivisionByZero("substitution makes a denominator identically zero");
    result = result / fv.pow(k);
  }
  return result;
}

std::string SymExpr::str(const NameTable& names) const {
  std::string n = to_string(num_, names);
  if (den_.empty()) return n;
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d;
  for (const auto& [f, k] : den_) {
    if (!d.empty()) d += "*";
    d += "(" + to_string(f, names) + ")";
    if (k != 1) d += "^" + std::to_string(k);
  }
  if (den_.size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

// ---------------------------------------------------------------- collect / clear

std::map<Monomial, SymExpr, MonomialOrder> collect(const SymExpr& e, const std::vector<VarId>& vars) {
  auto in_vars = [&](VarId v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); };
  for (const auto& [f, k] : e.denominator_factors())
    for (VarId v : f.variables())
      if (in_vars(v))
        throw SymbolicError("collect: a denominator depends on a collected variable; clear denominators first");
  if (auto r = e.radical(); r && !in_vars(*r) && e.numerator().radical())
    for (VarId v : vars)
      if (r->radical_contains(v))
        throw SymbolicError("collect: the radical depends on a collected variable; include it in the set");

  std::map<Monomial, Polynomial, MonomialOrder> parts;
  for (const auto& [m, c] : e.numerator().terms()) {
    std::vector<Monomial::Entry> inside;
    std::vector<Monomial::Entry> outside;
    for (const auto& x : m.entries()) (in_vars(x.first) ? inside : outside).push_back(x);
    parts[Monomial::from_entries(inside)].add_term(Monomial::from_entries(outside), c);
  }
  std::map<Monomial, SymExpr, MonomialOrder> out;
  for (auto& [m, p] : parts) out.emplace(m, e.with_numerator(p));
  return out;
}

std::pair<Polynomial, Polynomial> clear_denominators(const SymExpr& e) {
  std::map<VarId, int> mins;
  for (const auto& [m, c] : e.numerator().terms())
    for (const auto& [v, x] : m.entries())
      if (x < 0) mins[v] = std::min(mins[v], x);
  std::vector<Monomial::Entry> es;
  for (const auto& [v, x] : mins) es.push_back({v, -x});
  Monomial shift = Monomial::from_entries(es);
  return {e.numerator().times(shift), Polynomial::monomial(shift) * e.denominator()};
}

// ---------------------------------------------------------------- numeric

std::size_t SlotLayout::slot(VarId v) const {
  switch (v.kind) {
    case VarKind::Indep:
      return 0;
    case VarKind::Coord:
      if (v.index >= 1 && v.index <= n) return v.index;
      break;
    case VarKind::Velocity:
      if (v.index >= 1 && v.index <= n) return n + v.index;
      break;
    case VarKind::Radical:
      break;
  }
  throw NumericError("variable has no slot in this layout");
}

CompiledExpr::CompiledExpr(const SymExpr& e, SlotLayout layout) {
  constexpr std::size_t radical_slot = std::numeric_limits<std::size_t>::max();
  auto compile = [&](const Polynomial& p) {
    std::vector<Term> ts;
    for (const auto& [m, c] : p.terms()) {
      Term t{c.get_d(), {}};
      for (const auto& [v, x] : m.entries()) t.powers.push_back({v.is_radical() ? radical_slot : layout.slot(v), x});
      ts.push_back(std::move(t));
    }
    return ts;
  };
  num_ = compile(e.numerator());
  for (const auto& [f, k] : e.denominator_factors()) den_.emplace_back(compile(f), k);
  if (auto r = e.radical()) {
    has_radical_ = true;
    for (VarId b : r->radical_base()) radical_slots_.push_back(layout.slot(b));
  }
}

double CompiledExpr::eval_terms(const std::vector<Term>& terms, std::span<const double> slots, double r,
                                double floor) {
  constexpr std::size_t radical_slot = std::numeric_limits<std::size_t>::max();
  double acc = 0.0;
  for (const auto& t : terms) {
    double v = t.coeff;
    for (const auto& [s, x] : t.powers) {
      double base = s == radical_slot ? r : slots[s];
      if (x < 0 && std::abs(base) < floor) throw NumericError("a Laurent factor vanishes at the evaluation point");
      if (x == 1)
        v *= base;
      else if (x == 2)
        v *= base * base;
      else
        v *= std::pow(base, x);
    }
    acc += v;
  }
  return acc;
}

double CompiledExpr::operator()(std::span<const double> slots, double floor) const {
  double r = 0.0;
  if (has_radical_) {
    for (std::size_t s : radical_slots_) r += slots[s] * slots[s];
    r = std::sqrt(r);
  }
  double den = 1.0;
  for (const auto& [f, k] : den_) den *= std::pow(eval_terms(f, slots, r, floor), k);
  if (std::abs(den) < floor) throw NumericError("denominator vanishes at the evaluation point");
  double v = eval_terms(num_, slots, r, floor) / den;
  if (!std::isfinite(v)) throw NumericError("expression is singular at the evaluation point");
  return v;
}

}  // namespace liesym
