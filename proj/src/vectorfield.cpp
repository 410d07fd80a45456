#include "liesym/vectorfield.hpp"

#include "liesym/errors.hpp"

namespace liesym {

NameTable names_for(Mode mode, std::size_t n) {
  if (mode == Mode::Quantum1d) {
    NameTable t;
    t.indep = "x";
    t.coord = {"u"};
    t.velocity = {"du"};
    return t;
  }
  return NameTable::standard(n);
}

OdeSystem OdeSystem::make(std::vector<SymExpr> rhs, Mode mode) {
  OdeSystem sys;
  sys.n = rhs.size();
  if (sys.n == 0) throw InputError("a system needs at least one equation");
  if (mode == Mode::Quantum1d && sys.n != 1) throw InputError("quantum1d mode takes exactly one equation");
  sys.mode = mode;
  sys.names = names_for(mode, sys.n);
  for (const auto& w : rhs) {
    for (VarId v : w.numerator().variables()) {
      bool ok = v.kind == VarKind::Indep ||
                ((v.kind == VarKind::Coord || v.kind == VarKind::Velocity) && v.index >= 1 && v.index <= sys.n) ||
                v == sys.radical();
      if (!ok) throw InputError("right-hand side uses a variable outside the system: " + sys.names.name(v));
    }
    if (auto r = w.radical(); r && *r != sys.radical())
      throw InputError("the radical must be tied to the full coordinate set");
    if (!w.diff(VarId::indep()).is_zero()) sys.autonomous = false;
  }
  sys.rhs = std::move(rhs);
  return sys;
}

bool VectorField::is_zero() const {
  if (!tau.is_zero()) return false;
  for (const auto& e : eta)
    if (!e.is_zero()) return false;
  return true;
}

SymExpr VectorField::apply(const SymExpr& f) const {
  SymExpr out = tau.is_zero() ? SymExpr() : tau * f.diff(VarId::indep());
  for (std::size_t a = 0; a < eta.size(); ++a)
    if (!eta[a].is_zero()) out += eta[a] * f.diff(VarId::coord(static_cast<std::uint32_t>(a + 1)));
  return out;
}

std::string VectorField::str(const NameTable& names) const {
  std::string out;
  for (std::size_t c = 0; c <= eta.size(); ++c) {
    const SymExpr& k = component(c);
    if (k.is_zero()) continue;
    std::string d = "d/d" + names.name(c == 0 ? VarId::indep() : VarId::coord(static_cast<std::uint32_t>(c)));
    std::string s = k.str(names);
    bool single = k.is_polynomial() && k.numerator().size() == 1;
    bool negative = single && s.front() == '-';
    if (negative) s = s.substr(1);
    std::string term;
    if (s == "1")
      term = d;
    else if (single)
      term = s + "*" + d;
    else
      term = "(" + s + ")*" + d;
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += negative ? " - " + term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r = a;
  r.tau += b.tau;
  for (std::size_t i = 0; i < r.eta.size(); ++i) r.eta[i] += b.eta[i];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r = a;
  r.tau -= b.tau;
  for (std::size_t i = 0; i < r.eta.size(); ++i) r.eta[i] -= b.eta[i];
  return r;
}

VectorField operator*(const SymExpr& c, const VectorField& a) {
  VectorField r = a;
  r.tau *= c;
  for (auto& e : r.eta) e *= c;
  return r;
}

bool operator==(const VectorField& a, const VectorField& b) {
  if (a.eta.size() != b.eta.size()) return false;
  return (a - b).is_zero();
}

namespace {

// Total derivative of a point function f(t, x): f_t + v_b f_{x_b}.
SymExpr total_derivative(const SymExpr& f, std::size_t n) {
  SymExpr d = f.diff(VarId::indep());
  for (std::size_t b = 0; b < n; ++b) {
    auto xb = VarId::coord(static_cast<std::uint32_t>(b + 1));
    auto vb = VarId::velocity(static_cast<std::uint32_t>(b + 1));
    SymExpr fb = f.diff(xb);
    if (!fb.is_zero()) d += SymExpr::var(vb) * fb;
  }
  return d;
}

}  // namespace

ProlongedField prolong1(const VectorField& X) {
  const std::size_t n = X.dim();
  ProlongedField P{X, {}};
  SymExpr dtau = total_derivative(X.tau, n);
  for (std::size_t a = 0; a < n; ++a) {
    auto va = SymExpr::var(VarId::velocity(static_cast<std::uint32_t>(a + 1)));
    P.etadot.push_back(total_derivative(X.eta[a], n) - va * dtau);
  }
  return P;
}

VectorField commutator(const VectorField& X, const VectorField& Y) {
  if (X.dim() != Y.dim()) throw InputError("commutator of fields of different dimension");
  VectorField Z = VectorField::zero(X.dim());
  for (std::size_t c = 0; c <= X.dim(); ++c) Z.component(c) = X.apply(Y.component(c)) - Y.apply(X.component(c));
  return Z;
}

ResidualEvaluator::ResidualEvaluator(const OdeSystem& sys) : sys_(sys) {
  const std::size_t n = sys.n;
  for (std::size_t a = 0; a < n; ++a) {
    const SymExpr& w = sys.rhs[a];
    w_t_.push_back(w.diff(sys.t()));
    std::vector<SymExpr> wx;
    std::vector<SymExpr> wv;
    for (std::size_t b = 0; b < n; ++b) {
      wx.push_back(w.diff(sys.x(b)));
      wv.push_back(w.diff(sys.v(b)));
    }
    w_x_.push_back(std::move(wx));
    w_v_.push_back(std::move(wv));
  }
}

std::vector<SymExpr> ResidualEvaluator::operator()(const VectorField& X) const {
  const std::size_t n = sys_.n;
  if (X.dim() != n) throw InputError("field dimension does not match the system");
  const VarId t = sys_.t();
  std::vector<SymExpr> v;
  for (std::size_t b = 0; b < n; ++b) v.push_back(SymExpr::var(sys_.v(b)));

  // Derivatives of the generator components.
  const SymExpr tau_t = X.tau.diff(t);
  const SymExpr tau_tt = tau_t.diff(t);
  std::vector<SymExpr> tau_x(n), tau_tx(n);
  std::vector<std::vector<SymExpr>> tau_xx(n, std::vector<SymExpr>(n));
  for (std::size_t b = 0; b < n; ++b) {
    tau_x[b] = X.tau.diff(sys_.x(b));
    tau_tx[b] = tau_x[b].diff(t);
    for (std::size_t c = 0; c < n; ++c) tau_xx[b][c] = tau_x[b].diff(sys_.x(c));
  }
  std::vector<SymExpr> eta_t(n), eta_tt(n);
  std::vector<std::vector<SymExpr>> eta_x(n, std::vector<SymExpr>(n)), eta_tx(n, std::vector<SymExpr>(n));
  for (std::size_t b = 0; b < n; ++b) {
    eta_t[b] = X.eta[b].diff(t);
    eta_tt[b] = eta_t[b].diff(t);
    for (std::size_t c = 0; c < n; ++c) {
      eta_x[b][c] = X.eta[b].diff(sys_.x(c));
      eta_tx[b][c] = eta_t[b].diff(sys_.x(c));
    }
  }

  // D tau = tau_t + v_b tau_b;  v_b v_c tau_bc
  SymExpr dtau = tau_t;
  for (std::size_t b = 0; b < n; ++b)
    if (!tau_x[b].is_zero()) dtau += v[b] * tau_x[b];
  SymExpr vv_tau_xx;
  SymExpr v_tau_tx;
  for (std::size_t b = 0; b < n; ++b) {
    if (!tau_tx[b].is_zero()) v_tau_tx += v[b] * tau_tx[b];
    for (std::size_t c = 0; c < n; ++c)
      if (!tau_xx[b][c].is_zero()) vv_tau_xx += v[b] * v[c] * tau_xx[b][c];
  }

  // Prolonged velocity coefficient eta_b,t + v_c eta_b,c - v_b tau_t - v_b v_c tau_c.
  std::vector<SymExpr> etadot(n);
  for (std::size_t b = 0; b < n; ++b) {
    SymExpr e = eta_t[b];
    for (std::size_t c = 0; c < n; ++c)
      if (!eta_x[b][c].is_zero()) e += v[c] * eta_x[b][c];
    etadot[b] = e - v[b] * dtau;
  }

  std::vector<SymExpr> out;
  out.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    const SymExpr& w = sys_.rhs[a];
    SymExpr R;
    for (std::size_t b = 0; b < n; ++b) {
      if (!X.eta[b].is_zero() && !w_x_[a][b].is_zero()) R += X.eta[b] * w_x_[a][b];
      if (!etadot[b].is_zero() && !w_v_[a][b].is_zero()) R += etadot[b] * w_v_[a][b];
    }
    if (!X.tau.is_zero() && !w_t_[a].is_zero()) R += X.tau * w_t_[a];
    if (!dtau.is_zero() && !w.is_zero()) R += SymExpr(2) * w * dtau;
    for (std::size_t b = 0; b < n; ++b) {
      const SymExpr& wb = sys_.rhs[b];
      if (wb.is_zero()) continue;
      SymExpr k = v[a] * tau_x[b] - eta_x[a][b];
      if (!k.is_zero()) R += wb * k;
    }
    R += v[a] * vv_tau_xx;
    R += v[a] * tau_tt;
    R += SymExpr(2) * v[a] * v_tau_tx;
    for (std::size_t b = 0; b < n; ++b) {
      SymExpr eta_ab_sum;
      for (std::size_t c = 0; c < n; ++c) {
        SymExpr eta_abc = eta_x[a][b].diff(sys_.x(c));
        if (!eta_abc.is_zero()) eta_ab_sum += v[c] * eta_abc;
      }
      if (!eta_ab_sum.is_zero()) R -= v[b] * eta_ab_sum;
      if (!eta_tx[a][b].is_zero()) R -= SymExpr(2) * v[b] * eta_tx[a][b];
    }
    R -= eta_tt[a];
    out.push_back(std::move(R));
  }
  return out;
}

std::vector<SymExpr> residual(const VectorField& X, const OdeSystem& sys) { return ResidualEvaluator(sys)(X); }

}  // namespace liesym
