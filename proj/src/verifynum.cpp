#include "liesym/verifynum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

using Vec = std::vector<double>;

// Slots: t, x_1..x_n, v_1..v_n.
Vec slots_of(double t, const Vec& x, const Vec& v, std::size_t n) {
  Vec s(2 * n + 1, 0.0);
  s[0] = t;
  for (std::size_t a = 0; a < n; ++a) {
    s[1 + a] = x[a];
    if (!v.empty()) s[1 + n + a] = v[a];
  }
  return s;
}

std::string where(const Vec& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
  os << ")";
  return os.str();
}

// Generic RK4 step for y' = f(y).
template <class F>
Vec rk4(const Vec& y, double h, F&& f) {
  auto axpy = [](const Vec& a, double c, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
    return out;
  };
  Vec k1 = f(y);
  Vec k2 = f(axpy(y, h / 2, k1));
  Vec k3 = f(axpy(y, h / 2, k2));
  Vec k4 = f(axpy(y, h, k3));
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

bool finite(const Vec& y) {
  return std::all_of(y.begin(), y.end(), [](double d) { return std::isfinite(d); });
}

FlowResult run_flow(const VectorField& X, const PhasePoint& p, double epsilon, std::size_t substeps, bool prolonged) {
  const std::size_t n = X.dim();
  if (p.x.size() != n || (prolonged && p.v.size() != n)) throw InputError("point dimension does not match the field");
  SlotLayout layout{n};
  std::vector<CompiledExpr> comp;
  comp.emplace_back(X.tau, layout);
  for (const auto& e : X.eta) comp.emplace_back(e, layout);
  if (prolonged)
    for (const auto& e : prolong1(X).etadot) comp.emplace_back(e, layout);

  // State (t, x, v) packed as slots.
  Vec y = slots_of(p.t, p.x, prolonged ? p.v : Vec{}, n);
  auto f = [&](const Vec& s) {
    Vec d(s.size(), 0.0);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      try {
        d[i] = comp[i](s);
      } catch (const NumericError&) {
        throw NumericError("flow coefficient is singular at " + where(s));
      }
    }
    return d;
  };
  std::size_t m = std::max<std::size_t>(substeps, 1);
  double h = epsilon / static_cast<double>(m);
  if (epsilon != 0.0)
    for (std::size_t k = 0; k < m; ++k) y = rk4(y, h, f);

  FlowResult r;
  r.epsilon = epsilon;
  r.substeps = m;
  r.point.t = y[0];
  r.point.x.assign(y.begin() + 1, y.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  if (prolonged) r.point.v.assign(y.begin() + 1 + static_cast<std::ptrdiff_t>(n), y.end());
  return r;
}

}  // namespace

Trajectory integrate(const OdeSystem& sys, const PhasePoint& init, double span, std::size_t steps, double floor) {
  const std::size_t n = sys.n;
  if (init.x.size() != n || init.v.size() != n) throw InputError("initial point dimension does not match the system");
  if (!(span > 0.0) || steps == 0) throw InputError("integration needs a positive span and at least one step");
  std::vector<CompiledExpr> rhs;
  for (const auto& w : sys.rhs) rhs.emplace_back(w, sys.layout());

  Trajectory tr;
  tr.step = span / static_cast<double>(steps);
  Vec y = slots_of(init.t, init.x, init.v, n);
  auto f = [&](const Vec& s) {
    Vec d(s.size(), 0.0);
    d[0] = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      d[1 + a] = s[1 + n + a];
      d[1 + n + a] = rhs[a](s, floor);
    }
    return d;
  };
  auto push = [&](const Vec& s, double t) {
    PhasePoint p;
    p.t = t;
    p.x.assign(s.begin() + 1, s.begin() + 1 + static_cast<std::ptrdiff_t>(n));
    p.v.assign(s.begin() + 1 + static_cast<std::ptrdiff_t>(n), s.end());
    tr.samples.push_back(std::move(p));
  };
  push(y, init.t);
  for (std::size_t k = 1; k <= steps; ++k) {
    try {
      y = rk4(y, tr.step, f);
    } catch (const NumericError& e) {
      tr.truncated = true;
      tr.stop_reason = std::string("singularity near t = ") + std::to_string(tr.samples.back().t) + ": " + e.what();
      break;
    }
    if (!finite(y)) {
      tr.truncated = true;
      tr.stop_reason = "non-finite state near t = " + std::to_string(tr.samples.back().t);
      break;
    }
    // Exact grid times avoid drift from repeated addition.
    push(y, init.t + static_cast<double>(k) * tr.step);
  }
  return tr;
}

std::vector<double> interpolate(const Trajectory& tr, double t) {
  const auto& s = tr.samples;
  if (s.size() < 2) throw NumericError("interpolation needs at least two samples");
  const double slack = 1e-12 * std::max(1.0, std::abs(t));
  if (t < s.front().t - slack || t > s.back().t + slack)
    throw NumericError("interpolation time " + std::to_string(t) + " lies outside the trajectory");
  auto it = std::upper_bound(s.begin(), s.end(), t, [](double a, const PhasePoint& p) { return a < p.t; });
  std::size_t i = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
  if (i + 1 >= s.size()) i = s.size() - 2;
  const PhasePoint& a = s[i];
  const PhasePoint& b = s[i + 1];
  double h = b.t - a.t;
  double u = (t - a.t) / h;
  double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  double h10 = u * (1 - u) * (1 - u);
  double h01 = u * u * (3 - 2 * u);
  double h11 = u * u * (u - 1);
  std::vector<double> x(a.x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    x[k] = h00 * a.x[k] + h10 * h * a.v[k] + h01 * b.x[k] + h11 * h * b.v[k];
  return x;
}

FlowResult flow(const VectorField& X, const PhasePoint& p, double epsilon, std::size_t substeps) {
  return run_flow(X, p, epsilon, substeps, false);
}

FlowResult flow_prolonged(const VectorField& X, const PhasePoint& p, double epsilon, std::size_t substeps) {
  return run_flow(X, p, epsilon, substeps, true);
}

MappingReport check_solution_mapping(const OdeSystem& sys, const VectorField& X, const PhasePoint& init,
                                     const MappingOptions& opts) {
  if (X.dim() != sys.n) throw InputError("field dimension does not match the system");
  MappingReport rep;
  Trajectory base = integrate(sys, init, opts.span, opts.steps);
  if (base.truncated) throw NumericError("solution through the initial point is singular: " + base.stop_reason);

  std::vector<PhasePoint> image;
  image.reserve(base.samples.size());
  image.push_back(flow_prolonged(X, base.samples.front(), opts.epsilon, opts.flow_substeps).point);
  for (std::size_t i = 1; i < base.samples.size(); ++i)
    image.push_back(flow(X, base.samples[i], opts.epsilon, opts.flow_substeps).point);

  for (std::size_t i = 1; i < image.size(); ++i)
    if (!(image[i].t > image[i - 1].t)) {
      rep.reparametrization_failure = true;
      rep.message = "flowed times are not increasing at sample " + std::to_string(i);
      return rep;
    }

  double span = image.back().t - image.front().t;
  Trajectory fresh = integrate(sys, image.front(), span, opts.steps);
  if (fresh.truncated) {
    rep.message = "fresh solution is singular: " + fresh.stop_reason;
    return rep;
  }
  for (const auto& q : image) {
    auto x = interpolate(fresh, q.t);
    for (std::size_t a = 0; a < x.size(); ++a) rep.max_deviation = std::max(rep.max_deviation, std::abs(x[a] - q.x[a]));
    ++rep.compared;
  }
  rep.pass = rep.max_deviation < opts.tol;
  return rep;
}

}  // namespace liesym
