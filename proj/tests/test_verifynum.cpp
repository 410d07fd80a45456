#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "liesym/errors.hpp"
#include "liesym/reduction.hpp"
#include "liesym/verifynum.hpp"

using namespace liesym;
using namespace liesym::fixtures;

namespace {

// r = |x0| ~ 1.37, away from every singular set of the fixtures.
PhasePoint start() { return {0.2, {1.0, 0.5, 0.8}, {0.3, -0.4, 0.5}}; }

// x'' = v r^2 blows up in finite time; start slow at r ~ 1.
PhasePoint start_for(const std::string& name) {
  if (name == "velocity_coupling") return {0.2, {0.7, 0.5, 0.52}, {0.05, -0.05, 0.05}};
  return start();
}

double norm_sq(const std::vector<double>& a) {
  double s = 0;
  for (double d : a) s += d * d;
  return s;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("free particle moves on straight lines") {
  auto tr = integrate(free_particle(3), {0.0, {1, 2, 3}, {0.5, -1, 2}}, 1.0, 1000);
  CHECK_FALSE(tr.truncated);
  CHECK(tr.samples.size() == 1001);
  CHECK(tr.method == "rk4");
  for (const auto& p : tr.samples)
    CHECK(max_diff(p.x, {1 + 0.5 * p.t, 2 - p.t, 3 + 2 * p.t}) < 1e-12);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].t > tr.samples[i - 1].t);
}

TEST_CASE("magnetic force does no work") {
  auto tr = integrate(monopole(), start(), 1.0, 1000);
  double e0 = norm_sq(tr.samples.front().v);
  double drift = 0;
  for (const auto& p : tr.samples) drift = std::max(drift, std::abs(norm_sq(p.v) - e0));
  CHECK(drift < 1e-8);
}

TEST_CASE("singular approach truncates the trajectory") {
  // x'' = -1/x reaches x = 0 before t = 1 from x = 1, v = -1.
  auto sys = OdeSystem::make({SymExpr(-1) / x(1)});
  auto tr = integrate(sys, {0.0, {1.0}, {-1.0}}, 2.0, 2000, 1e-3);
  CHECK(tr.truncated);
  CHECK(tr.samples.back().t < 1.0);
  CHECK(tr.stop_reason.find("singularity") != std::string::npos);
  CHECK_THROWS_AS(integrate(sys, {0.0, {1.0}, {-1.0}}, -1.0, 10), InputError);
}

TEST_CASE("Hermite interpolation is exact on cubics") {
  auto tr = integrate(OdeSystem::make({SymExpr(6) * t()}), {0.0, {1.0}, {0.0}}, 1.0, 10);
  for (double s : {0.0, 0.037, 0.5, 0.91, 1.0}) CHECK(std::abs(interpolate(tr, s)[0] - (1 + s * s * s)) < 1e-12);
  CHECK_THROWS_AS(interpolate(tr, 1.5), NumericError);
}

TEST_CASE("flows of simple generators") {
  PhasePoint p{0.7, {1.0, -0.5, 0.25}, {}};
  auto shifted = flow(time_translation(), p, 0.4).point;
  CHECK(std::abs(shifted.t - 1.1) < 1e-14);
  CHECK(max_diff(shifted.x, p.x) == 0.0);
  CHECK(flow(rotation(1), p, 0.0).point.x == p.x);

  // t d/dt - x d/dx: (e^e t, e^-e x), so t r is invariant.
  const double e = 0.3;
  auto q = flow(dilation(1, -1), p, e).point;
  CHECK(std::abs(q.t - std::exp(e) * p.t) < 1e-9);
  for (int a = 0; a < 3; ++a) CHECK(std::abs(q.x[a] - std::exp(-e) * p.x[a]) < 1e-9);
  CHECK(std::abs(q.t * std::sqrt(norm_sq(q.x)) - p.t * std::sqrt(norm_sq(p.x))) < 1e-9);

  // 2t d/dt - x d/dx preserves t r^2.
  auto w = flow(dilation(2, -1), p, e).point;
  CHECK(std::abs(w.t * norm_sq(w.x) - p.t * norm_sq(p.x)) < 1e-9);

  // Prolonged: v scales like x / t under the first dilation.
  PhasePoint pv{0.7, {1.0, -0.5, 0.25}, {0.2, 0.1, -0.3}};
  auto qv = flow_prolonged(dilation(1, -1), pv, e).point;
  for (int a = 0; a < 3; ++a) CHECK(std::abs(qv.v[a] - std::exp(-2 * e) * pv.v[a]) < 1e-9);
}

TEST_CASE("flow singularities name the point") {
  VectorField X = VectorField::zero(1);
  X.eta[0] = SymExpr(1) / x(1);
  try {
    flow(X, {0.0, {0.0}, {}}, 0.1);
    FAIL("expected a singular flow");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("(0, 0, 0)") != std::string::npos);
  }
}

TEST_CASE("flows return to the start") {
  std::vector<PhasePoint> points = {start(), {0.5, {-1.2, 0.3, 0.9}, {}}, {1.0, {0.6, -0.8, 1.1}, {}}};
  for (const auto& c : listed_cases())
    for (const auto& X : c.generators)
      for (const auto& p : points) {
        auto there = flow(X, p, 0.5).point;
        auto back = flow(X, there, -0.5).point;
        CHECK(std::abs(back.t - p.t) < 1e-9);
        CHECK(max_diff(back.x, p.x) < 1e-9);
      }
}

TEST_CASE("listed generators map solutions to solutions") {
  MappingOptions opts;  // eps 0.3, tol 1e-6, step 1e-3 over unit time
  for (const auto& c : listed_cases()) {
    CAPTURE(c.name);
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
      CAPTURE(i);
      auto rep = check_solution_mapping(c.sys, c.generators[i], start_for(c.name), opts);
      CHECK_FALSE(rep.reparametrization_failure);
      CHECK(rep.compared == opts.steps + 1);
      CHECK(rep.max_deviation < opts.tol);
      CHECK(rep.pass);
    }
    for (const auto& X : c.controls) {
      auto rep = check_solution_mapping(c.sys, X, start_for(c.name), opts);
      CHECK_FALSE(rep.pass);
      CHECK(rep.max_deviation > 1e3 * opts.tol);
    }
  }
}

TEST_CASE("one-dimensional wave equation: mapping at C = -2") {
  auto sys = inverse_square_wave(-2);
  PhasePoint p{1.0, {0.5}, {0.2}};
  std::vector<VectorField> gens = {field(t(), {SymExpr(0)}), field(SymExpr(0), {x(1)}),
                                   field(x(1) / t(), {-x(1).pow(2) / t().pow(2)})};
  for (const auto& X : gens) CHECK(check_solution_mapping(sys, X, p).pass);
  // The third field is not a symmetry at C = -1.
  auto rep = check_solution_mapping(inverse_square_wave(-1), gens[2], p);
  CHECK(rep.max_deviation > 1e-3);
}

TEST_CASE("monopole projective generator at small parameter") {
  MappingOptions opts;
  opts.epsilon = 0.1;
  opts.tol = 1e-5;
  CHECK(check_solution_mapping(monopole(), projective(), start(), opts).pass);
  opts.epsilon = 0.3;
  auto dil = check_solution_mapping(monopole(), dilation(0, 1), start(), opts);
  CHECK_FALSE(dil.pass);
}

TEST_CASE("non-monotone flowed times are reported") {
  // Along x1 = t the flow of x1^2 d/dt gives dt~/dt = 1 + 2 eps t, negative past t = 0.5 at eps = -1.
  VectorField X = VectorField::zero(3);
  X.tau = x(1).pow(2);
  MappingOptions opts;
  opts.epsilon = -1.0;
  auto rep = check_solution_mapping(free_particle(3), X, {0.0, {0, 1, 1}, {1, 0, 0}}, opts);
  CHECK(rep.reparametrization_failure);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("fourth-order convergence of the mapping deviation") {
  MappingOptions coarse;
  coarse.steps = 50;
  MappingOptions fine = coarse;
  fine.steps = 100;
  double a = check_solution_mapping(monopole(), projective(), start(), coarse).max_deviation;
  double b = check_solution_mapping(monopole(), projective(), start(), fine).max_deviation;
  CHECK(b > 0);
  CHECK(a / b > 12.0);
  CHECK(a / b < 20.0);
}

TEST_CASE("trajectories satisfy the reduced equations") {
  // Along a solution with v3 != 0: u_j' = v_j / v3, u6 = v3, d u_j' / dy = Omega_j.
  for (const auto& name : {"linear_field", "monopole", "velocity_coupling"}) {
    OdeSystem sys = free_particle(3);
    for (const auto& c : listed_cases())
      if (c.name == name) sys = c.sys;
    auto rs = reduce_order(sys);
    SlotLayout layout{3};
    CompiledExpr om1(rs.omega1, layout), om2(rs.omega2, layout), om6(rs.omega6, layout);
    auto tr = integrate(sys, start_for(name), 0.5, 5000);
    REQUIRE_FALSE(tr.truncated);
    double worst = 0;
    for (std::size_t i = 1; i + 1 < tr.samples.size(); i += 250) {
      const auto& a = tr.samples[i - 1];
      const auto& p = tr.samples[i];
      const auto& b = tr.samples[i + 1];
      auto slope = [](const PhasePoint& q, int j) { return q.v[j] / q.v[2]; };
      double dy = b.x[2] - a.x[2];
      std::vector<double> s = {p.x[2], p.x[0], p.x[1], p.v[2], slope(p, 0), slope(p, 1), 0.0};
      worst = std::max(worst, std::abs((slope(b, 0) - slope(a, 0)) / dy - om1(s)));
      worst = std::max(worst, std::abs((slope(b, 1) - slope(a, 1)) / dy - om2(s)));
      worst = std::max(worst, std::abs((b.v[2] - a.v[2]) / dy - om6(s)));
    }
    CHECK(worst < 1e-5);
  }
}
