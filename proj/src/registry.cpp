#include "liesym/registry.hpp"

#include "liesym/errors.hpp"
#include "liesym/parser.hpp"

namespace liesym {

std::string to_string(Comparison c) { return c == Comparison::Equal ? "equal" : "contains"; }

namespace {

const std::vector<FieldText> kRotations = {
    {"0", {"0", "x3", "-x2"}},
    {"0", {"-x3", "0", "x1"}},
    {"0", {"x2", "-x1", "0"}},
};
const std::string kRotationBrackets = "[X1, X2] = X3\n[X1, X3] = -X2\n[X2, X3] = X1\n";

std::vector<FieldText> rotations_and(std::vector<FieldText> more) {
  std::vector<FieldText> out = kRotations;
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

const FieldText kTime3{"1", {"0", "0", "0"}};
const std::vector<FieldText> kConformal = rotations_and(
    {kTime3, {"2*t", {"x1", "x2", "x3"}}, {"t^2", {"t*x1", "t*x2", "t*x3"}}});
const std::string kConformalBrackets = kRotationBrackets + "[X4, X5] = 2*X4\n[X4, X6] = X5\n[X5, X6] = 2*X6\n";

std::string lorentz_source(const std::string& w1, const std::string& w2, const std::string& w3, bool radical = false) {
  return std::string("n = 3\n") + (radical ? "radical\n" : "") + "ddot x1 = " + w1 + "\nddot x2 = " + w2 +
         "\nddot x3 = " + w3 + "\n";
}

std::vector<CaseSpec> make_specs() {
  std::vector<CaseSpec> s;

  s.push_back({.name = "free_particle_1d",
               .summary = "free particle on a line",
               .source = "n = 1\nddot x1 = 0\n",
               .expected = {{"1", {"0"}},
                            {"0", {"1"}},
                            {"t", {"0"}},
                            {"x1", {"0"}},
                            {"0", {"t"}},
                            {"0", {"x1"}},
                            {"t^2", {"t*x1"}},
                            {"t*x1", {"x1^2"}}},
               .dimension = 8});

  s.push_back({.name = "free_particle_3d",
               .summary = "free particle in space",
               .source = "n = 3\nddot x1 = 0\nddot x2 = 0\nddot x3 = 0\n",
               .expected = rotations_and({kTime3, {"t^2", {"t*x1", "t*x2", "t*x3"}}}),
               .comparison = Comparison::Contains,
               .dimension = 24,
               .note = "dimension frozen from the engine's first build"});

  s.push_back({.name = "linear_field",
               .summary = "charge in the field B = x",
               .source = lorentz_source("v2*x3 - v3*x2", "v3*x1 - v1*x3", "v1*x2 - v2*x1"),
               .expected = rotations_and({kTime3, {"t", {"-x1", "-x2", "-x3"}}}),
               .brackets = kRotationBrackets + "[X4, X5] = X4\n",
               .dimension = 5,
               .algebra = "direct_sum(so3, g2_nonabelian)",
               .xi = Rational(-1)});

  s.push_back({.name = "sphere_monopole",
               .summary = "charge on a sphere around a monopole, as a system in space",
               .source = lorentz_source("v2*x3 - v3*x2 - x1*(v1^2 + v2^2 + v3^2)",
                                        "v3*x1 - v1*x3 - x2*(v1^2 + v2^2 + v3^2)",
                                        "v1*x2 - v2*x1 - x3*(v1^2 + v2^2 + v3^2)"),
               .expected = rotations_and({kTime3}),
               .brackets = kRotationBrackets,
               .dimension = 4,
               .algebra = "direct_sum(so3, abelian(1))"});

  s.push_back({.name = "inverse_square_potential",
               .summary = "inverse-square repulsive potential",
               .source = lorentz_source("x1/r^4", "x2/r^4", "x3/r^4", true),
               .expected = kConformal,
               .brackets = kConformalBrackets,
               .dimension = 6,
               .algebra = "direct_sum(so3, sl2R)"});

  s.push_back({.name = "monopole",
               .summary = "charge in the field of a magnetic monopole",
               .source = lorentz_source("(v2*x3 - v3*x2)/r^3", "(v3*x1 - v1*x3)/r^3", "(v1*x2 - v2*x1)/r^3", true),
               .expected = kConformal,
               .brackets = kConformalBrackets,
               .dimension = 6,
               .algebra = "direct_sum(so3, sl2R)",
               .xi = Rational(2)});

  s.push_back({.name = "zwanziger",
               .summary = "monopole with the added inverse-square potential",
               .source = lorentz_source("(v2*x3 - v3*x2)/r^3 + x1/r^4", "(v3*x1 - v1*x3)/r^3 + x2/r^4",
                                        "(v1*x2 - v2*x1)/r^3 + x3/r^4", true),
               .expected = kConformal,
               .brackets = kConformalBrackets,
               .dimension = 6,
               .algebra = "direct_sum(so3, sl2R)"});

  s.push_back({.name = "dyon",
               .summary = "charge and monopole at the same point",
               .source = lorentz_source("(v2*x3 - v3*x2 + x1)/r^3", "(v3*x1 - v1*x3 + x2)/r^3",
                                        "(v1*x2 - v2*x1 + x3)/r^3", true),
               .expected = rotations_and({kTime3}),
               .brackets = kRotationBrackets,
               .dimension = 4,
               .algebra = "direct_sum(so3, abelian(1))"});

  s.push_back({.name = "velocity_coupling",
               .summary = "acceleration along the velocity, scaled by r^2",
               .source = lorentz_source("v1*(x1^2 + x2^2 + x3^2)", "v2*(x1^2 + x2^2 + x3^2)", "v3*(x1^2 + x2^2 + x3^2)"),
               .expected = rotations_and({kTime3, {"2*t", {"-x1", "-x2", "-x3"}}}),
               .brackets = kRotationBrackets + "[X4, X5] = 2*X4\n",
               .dimension = 5,
               .algebra = "direct_sum(so3, g2_nonabelian)",
               .xi = Rational(-2),
               .start = "0.2; 0.7, 0.5, 0.52; 0.05, -0.05, 0.05"});

  s.push_back({.name = "inverse_square_field",
               .summary = "charge in B = (0, 0, -1/x1^2)",
               .source = lorentz_source("-v2/x1^2", "v1/x1^2", "0"),
               .expected = {kTime3, {"0", {"0", "1", "0"}}, {"0", {"0", "0", "1"}}, {"0", {"0", "0", "x3"}}},
               .comparison = Comparison::Contains,
               .brackets = "[X3, X4] = X3\n",
               .xi = Rational(2),
               .note = "surplus generators are reported, not failed"});

  s.push_back({.name = "landau",
               .summary = "charge in a constant field along x3",
               .source = lorentz_source("v2", "-v1", "0"),
               .expected = {{"0", {"1", "0", "0"}}, {"0", {"0", "1", "0"}}, {"0", {"-x2", "x1", "0"}}, kTime3},
               .comparison = Comparison::Contains,
               .brackets = "[X1, X3] = X2\n[X2, X3] = -X1\n",
               .note = "surplus generators are reported, not failed"});

  s.push_back({.name = "stern_gerlach",
               .summary = "charge in B = (-x1, 0, 1 + x3)",
               .source = lorentz_source("v2*(1 + x3)", "-v3*x1 - v1*(1 + x3)", "v2*x1"),
               .expected = {kTime3},
               .comparison = Comparison::Contains,
               .note = "only time translation is asserted; the full derived span is reported for inspection"});

  s.push_back({.name = "quantum_g2",
               .summary = "u'' = -(C/x^2) u at C = -2",
               .source = "mode quantum1d\nddot u = 2*u/x^2\n",
               .window = "x:-2..2,u:0..2",
               .expected = {{"x", {"0"}}, {"0", {"u"}}, {"u/x", {"-u^2/x^2"}}},
               .comparison = Comparison::Contains,
               .brackets = "[X1, X3] = -2*X3\n[X2, X3] = X3\n",
               .note = "a linear equation has further symmetries; the listed ones are asserted"});

  s.push_back({.name = "quantum_g1",
               .summary = "u'' = -(C/x^2) u at C = -1",
               .source = "mode quantum1d\nddot u = u/x^2\n",
               .window = "x:-2..2,u:0..2",
               .expected = {{"x", {"0"}}, {"0", {"u"}}},
               .absent = {{"u/x", {"-u^2/x^2"}}},
               .dimension = 2});
  return s;
}

bool all_zero(const std::vector<SymExpr>& es) {
  for (const auto& e : es)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace

CaseEntry load_case(const CaseSpec& spec) {
  CaseEntry e;
  e.spec = spec;
  try {
    e.sys = parse_system(spec.source);
    e.window = spec.window.empty() ? AnsatzSpec::standard(e.sys.n) : parse_window(spec.window, e.sys);
  } catch (const ParseError& err) {
    throw InputError("case " + spec.name + ": " + err.what());
  }
  ExprContext ctx = ExprContext::of(e.sys);
  ResidualEvaluator res(e.sys);
  auto load = [&](const std::vector<FieldText>& fields, bool must_vanish) {
    std::vector<VectorField> out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      VectorField X;
      try {
        X = parse_field(fields[i].tau, fields[i].eta, ctx);
      } catch (const Error& err) {
        throw InputError("case " + spec.name + ", generator " + std::to_string(i + 1) + ": " + err.what());
      }
      if (must_vanish && !all_zero(res(X)))
        throw InputError("case " + spec.name + ": expected generator X" + std::to_string(i + 1) + " = " +
                         X.str(e.sys.names) + " is not a symmetry");
      out.push_back(std::move(X));
    }
    return out;
  };
  e.expected = load(spec.expected, true);
  e.absent = load(spec.absent, false);
  return e;
}

PhasePoint default_start(const OdeSystem& sys) {
  if (sys.mode == Mode::Quantum1d) return {1.0, {0.5}, {0.2}};
  const double x0[] = {1.0, 0.5, 0.8};
  const double v0[] = {0.3, -0.4, 0.5};
  PhasePoint p{0.2, {}, {}};
  for (std::size_t a = 0; a < sys.n; ++a) {
    p.x.push_back(x0[a % 3]);
    p.v.push_back(v0[a % 3]);
  }
  return p;
}

PhasePoint start_point(const CaseEntry& entry) {
  return entry.spec.start.empty() ? default_start(entry.sys) : parse_start(entry.spec.start, entry.sys.n);
}

const std::vector<CaseSpec>& builtin_specs() {
  static const std::vector<CaseSpec> specs = make_specs();
  return specs;
}

const std::vector<CaseEntry>& registry() {
  static const std::vector<CaseEntry> entries = [] {
    std::vector<CaseEntry> out;
    for (const auto& s : builtin_specs()) out.push_back(load_case(s));
    return out;
  }();
  return entries;
}

const CaseEntry& find_case(std::string_view name) {
  for (const auto& e : registry())
    if (e.spec.name == name) return e;
  throw InputError("no registered case named '" + std::string(name) + "'");
}

AlgebraOutcome analyze_algebra(const SymmetryBasis& basis, const NameTable& names) {
  AlgebraOutcome out;
  try {
    out.sc = structure_constants(basis, &names);
    out.report = classify(*out.sc);
  } catch (const ClosureError& e) {
    out.error = e.what();
  } catch (const InputError& e) {
    out.error = e.what();
  }
  return out;
}

ReductionOutcome analyze_reduction(const OdeSystem& sys, std::size_t pivot) {
  ReductionOutcome out;
  try {
    out.reduced = reduce_order(sys, pivot);
    out.basis = find_reduced_symmetries(out.reduced);
    out.scaling = select_scaling(out.basis);
    out.nonlocal = reconstruct_nonlocal(*out.scaling, out.reduced);
  } catch (const ShapeError& e) {
    out.error = e.what();
  } catch (const InputError& e) {
    out.error = e.what();
  }
  return out;
}

CaseReport run_case(const CaseEntry& entry, const RunOptions& opts) {
  const CaseSpec& spec = entry.spec;
  CaseReport rep;
  rep.name = spec.name;
  rep.sys = entry.sys;
  rep.window = opts.window.value_or(entry.window);
  rep.comparison = spec.comparison;
  rep.note = spec.note;
  rep.basis = find_symmetries(entry.sys, rep.window);
  const NameTable& nm = entry.sys.names;

  try {
    rep.span = span_compare(rep.basis, entry.expected);
    bool ok = spec.comparison == Comparison::Equal ? rep.span->relation == SpanRelation::Equal
                                                   : rep.span->missing.empty();
    std::string detail = "relation " + to_string(rep.span->relation);
    for (std::size_t i : rep.span->missing) detail += "; missing X" + std::to_string(i + 1);
    if (!rep.span->surplus.empty()) detail += "; " + std::to_string(rep.span->surplus.size()) + " surplus";
    rep.checks.push_back({"span " + to_string(spec.comparison), ok, detail});
  } catch (const WindowError& e) {
    rep.window_too_small = true;
    rep.checks.push_back({"window", false, std::string("window too small for an expected generator: ") + e.what()});
  }

  // A field the window cannot express is undecided, not absent.
  for (std::size_t i = 0; i < entry.absent.size(); ++i) {
    std::string name = "absent " + entry.absent[i].str(nm);
    try {
      bool outside = !span_compare(rep.basis, {entry.absent[i]}).missing.empty();
      rep.checks.push_back({name, outside, outside ? "not in the span" : "found in the span"});
    } catch (const WindowError& e) {
      rep.window_too_small = true;
      rep.checks.push_back({name, false, std::string("window too small to decide: ") + e.what()});
    }
  }

  if (spec.dimension)
    rep.checks.push_back({"dimension", rep.basis.dim() == *spec.dimension,
                          std::to_string(rep.basis.dim()) + " (expected " + std::to_string(*spec.dimension) + ")"});

  if (!spec.brackets.empty()) {
    std::string got;
    try {
      got = format_brackets(structure_constants(entry.expected, &nm));
    } catch (const Error& e) {
      got = e.what();
    }
    rep.checks.push_back({"brackets", got == spec.brackets, got});
  }

  rep.algebra = analyze_algebra(rep.basis, nm);
  if (!spec.algebra.empty()) {
    std::string got = rep.algebra.report ? rep.algebra.report->recognized : rep.algebra.error;
    rep.checks.push_back({"algebra", got == spec.algebra, got});
  }

  if (spec.xi) {
    rep.reduction = analyze_reduction(entry.sys);
    bool ok = rep.reduction->nonlocal && rep.reduction->nonlocal->xi == *spec.xi;
    std::string got = rep.reduction->nonlocal ? rep.reduction->nonlocal->xi.get_str() : rep.reduction->error;
    rep.checks.push_back({"xi", ok, got + " (expected " + spec.xi->get_str() + ")"});
  }

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

CaseReport run_case(std::string_view name, const RunOptions& opts) { return run_case(find_case(name), opts); }

}  // namespace liesym
