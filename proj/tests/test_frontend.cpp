#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "liesym/errors.hpp"
#include "liesym/parser.hpp"
#include "liesym/registry.hpp"
#include "liesym/report.hpp"

using namespace liesym;
using namespace liesym::fixtures;

namespace {

bool same_rhs(const OdeSystem& a, const OdeSystem& b) {
  if (a.n != b.n || a.mode != b.mode) return false;
  for (std::size_t i = 0; i < a.n; ++i)
    if (!(a.rhs[i] == b.rhs[i])) return false;
  return true;
}

ParseError parse_error_of(std::string_view source) {
  try {
    parse_system(source);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << source);
  return ParseError("", 0, 0);
}

const Check* find_check(const CaseReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("expressions parse to the hand-built forms") {
  ExprContext ctx = ExprContext::make(3, Mode::Ode, true);
  CHECK(parse_expression("v2*x3 - v3*x2", ctx) == v(2) * x(3) - v(3) * x(2));
  CHECK(parse_expression("(v2*x3 - v3*x2)/r^3", ctx) == (v(2) * x(3) - v(3) * x(2)) / r().pow(3));
  CHECK(parse_expression("x1^(-2) + t^2/3", ctx) == x(1).pow(-2) + t().pow(2) / SymExpr(3));
  CHECK(parse_expression("-x1^2", ctx) == -(x(1).pow(2)));
  CHECK(parse_expression("r^2", ctx) == sum_sq());
  CHECK(parse_expression("2*(x1 + 1)*(x1 - 1)", ctx) == SymExpr(2) * (x(1).pow(2) - SymExpr(1)));
}

TEST_CASE("registered sources agree with the fixture systems") {
  const std::vector<std::pair<std::string, OdeSystem>> pairs = {
      {"free_particle_1d", free_particle(1)},
      {"free_particle_3d", free_particle(3)},
      {"linear_field", linear_field()},
      {"sphere_monopole", sphere_monopole()},
      {"inverse_square_potential", inverse_square_potential()},
      {"monopole", monopole()},
      {"zwanziger", zwanziger()},
      {"dyon", dyon()},
      {"velocity_coupling", velocity_coupling()},
      {"inverse_square_field", inverse_square_field()},
      {"landau", landau()},
      {"stern_gerlach", stern_gerlach()},
      {"quantum_g2", inverse_square_wave(Rational(-2))},
      {"quantum_g1", inverse_square_wave(Rational(-1))},
  };
  REQUIRE(pairs.size() == registry().size());
  for (const auto& [name, sys] : pairs) {
    INFO(name);
    CHECK(same_rhs(find_case(name).sys, sys));
  }
}

TEST_CASE("printing and reparsing reproduces every registered system") {
  for (const auto& e : registry()) {
    INFO(e.spec.name);
    std::string text = print_system(e.sys);
    OdeSystem back = parse_system(text);
    CHECK(same_rhs(back, e.sys));
    CHECK(back.autonomous == e.sys.autonomous);
    CHECK(print_system(back) == text);
  }
}

TEST_CASE("parse errors carry line and column") {
  ParseError e = parse_error_of("n = 3\nddot x1 = v2*x3\nddot x2 = w + 1\nddot x3 = 0\n");
  CHECK(e.line == 3);
  CHECK(e.column == 11);
  CHECK(std::string(e.what()).find("unknown identifier 'w'") != std::string::npos);

  e = parse_error_of("ddot x1 = x1^^2\n");
  CHECK(e.line == 1);
  CHECK(std::string(e.what()).find("malformed exponent") != std::string::npos);

  e = parse_error_of("ddot x1 = x1^1.5\n");
  CHECK(std::string(e.what()).find("malformed exponent") != std::string::npos);

  e = parse_error_of("ddot x1 = 0.5*x1\n");
  CHECK(std::string(e.what()).find("malformed number") != std::string::npos);

  e = parse_error_of("n = 3\nddot x1 = x1/r^3\nddot x2 = 0\nddot x3 = 0\n");
  CHECK(e.line == 2);
  CHECK(std::string(e.what()).find("without the radical statement") != std::string::npos);

  e = parse_error_of("ddot x1 = 1/(x1 - x1)\n");
  CHECK(std::string(e.what()).find("division by zero") != std::string::npos);

  e = parse_error_of("n = 2\nddot x1 = 0\n");
  CHECK(std::string(e.what()).find("x2") != std::string::npos);

  e = parse_error_of("ddot x1 = 0\nddot x1 = 1\n");
  CHECK(e.line == 2);

  CHECK_THROWS_AS(parse_system("mode quantum1d\nddot u = 0\n", Mode::Ode), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  OdeSystem s = parse_system("# charge in a constant field\n\nn = 3\nddot x1 = v2  # force\nddot x2 = -v1\nddot x3 = 0\n");
  CHECK(same_rhs(s, landau()));
}

TEST_CASE("quantum mode names x, u and du") {
  OdeSystem s = parse_system("ddot u = 2*u/x^2\n", Mode::Quantum1d);
  CHECK(s.mode == Mode::Quantum1d);
  CHECK(same_rhs(s, inverse_square_wave(Rational(-2))));
  CHECK(print_system(s).find("mode quantum1d") != std::string::npos);
  CHECK_THROWS_AS(parse_system("mode quantum1d\nddot u = 0\nddot u = 1\n"), ParseError);
}

TEST_CASE("windows parse and validate") {
  const OdeSystem& mono = find_case("monopole").sys;
  AnsatzSpec w = parse_window("t:0..2,x1:0..2,x2:0..2,x3:0..2,total:2,radical", mono);
  AnsatzSpec ref = AnsatzSpec::standard(3);
  ref.allow_radical = true;
  CHECK(w.str(mono.names) == ref.str(mono.names));
  CHECK(parse_window(w.str(mono.names), mono).str(mono.names) == w.str(mono.names));

  const OdeSystem& q = find_case("quantum_g2").sys;
  CHECK_NOTHROW(parse_window("x:-2..2,u:0..2", q));
  CHECK_THROWS_AS(parse_window("x:2..1", q), ParseError);
  CHECK_THROWS_AS(parse_window("y:0..1", q), ParseError);
  CHECK_THROWS_AS(parse_window("x:0..", q), ParseError);
}

TEST_CASE("a corrupted case fails fast and names the generator") {
  CaseSpec bad = builtin_specs()[2];
  REQUIRE(bad.name == "linear_field");
  bad.expected[4].tau = "2*t";  // wrong weight on time
  try {
    load_case(bad);
    FAIL("corrupted case loaded");
  } catch (const InputError& e) {
    std::string msg = e.what();
    CHECK(msg.find("linear_field") != std::string::npos);
    CHECK(msg.find("X5") != std::string::npos);
  }
  CaseSpec unparsable = builtin_specs()[0];
  unparsable.source = "ddot x1 = q\n";
  CHECK_THROWS_AS(load_case(unparsable), InputError);
  CHECK_THROWS_AS(find_case("no_such_case"), InputError);
}

TEST_CASE("monopole case runs end to end") {
  CaseReport rep = run_case("monopole");
  CHECK(rep.pass);
  CHECK(rep.basis.dim() == 6);
  REQUIRE(rep.algebra.report);
  CHECK(rep.algebra.report->recognized == "direct_sum(so3, sl2R)");
  REQUIRE(rep.reduction);
  REQUIRE(rep.reduction->nonlocal);
  CHECK(rep.reduction->nonlocal->xi == Rational(2));
  const Check* b = find_check(rep, "brackets");
  REQUIRE(b);
  CHECK(b->pass);
}

TEST_CASE("dyon and quantum cases") {
  CaseReport dyon_rep = run_case("dyon");
  CHECK(dyon_rep.pass);
  CHECK(dyon_rep.basis.dim() == 4);

  CaseReport g2 = run_case("quantum_g2");
  CHECK(g2.pass);
  const Check* b = find_check(g2, "brackets");
  REQUIRE(b);
  CHECK(b->detail == "[X1, X3] = -2*X3\n[X2, X3] = X3\n");

  CaseReport g1 = run_case("quantum_g1");
  CHECK(g1.pass);
}

TEST_CASE("a window too small for an expected generator is reported") {
  const CaseEntry& e = find_case("monopole");
  RunOptions opts;
  opts.window = parse_window("t:0..1,x1:0..1,x2:0..1,x3:0..1,total:1,radical", e.sys);
  CaseReport rep = run_case(e, opts);
  CHECK_FALSE(rep.pass);
  CHECK(rep.window_too_small);
  const Check* w = find_check(rep, "window");
  REQUIRE(w);
  CHECK(w->detail.find("window too small") != std::string::npos);
}

TEST_CASE("JSON reports are stable and carry the schema") {
  CaseReport a = run_case("dyon");
  CaseReport b = run_case("dyon");
  std::string ja = render_case(a, Format::Json);
  CHECK(ja == render_case(b, Format::Json));
  auto j = nlohmann::json::parse(ja);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["case"] == "dyon");
  CHECK(j["pass"] == true);
  CHECK(j["symmetries"]["dimension"] == 4);
  CHECK(j["algebra"]["label"] == "direct_sum(so3, abelian(1))");

  auto list = nlohmann::json::parse(render_case_list(builtin_specs(), Format::Json));
  CHECK(list["cases"].size() == builtin_specs().size());

  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("text") == Format::Text);
  CHECK_FALSE(parse_format("yaml"));
}

TEST_CASE("JSON structure constants are exact rational triplets") {
  CaseReport rep = run_case("velocity_coupling");
  auto j = nlohmann::json::parse(render_case(rep, Format::Json));
  bool seen = false;
  for (const auto& e : j["algebra"]["structure_constants"]) {
    CHECK(e["i"].get<int>() < e["j"].get<int>());
    CHECK(e["c"].is_string());
    seen = true;
  }
  CHECK(seen);
  CHECK(j["reduction"]["xi"] == "-2");
}

TEST_CASE("every registered case passes") {
  for (const auto& e : registry()) {
    CaseReport rep = run_case(e);
    INFO(render_case(rep, Format::Text));
    CHECK(rep.pass);
  }
}

TEST_CASE("an absent field outside the window is undecided") {
  const CaseEntry& e = find_case("quantum_g1");
  RunOptions opts;
  opts.window = parse_window("x:0..2,u:0..2", e.sys);
  CaseReport rep = run_case(e, opts);
  CHECK_FALSE(rep.pass);
  CHECK(rep.window_too_small);
}
