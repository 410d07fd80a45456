#include "liesym/report.hpp"

#include <json.hpp>
#include <sstream>

#include "liesym/parser.hpp"

namespace liesym {

namespace {

using Json = nlohmann::ordered_json;

std::string q(const Rational& r) { return r.get_str(); }

Json field_json(const VectorField& X, const NameTable& nm) {
  Json eta = Json::array();
  for (const auto& e : X.eta) eta.push_back(e.str(nm));
  return {{"tau", X.tau.str(nm)}, {"eta", eta}};
}

Json system_json(const OdeSystem& sys) {
  Json rhs = Json::array();
  for (const auto& w : sys.rhs) rhs.push_back(w.str(sys.names));
  return {{"n", sys.n}, {"mode", mode_name(sys.mode)}, {"autonomous", sys.autonomous}, {"rhs", rhs}};
}

Json basis_json(const SymmetryBasis& b, const NameTable& nm) {
  Json gens = Json::array();
  for (const auto& X : b.fields) gens.push_back(field_json(X, nm));
  return {{"unknowns", b.unknowns.size()}, {"rank", b.rank}, {"dimension", b.dim()}, {"generators", gens}};
}

Json structure_json(const StructureConstants& sc) {
  Json out = Json::array();
  for (std::size_t i = 0; i < sc.dim; ++i)
    for (std::size_t j = i + 1; j < sc.dim; ++j)
      for (std::size_t k = 0; k < sc.dim; ++k)
        if (sc.c[i][j][k] != 0) out.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"c", q(sc.c[i][j][k])}});
  return out;
}

Json algebra_json(const AlgebraOutcome& a) {
  if (!a.report) return {{"closed", false}, {"error", a.error}};
  const AlgebraReport& r = *a.report;
  return {{"closed", true},
          {"dimension", r.dim},
          {"structure_constants", structure_json(*a.sc)},
          {"label", r.recognized},
          {"factors", r.factors},
          {"abelian", r.abelian},
          {"derived_series", r.derived_series},
          {"center_dimension", r.center_dim},
          {"killing_signature", {{"positive", r.killing.positive}, {"negative", r.killing.negative}, {"zero", r.killing.zero}}}};
}

Json reduction_json(const ReductionOutcome& red) {
  const NameTable& nm = red.reduced.names;
  Json out;
  out["pivot"] = red.reduced.pivot;
  if (!red.reduced.names.coord.empty())
    out["reduced"] = {{"omega1", red.reduced.omega1.str(nm)},
                      {"omega2", red.reduced.omega2.str(nm)},
                      {"omega6", red.reduced.omega6.str(nm)}};
  out["symmetries"] = basis_json(red.basis, nm);
  if (red.scaling) out["scaling"] = field_json(red.scaling->as_field(), nm);
  if (red.nonlocal) {
    Json eta = Json::array();
    NameTable orig = NameTable::standard(3);
    for (const auto& e : red.nonlocal->eta) eta.push_back(e.str(orig));
    out["xi"] = q(red.nonlocal->xi);
    out["eta"] = eta;
  }
  if (!red.error.empty()) out["error"] = red.error;
  return out;
}

Json header(const char* command) { return {{"schema", kReportSchema}, {"command", command}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Bracket tables span several lines; checks print on one.
std::string one_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  for (std::size_t at = s.find('\n'); at != std::string::npos; at = s.find('\n', at)) s.replace(at, 1, "; ");
  return s;
}

std::string generators_text(const SymmetryBasis& b, const NameTable& nm) {
  std::string out;
  for (std::size_t i = 0; i < b.fields.size(); ++i)
    out += "  X" + std::to_string(i + 1) + " = " + b.fields[i].str(nm) + "\n";
  return out;
}

std::string algebra_text(const AlgebraOutcome& a) {
  if (!a.report) return "algebra: not closed in the window (" + a.error + ")\n";
  const AlgebraReport& r = *a.report;
  std::ostringstream os;
  os << "brackets:\n";
  std::istringstream lines(format_brackets(*a.sc));
  for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
  os << "algebra: " << r.recognized << "\n";
  os << "derived series:";
  for (auto d : r.derived_series) os << " " << d;
  os << "\ncenter dimension: " << r.center_dim << "\n";
  os << "Killing signature: (+" << r.killing.positive << ", -" << r.killing.negative << ", 0:" << r.killing.zero
     << ")\n";
  return os.str();
}

std::string reduction_text(const ReductionOutcome& red) {
  const NameTable& nm = red.reduced.names;
  std::ostringstream os;
  if (!red.reduced.names.coord.empty()) {
    os << "reduced system (pivot x" << red.reduced.pivot << " -> y):\n";
    os << "  u1'' = " << red.reduced.omega1.str(nm) << "\n";
    os << "  u2'' = " << red.reduced.omega2.str(nm) << "\n";
    os << "  u6'  = " << red.reduced.omega6.str(nm) << "\n";
    os << "reduced symmetries: " << red.basis.dim() << "\n" << generators_text(red.basis, nm);
  }
  if (red.scaling) os << "scaling field: " << red.scaling->as_field().str(nm) << "\n";
  if (red.nonlocal) os << "xi = " << q(red.nonlocal->xi) << "\n";
  if (!red.error.empty()) os << "reduction: " << red.error << "\n";
  return os.str();
}

Json case_json(const CaseReport& rep) {
  const NameTable& nm = rep.sys.names;
  Json j;
  j["case"] = rep.name;
  j["pass"] = rep.pass;
  j["system"] = system_json(rep.sys);
  j["window"] = rep.window.str(nm);
  j["symmetries"] = basis_json(rep.basis, nm);
  Json cmp{{"mode", to_string(rep.comparison)}};
  if (rep.span) {
    cmp["relation"] = to_string(rep.span->relation);
    Json missing = Json::array();
    for (auto i : rep.span->missing) missing.push_back(i + 1);
    cmp["missing"] = missing;
    Json surplus = Json::array();
    for (const auto& X : rep.span->surplus) surplus.push_back(field_json(X, nm));
    cmp["surplus"] = surplus;
  }
  cmp["window_too_small"] = rep.window_too_small;
  j["comparison"] = cmp;
  j["algebra"] = algebra_json(rep.algebra);
  if (rep.reduction) j["reduction"] = reduction_json(*rep.reduction);
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

std::string case_text(const CaseReport& rep) {
  const NameTable& nm = rep.sys.names;
  std::ostringstream os;
  os << "case " << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
  os << "window: " << rep.window.str(nm) << "\n";
  os << "dimension: " << rep.basis.dim() << "\n" << generators_text(rep.basis, nm);
  if (rep.span && !rep.span->surplus.empty()) {
    os << "surplus beyond the expected span:\n";
    for (const auto& X : rep.span->surplus) os << "  " << X.str(nm) << "\n";
  }
  os << algebra_text(rep.algebra);
  if (rep.reduction) os << reduction_text(*rep.reduction);
  os << "checks:\n";
  for (const auto& c : rep.checks)
    os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": " << one_line(c.detail) << "\n";
  if (!rep.note.empty()) os << "note: " << rep.note << "\n";
  return os.str();
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

std::string render_symmetries(const OdeSystem& sys, const AnsatzSpec& window, const SymmetryBasis& basis, Format f) {
  const NameTable& nm = sys.names;
  if (f == Format::Json) {
    Json j = header("symmetries");
    j["system"] = system_json(sys);
    j["window"] = window.str(nm);
    j["symmetries"] = basis_json(basis, nm);
    return dump(j);
  }
  std::ostringstream os;
  os << "window: " << window.str(nm) << "\n";
  os << "unknowns: " << basis.unknowns.size() << ", rank: " << basis.rank << ", dimension: " << basis.dim() << "\n";
  os << generators_text(basis, nm);
  return os.str();
}

std::string render_algebra(const OdeSystem& sys, const AnsatzSpec& window, const SymmetryBasis& basis,
                           const AlgebraOutcome& algebra, Format f) {
  const NameTable& nm = sys.names;
  if (f == Format::Json) {
    Json j = header("algebra");
    j["system"] = system_json(sys);
    j["window"] = window.str(nm);
    j["symmetries"] = basis_json(basis, nm);
    j["algebra"] = algebra_json(algebra);
    return dump(j);
  }
  return render_symmetries(sys, window, basis, f) + algebra_text(algebra);
}

std::string render_reduction(const OdeSystem& sys, const ReductionOutcome& red, Format f) {
  if (f == Format::Json) {
    Json j = header("reduce");
    j["system"] = system_json(sys);
    j["reduction"] = reduction_json(red);
    return dump(j);
  }
  return reduction_text(red);
}

std::string render_verify(const OdeSystem& sys, const std::vector<VerifyLine>& lines, const MappingOptions& opts,
                          Format f) {
  bool all = true;
  for (const auto& l : lines) all = all && l.report.pass;
  if (f == Format::Json) {
    Json j = header("verify");
    j["system"] = system_json(sys);
    j["epsilon"] = opts.epsilon;
    j["tolerance"] = opts.tol;
    j["steps"] = opts.steps;
    Json arr = Json::array();
    for (const auto& l : lines)
      arr.push_back({{"field", l.field},
                     {"pass", l.report.pass},
                     {"max_deviation", l.report.max_deviation},
                     {"compared", l.report.compared},
                     {"reparametrization_failure", l.report.reparametrization_failure},
                     {"message", l.report.message}});
    j["checks"] = arr;
    j["pass"] = all;
    return dump(j);
  }
  std::ostringstream os;
  os << "epsilon " << opts.epsilon << ", tolerance " << opts.tol << ", steps " << opts.steps << "\n";
  for (const auto& l : lines) {
    os << "  [" << (l.report.pass ? "ok" : "FAIL") << "] " << l.field << ": max deviation " << l.report.max_deviation;
    if (!l.report.message.empty()) os << " (" << l.report.message << ")";
    os << "\n";
  }
  os << (all ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string render_case(const CaseReport& rep, Format f) {
  if (f == Format::Json) {
    Json j = header("cases run");
    j.update(case_json(rep));
    return dump(j);
  }
  return case_text(rep);
}

std::string render_cases(const std::vector<CaseReport>& reps, Format f) {
  bool all = true;
  for (const auto& r : reps) all = all && r.pass;
  if (f == Format::Json) {
    Json j = header("cases run");
    Json arr = Json::array();
    for (const auto& r : reps) arr.push_back(case_json(r));
    j["cases"] = arr;
    j["pass"] = all;
    return dump(j);
  }
  std::string out;
  for (const auto& r : reps) out += case_text(r) + "\n";
  std::size_t passed = 0;
  for (const auto& r : reps) passed += r.pass ? 1 : 0;
  out += std::to_string(passed) + "/" + std::to_string(reps.size()) + " cases passed\n";
  return out;
}

std::string render_case_list(const std::vector<CaseSpec>& specs, Format f) {
  if (f == Format::Json) {
    Json j = header("cases list");
    Json arr = Json::array();
    for (const auto& s : specs) {
      Json e{{"name", s.name}, {"summary", s.summary}, {"comparison", to_string(s.comparison)}};
      if (s.dimension) e["dimension"] = *s.dimension;
      if (!s.algebra.empty()) e["algebra"] = s.algebra;
      if (s.xi) e["xi"] = q(*s.xi);
      arr.push_back(e);
    }
    j["cases"] = arr;
    return dump(j);
  }
  std::ostringstream os;
  for (const auto& s : specs) os << s.name << "  " << s.summary << "\n";
  return os.str();
}

}  // namespace liesym
