// Thin bindings: systems are native objects, results are the JSON reports
// the command-line tool prints, decoded by the Python package.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "liesym/errors.hpp"
#include "liesym/parser.hpp"
#include "liesym/registry.hpp"
#include "liesym/report.hpp"

namespace py = pybind11;
using namespace liesym;

namespace {

using Target = std::variant<OdeSystem, std::string>;

struct Resolved {
  OdeSystem sys;
  AnsatzSpec window;
  PhasePoint start;
};

Resolved resolve(const Target& target, const std::optional<std::string>& window, bool radical) {
  Resolved r;
  if (const auto* name = std::get_if<std::string>(&target)) {
    const CaseEntry& e = find_case(*name);
    r.sys = e.sys;
    r.window = e.window;
    r.start = start_point(e);
  } else {
    r.sys = std::get<OdeSystem>(target);
    r.window = AnsatzSpec::standard(r.sys.n);
    r.start = default_start(r.sys);
  }
  if (window) r.window = parse_window(*window, r.sys);
  if (radical) r.window.allow_radical = true;
  return r;
}

std::vector<std::string> rhs_strings(const OdeSystem& s) {
  std::vector<std::string> out;
  for (const auto& w : s.rhs) out.push_back(w.str(s.names));
  return out;
}

}  // namespace

PYBIND11_MODULE(_liesym, m) {
  m.doc() = "Lie point symmetries of second-order ODE systems";

  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  // Registered last so it runs first: parse errors also carry line and column.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object cls = py::module_::import("liesym._liesym").attr("ParseError");
      py::object err = cls(e.what());
      err.attr("line") = e.line;
      err.attr("column") = e.column;
      PyErr_SetObject(cls.ptr(), err.ptr());
    }
  });

  py::class_<OdeSystem>(m, "System")
      .def_readonly("n", &OdeSystem::n)
      .def_readonly("autonomous", &OdeSystem::autonomous)
      .def_property_readonly("mode", [](const OdeSystem& s) { return mode_name(s.mode); })
      .def_property_readonly("rhs", &rhs_strings)
      .def("source", &print_system)
      .def("__repr__", [](const OdeSystem& s) { return "<System n=" + std::to_string(s.n) + " mode=" + mode_name(s.mode) + ">"; });

  m.def(
      "parse_system",
      [](const std::string& source, const std::optional<std::string>& mode) {
        std::optional<Mode> md;
        if (mode) {
          md = parse_mode(*mode);
          if (!md) throw InputError("mode must be ode or quantum1d");
        }
        return parse_system(source, md);
      },
      py::arg("source"), py::arg("mode") = py::none());

  m.def("case_system", [](const std::string& name) { return find_case(name).sys; }, py::arg("name"));

  m.def(
      "symmetries_json",
      [](const Target& target, const std::optional<std::string>& window, bool radical) {
        Resolved r = resolve(target, window, radical);
        py::gil_scoped_release release;
        return render_symmetries(r.sys, r.window, find_symmetries(r.sys, r.window), Format::Json);
      },
      py::arg("target"), py::arg("window") = py::none(), py::arg("radical") = false);

  m.def(
      "algebra_json",
      [](const Target& target, const std::optional<std::string>& window, bool radical) {
        Resolved r = resolve(target, window, radical);
        py::gil_scoped_release release;
        SymmetryBasis b = find_symmetries(r.sys, r.window);
        return render_algebra(r.sys, r.window, b, analyze_algebra(b, r.sys.names), Format::Json);
      },
      py::arg("target"), py::arg("window") = py::none(), py::arg("radical") = false);

  m.def(
      "reduce_json",
      [](const Target& target, std::size_t pivot) {
        Resolved r = resolve(target, std::nullopt, false);
        py::gil_scoped_release release;
        return render_reduction(r.sys, analyze_reduction(r.sys, pivot), Format::Json);
      },
      py::arg("target"), py::arg("pivot") = 3);

  m.def(
      "verify_json",
      [](const Target& target, double eps, double tol, std::size_t steps, const std::optional<std::string>& start) {
        Resolved r = resolve(target, std::nullopt, false);
        if (start) r.start = parse_start(*start, r.sys.n);
        MappingOptions opts;
        opts.epsilon = eps;
        opts.tol = tol;
        opts.steps = steps;
        py::gil_scoped_release release;
        std::vector<VerifyLine> lines;
        for (const auto& X : find_symmetries(r.sys, r.window).fields)
          lines.push_back({X.str(r.sys.names), check_solution_mapping(r.sys, X, r.start, opts)});
        return render_verify(r.sys, lines, opts, Format::Json);
      },
      py::arg("target"), py::arg("eps") = 0.3, py::arg("tol") = 1e-6, py::arg("steps") = 1000,
      py::arg("start") = py::none());

  m.def("cases_json", [] { return render_case_list(builtin_specs(), Format::Json); });

  m.def(
      "run_case_json",
      [](const std::string& name, const std::optional<std::string>& window) {
        const CaseEntry& e = find_case(name);
        RunOptions opts;
        if (window) opts.window = parse_window(*window, e.sys);
        py::gil_scoped_release release;
        return render_case(run_case(e, opts), Format::Json);
      },
      py::arg("name"), py::arg("window") = py::none());

  m.attr("REPORT_SCHEMA") = kReportSchema;
}
