#pragma once

// Built-in systems with their expected generators, brackets and scaling
// exponents, and the runner that checks the engine against them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/determine.hpp"
#include "liesym/liealgebra.hpp"
#include "liesym/reduction.hpp"
#include "liesym/verifynum.hpp"

namespace liesym {

enum class Comparison { Equal, Contains };
std::string to_string(Comparison c);

struct FieldText {
  std::string tau;
  std::vector<std::string> eta;
};

/// Everything in text form, as a user would write it.
struct CaseSpec {
  std::string name;
  std::string summary;
  std::string source;  // system source
  std::string window;  // empty: degree-2 window in t and x
  std::vector<FieldText> expected;
  std::vector<FieldText> absent;  // fields that must lie outside the found span
  Comparison comparison = Comparison::Equal;
  std::string brackets;                 // format_brackets of the expected generators; empty: unchecked
  std::optional<std::size_t> dimension;  // exact dimension of the found span
  std::string algebra;                  // label of the found algebra; empty: unchecked
  std::optional<Rational> xi;
  std::string note;
  std::string start;  // initial condition for numerical checks; empty: default_start
};

struct CaseEntry {
  CaseSpec spec;
  OdeSystem sys;
  AnsatzSpec window;
  std::vector<VectorField> expected;
  std::vector<VectorField> absent;
};

/// Parses a case description and checks that every expected generator has zero
/// residual. Throws InputError naming the case and the generator otherwise.
CaseEntry load_case(const CaseSpec& spec);

/// t = 0.2, x = (1, 0.5, 0.8), v = (0.3, -0.4, 0.5) cut to n, so r ~ 1.37;
/// quantum1d starts at x = 1, u = 0.5, du = 0.2.
PhasePoint default_start(const OdeSystem& sys);
PhasePoint start_point(const CaseEntry& entry);

const std::vector<CaseSpec>& builtin_specs();
/// Loaded and checked on first use.
const std::vector<CaseEntry>& registry();
/// Throws InputError for an unregistered name.
const CaseEntry& find_case(std::string_view name);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReductionOutcome {
  ReducedSystem reduced;
  SymmetryBasis basis;
  std::optional<MixedSymmetry> scaling;
  std::optional<NonlocalGenerator> nonlocal;
  std::string error;
};

struct AlgebraOutcome {
  std::optional<StructureConstants> sc;
  std::optional<AlgebraReport> report;
  std::string error;  // closure failure inside the window
};

AlgebraOutcome analyze_algebra(const SymmetryBasis& basis, const NameTable& names);
ReductionOutcome analyze_reduction(const OdeSystem& sys, std::size_t pivot = 3);

struct CaseReport {
  std::string name;
  bool pass = false;
  bool window_too_small = false;
  OdeSystem sys;
  AnsatzSpec window;
  SymmetryBasis basis;
  Comparison comparison = Comparison::Equal;
  std::optional<SpanComparison> span;
  AlgebraOutcome algebra;
  std::optional<ReductionOutcome> reduction;
  std::vector<Check> checks;
  std::string note;
};

struct RunOptions {
  std::optional<AnsatzSpec> window;  // replaces the recommended window
};

CaseReport run_case(const CaseEntry& entry, const RunOptions& opts = {});
CaseReport run_case(std::string_view name, const RunOptions& opts = {});

}  // namespace liesym
