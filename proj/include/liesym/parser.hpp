#pragma once

// Text forms: expressions, system sources, generators and ansatz windows.
//
// System source, one statement per line, '#' starts a comment:
//   n = 3                 optional; otherwise the largest coordinate index used
//   radical               enables r = sqrt(x1^2 + ... + xn^2)
//   mode quantum1d        names x, u, du for u'' = w(x, u, du)
//   ddot x1 = <expr>      one equation per coordinate

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/determine.hpp"
#include "liesym/vectorfield.hpp"
#include "liesym/verifynum.hpp"

namespace liesym {

/// Identifiers visible to the expression parser.
struct ExprContext {
  std::size_t n = 0;
  Mode mode = Mode::Ode;
  bool radical = false;
  NameTable names;
  std::map<std::string, VarId> symbols;

  static ExprContext make(std::size_t n, Mode mode, bool radical);
  static ExprContext of(const OdeSystem& sys, bool radical = true) { return make(sys.n, sys.mode, radical); }
};

/// Integer literals, + - * / and ^ with an integer exponent (optionally
/// signed or parenthesized). Errors carry `line` and the column of the
/// offending token counted from `column0`.
SymExpr parse_expression(std::string_view text, const ExprContext& ctx, std::size_t line = 1,
                         std::size_t column0 = 1);

/// `mode` is used when the source has no mode statement; a conflicting
/// statement is a ParseError.
OdeSystem parse_system(std::string_view source, std::optional<Mode> mode = std::nullopt);

/// Canonical source text; parse_system(print_system(s)) reproduces s.
std::string print_system(const OdeSystem& sys);

VectorField parse_field(const std::string& tau, const std::vector<std::string>& eta, const ExprContext& ctx);

/// "t:0..2,x1:0..2,x2:0..2,x3:0..2,total:2[,radical]" with the system's names.
AnsatzSpec parse_window(std::string_view text, const OdeSystem& sys);

/// "t; x1, x2, x3; v1, v2, v3" with decimal numbers.
PhasePoint parse_start(std::string_view text, std::size_t n);

std::string mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

}  // namespace liesym
