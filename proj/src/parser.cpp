#include "liesym/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "liesym/errors.hpp"

namespace liesym {

std::string mode_name(Mode mode) { return mode == Mode::Quantum1d ? "quantum1d" : "ode"; }

PhasePoint parse_start(std::string_view text, std::size_t n) {
  std::vector<std::vector<double>> parts(1);
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
    } else if (c == ';') {
      parts.emplace_back();
      ++i;
    } else {
      double d = 0;
      auto [end, ec] = std::from_chars(text.data() + i, text.data() + text.size(), d);
      if (ec != std::errc()) throw ParseError("malformed number in the initial condition", 1, i + 1);
      parts.back().push_back(d);
      i = static_cast<std::size_t>(end - text.data());
    }
  }
  if (parts.size() != 3 || parts[0].size() != 1 || parts[1].size() != n || parts[2].size() != n)
    throw ParseError("the initial condition needs 't; " + std::to_string(n) + " positions; " + std::to_string(n) +
                         " velocities'",
                     1, 1);
  return {parts[0][0], parts[1], parts[2]};
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "ode") return Mode::Ode;
  if (name == "quantum1d") return Mode::Quantum1d;
  return std::nullopt;
}

ExprContext ExprContext::make(std::size_t n, Mode mode, bool radical) {
  ExprContext c;
  c.n = n;
  c.mode = mode;
  c.radical = radical;
  c.names = names_for(mode, n);
  c.symbols[c.names.indep] = VarId::indep();
  for (std::size_t a = 1; a <= n; ++a) {
    c.symbols[c.names.name(VarId::coord(static_cast<std::uint32_t>(a)))] = VarId::coord(static_cast<std::uint32_t>(a));
    c.symbols[c.names.name(VarId::velocity(static_cast<std::uint32_t>(a)))] =
        VarId::velocity(static_cast<std::uint32_t>(a));
  }
  if (radical) c.symbols[c.names.radical] = VarId::radical_over_coords(n);
  return c;
}

namespace {

enum class Tok { Number, Ident, Op, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Parser {
 public:
  Parser(std::string_view text, const ExprContext& ctx, std::size_t line, std::size_t column0)
      : text_(text), ctx_(ctx), line_(line), column0_(column0) {
    tokenize();
  }

  SymExpr parse() {
    if (peek().kind == Tok::End) fail("empty expression", peek().pos);
    SymExpr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t pos) const { throw ParseError(msg, line_, column0_ + pos); }

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[j])) || text_[j] == '.')) ++j;
        if (j < text_.size() && std::isalpha(static_cast<unsigned char>(text_[j])))
          fail("malformed number", i);
        toks_.push_back({Tok::Number, std::string(text_.substr(i, j - i)), i});
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        toks_.push_back({Tok::Ident, std::string(text_.substr(i, j - i)), i});
        i = j;
      } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
        toks_.push_back({Tok::Op, std::string(1, c), i});
        ++i;
      } else {
        fail(std::string("unexpected character '") + c + "'", i);
      }
    }
    toks_.push_back({Tok::End, "end of input", text_.size()});
  }

  const Token& peek() const { return toks_[at_]; }
  bool is_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }
  Token take() { return toks_[at_++]; }

  SymExpr expr() {
    SymExpr acc = term();
    while (is_op("+") || is_op("-")) {
      bool plus = take().text == "+";
      SymExpr rhs = term();
      acc = plus ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  // A power keeps its base so that dividing by p^k stores p as a
  // denominator factor with exponent k instead of the expanded p^k.
  struct Operand {
    SymExpr value;
    SymExpr base;
    int k = 1;
  };

  SymExpr term() {
    SymExpr acc = unary().value;
    while (is_op("*") || is_op("/")) {
      Token op = take();
      Operand rhs = unary();
      if (op.text == "*") {
        acc *= rhs.value;
      } else {
        if (rhs.value.is_zero()) fail("division by zero", op.pos);
        acc = rhs.k > 1 ? acc * (SymExpr(1) / rhs.base).pow(rhs.k) : acc / rhs.value;
      }
    }
    return acc;
  }

  Operand unary() {
    if (is_op("-")) {
      take();
      Operand o = unary();
      o.value = -o.value;
      o.base = o.k % 2 ? -o.base : o.base;
      return o;
    }
    if (is_op("+")) {
      take();
      return unary();
    }
    return power();
  }

  Operand power() {
    SymExpr base = primary();
    if (!is_op("^")) return {base, base, 1};
    Token caret = take();
    int k = exponent(caret.pos);
    if (is_op("^")) fail("chained exponents need parentheses", peek().pos);
    if (k < 0 && base.is_zero()) fail("zero raised to a negative power", caret.pos);
    return {base.pow(k), base, k};
  }

  int exponent(std::size_t caret) {
    bool paren = false;
    if (is_op("(")) {
      take();
      paren = true;
    }
    int sign = 1;
    if (is_op("-") || is_op("+")) sign = take().text == "-" ? -1 : 1;
    if (peek().kind != Tok::Number) fail("malformed exponent: expected an integer", peek().kind == Tok::End ? caret : peek().pos);
    Token num = take();
    if (num.text.find('.') != std::string::npos) fail("malformed exponent: expected an integer", num.pos);
    if (num.text.size() > 4) fail("exponent is too large", num.pos);
    int k = sign * std::stoi(num.text);
    if (paren) {
      if (!is_op(")")) fail("malformed exponent: expected ')'", peek().pos);
      take();
    }
    return k;
  }

  SymExpr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      if (t.text.find('.') != std::string::npos) fail("malformed number; use integers and '/' for rationals", t.pos);
      take();
      return SymExpr(Rational(Integer(t.text)));
    }
    if (t.kind == Tok::Ident) {
      Token id = take();
      auto it = ctx_.symbols.find(id.text);
      if (it != ctx_.symbols.end()) return SymExpr::var(it->second);
      if (id.text == ctx_.names.radical) fail("'" + id.text + "' is used without the radical statement", id.pos);
      fail("unknown identifier '" + id.text + "'", id.pos);
    }
    if (is_op("(")) {
      Token open = take();
      SymExpr e = expr();
      if (!is_op(")")) fail("missing ')' for '(' at column " + std::to_string(column0_ + open.pos), peek().pos);
      take();
      return e;
    }
    fail(t.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'", t.pos);
  }

  std::string_view text_;
  const ExprContext& ctx_;
  std::size_t line_;
  std::size_t column0_;
  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

std::string_view trim_left(std::string_view s, std::size_t& col) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++col;
  }
  return s;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits off the leading word.
std::string_view word(std::string_view& s, std::size_t& col) {
  std::size_t i = 0;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '=') ++i;
  std::string_view w = s.substr(0, i);
  s.remove_prefix(i);
  col += i;
  s = trim_left(s, col);
  return w;
}

struct Equation {
  std::string target;
  std::string text;
  std::size_t line;
  std::size_t target_col;
  std::size_t expr_col;
};

}  // namespace

SymExpr parse_expression(std::string_view text, const ExprContext& ctx, std::size_t line, std::size_t column0) {
  try {
    return Parser(text, ctx, line, column0).parse();
  } catch (const DivisionByZero& e) {
    throw ParseError(e.what(), line, column0);
  }
}

// Largest k among identifiers xk and vk, so an undeclared n covers every
// coordinate the equations mention.
std::size_t highest_index(std::string_view text) {
  std::size_t best = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!std::isalpha(static_cast<unsigned char>(text[i])) && text[i] != '_') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
    std::string_view id = text.substr(i, j - i);
    if (id.size() > 1 && id.size() < 5 && (id[0] == 'x' || id[0] == 'v') &&
        id.find_first_not_of("0123456789", 1) == std::string_view::npos && id[1] != '0')
      best = std::max(best, static_cast<std::size_t>(std::stoul(std::string(id.substr(1)))));
    i = j;
  }
  return best;
}

OdeSystem parse_system(std::string_view source, std::optional<Mode> mode) {
  std::optional<std::size_t> declared_n;
  std::optional<Mode> declared_mode;
  bool radical = false;
  std::vector<Equation> eqs;
  std::size_t last_line = 1;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t col = 1;
    line = trim_right(trim_left(line, col));
    if (line.empty()) continue;
    last_line = line_no;

    std::size_t kw_col = col;
    std::string_view rest = line;
    std::string_view kw = word(rest, col);
    if (kw == "radical") {
      if (!rest.empty()) throw ParseError("unexpected text after 'radical'", line_no, col);
      radical = true;
    } else if (kw == "mode") {
      std::string_view m = word(rest, col);
      auto parsed = parse_mode(m);
      if (!parsed) throw ParseError("unknown mode '" + std::string(m) + "' (expected ode or quantum1d)", line_no, kw_col + 5);
      declared_mode = parsed;
    } else if (kw == "n") {
      if (rest.empty() || rest.front() != '=') throw ParseError("expected '=' after n", line_no, col);
      rest.remove_prefix(1);
      ++col;
      rest = trim_left(rest, col);
      std::string_view num = word(rest, col);
      if (num.empty() || num.find_first_not_of("0123456789") != std::string_view::npos || num.size() > 3 || num == "0")
        throw ParseError("n must be a positive integer", line_no, col - num.size());
      declared_n = static_cast<std::size_t>(std::stoul(std::string(num)));
    } else if (kw == "ddot") {
      std::size_t target_col = col;
      std::string_view target = word(rest, col);
      if (target.empty()) throw ParseError("expected a coordinate after 'ddot'", line_no, col);
      if (rest.empty() || rest.front() != '=') throw ParseError("expected '=' after the coordinate", line_no, col);
      rest.remove_prefix(1);
      ++col;
      rest = trim_left(rest, col);
      eqs.push_back({std::string(target), std::string(rest), line_no, target_col, col});
    } else {
      throw ParseError("unknown statement '" + std::string(kw) + "'", line_no, kw_col);
    }
  }

  if (declared_mode && mode && *declared_mode != *mode)
    throw ParseError("the source declares mode " + mode_name(*declared_mode) + " but " + mode_name(*mode) +
                         " was requested",
                     1, 1);
  Mode m = declared_mode ? *declared_mode : mode.value_or(Mode::Ode);
  if (eqs.empty()) throw ParseError("no equations; expected lines of the form 'ddot x1 = ...'", last_line, 1);
  std::size_t n = declared_n.value_or(eqs.size());
  if (!declared_n && m == Mode::Ode)
    for (const auto& eq : eqs) n = std::max({n, highest_index(eq.target), highest_index(eq.text)});
  if (m == Mode::Quantum1d && n != 1) throw ParseError("quantum1d mode has exactly one equation", last_line, 1);

  ExprContext ctx = ExprContext::make(n, m, radical);
  std::vector<std::optional<SymExpr>> rhs(n);
  for (const auto& eq : eqs) {
    auto it = ctx.symbols.find(eq.target);
    if (it == ctx.symbols.end() || it->second.kind != VarKind::Coord)
      throw ParseError("'" + eq.target + "' is not a coordinate of this system", eq.line, eq.target_col);
    std::size_t a = it->second.index - 1;
    if (rhs[a]) throw ParseError("second equation for '" + eq.target + "'", eq.line, eq.target_col);
    rhs[a] = parse_expression(eq.text, ctx, eq.line, eq.expr_col);
  }
  std::vector<SymExpr> out;
  for (std::size_t a = 0; a < n; ++a) {
    if (!rhs[a])
      throw ParseError("missing equation for '" + ctx.names.name(VarId::coord(static_cast<std::uint32_t>(a + 1))) + "'",
                       last_line, 1);
    out.push_back(*rhs[a]);
  }
  return OdeSystem::make(std::move(out), m);
}

std::string print_system(const OdeSystem& sys) {
  std::string out;
  if (sys.mode != Mode::Ode) out += "mode " + mode_name(sys.mode) + "\n";
  out += "n = " + std::to_string(sys.n) + "\n";
  bool radical = false;
  for (const auto& w : sys.rhs) radical = radical || w.numerator().radical().has_value();
  if (radical) out += "radical\n";
  for (std::size_t a = 0; a < sys.n; ++a)
    out += "ddot " + sys.names.name(sys.x(a)) + " = " + sys.rhs[a].str(sys.names) + "\n";
  return out;
}

VectorField parse_field(const std::string& tau, const std::vector<std::string>& eta, const ExprContext& ctx) {
  if (eta.size() != ctx.n)
    throw InputError("a field needs " + std::to_string(ctx.n) + " eta components, got " + std::to_string(eta.size()));
  ExprContext point = ctx;
  for (std::size_t a = 1; a <= ctx.n; ++a) point.symbols.erase(ctx.names.name(VarId::velocity(static_cast<std::uint32_t>(a))));
  VectorField X = VectorField::zero(ctx.n);
  X.tau = parse_expression(tau, point);
  for (std::size_t a = 0; a < ctx.n; ++a) X.eta[a] = parse_expression(eta[a], point);
  return X;
}

AnsatzSpec parse_window(std::string_view text, const OdeSystem& sys) {
  const ExprContext ctx = ExprContext::of(sys, false);
  AnsatzSpec spec;
  std::set<VarId> seen;
  auto number = [](std::string_view s, std::size_t c) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size() || s.size() > 5 || s.find_first_not_of("0123456789", i) != std::string_view::npos)
      throw ParseError("expected an integer", 1, c);
    return std::stoi(std::string(s));
  };
  std::size_t base = 0;  // offset of the current item in `text`
  while (true) {
    std::size_t comma = text.find(',', base);
    std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
    std::size_t col = base + 1;
    std::string_view item = trim_right(trim_left(text.substr(base, stop - base), col));
    if (item.empty()) throw ParseError("empty window item", 1, col);

    if (item == "radical") {
      spec.allow_radical = true;
    } else {
      std::size_t colon = item.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected 'name:lo..hi', 'total:k' or 'radical'", 1, col);
      std::string name(item.substr(0, colon));
      std::string_view range = item.substr(colon + 1);
      std::size_t range_col = col + colon + 1;
      if (name == "total") {
        spec.total_degree = number(range, range_col);
      } else {
        auto it = ctx.symbols.find(name);
        if (it == ctx.symbols.end() || it->second.kind == VarKind::Velocity)
          throw ParseError("'" + name + "' is not the independent variable or a coordinate", 1, col);
        if (!seen.insert(it->second).second) throw ParseError("'" + name + "' is bounded twice", 1, col);
        std::size_t dots = range.find("..");
        if (dots == std::string_view::npos) throw ParseError("expected 'lo..hi'", 1, range_col);
        int lo = number(range.substr(0, dots), range_col);
        int hi = number(range.substr(dots + 2), range_col + dots + 2);
        spec.windows.push_back({it->second, lo, hi});
      }
    }
    if (comma == std::string_view::npos) break;
    base = comma + 1;
  }
  try {
    spec.validate();
  } catch (const WindowError& e) {
    throw ParseError(e.what(), 1, 1);
  }
  return spec;
}

}  // namespace liesym
