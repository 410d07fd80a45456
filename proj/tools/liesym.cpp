// Command-line front end. Exit codes: 0 pass, 1 mismatch, 2 usage or parse error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "liesym/errors.hpp"
#include "liesym/parser.hpp"
#include "liesym/registry.hpp"
#include "liesym/report.hpp"

using namespace liesym;

namespace {

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

// A parse error already prefixed with the file name.
class SourceError : public Error {
 public:
  using Error::Error;
};

struct TargetOptions {
  std::string target;
  std::string window;
  bool radical = false;
  std::string mode;
};

struct Target {
  OdeSystem sys;
  AnsatzSpec window;
  const CaseEntry* entry = nullptr;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path that exists is read as a system source; anything else names a case.
Target resolve(const TargetOptions& o) {
  std::optional<Mode> mode;
  if (!o.mode.empty()) mode = parse_mode(o.mode);
  Target t;
  if (std::filesystem::is_regular_file(o.target)) {
    try {
      t.sys = parse_system(read_file(o.target), mode);
    } catch (const ParseError& e) {
      throw SourceError(o.target + ":" + e.what());
    }
    t.window = AnsatzSpec::standard(t.sys.n);
  } else {
    t.entry = &find_case(o.target);
    t.sys = t.entry->sys;
    if (mode && *mode != t.sys.mode)
      throw UsageError("case " + o.target + " is in mode " + mode_name(t.sys.mode));
    t.window = t.entry->window;
  }
  if (!o.window.empty()) t.window = parse_window(o.window, t.sys);
  if (o.radical) t.window.allow_radical = true;
  return t;
}

void add_target_options(CLI::App* cmd, TargetOptions& o) {
  cmd->add_option("target", o.target, "system file, or the name of a registered case")->required();
  cmd->add_option("--window", o.window, "ansatz window, e.g. t:0..2,x1:0..2,total:2");
  cmd->add_flag("--radical", o.radical, "also multiply window monomials by r");
  cmd->add_option("--mode", o.mode, "variable names for a system file")->check(CLI::IsMember({"ode", "quantum1d"}));
}

Format default_format() {
  const char* env = std::getenv("LIESYM_FORMAT");
  if (!env || !*env) return Format::Text;
  auto f = parse_format(env);
  if (!f) throw UsageError(std::string("LIESYM_FORMAT must be text or json, got '") + env + "'");
  return *f;
}

std::vector<CaseReport> run_all(const std::vector<const CaseEntry*>& entries, std::size_t jobs) {
  std::vector<CaseReport> out(entries.size());
  for (std::size_t begin = 0; begin < entries.size(); begin += jobs) {
    std::vector<std::future<CaseReport>> batch;
    std::size_t end = std::min(entries.size(), begin + jobs);
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, [e = entries[i]] { return run_case(*e); }));
    for (std::size_t i = begin; i < end; ++i) out[i] = batch[i - begin].get();
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie point symmetries of second-order ODE systems"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name;
  app.add_option("--format", format_name, "text or json; LIESYM_FORMAT sets the default")
      ->check(CLI::IsMember({"text", "json"}));

  TargetOptions sym_opts, alg_opts, red_opts, ver_opts;
  auto* sym = app.add_subcommand("symmetries", "solve the determining equations in a window");
  add_target_options(sym, sym_opts);
  auto* alg = app.add_subcommand("algebra", "symmetries with structure constants and classification");
  add_target_options(alg, alg_opts);

  auto* red = app.add_subcommand("reduce", "reduced system, its scaling symmetry and xi (n = 3)");
  add_target_options(red, red_opts);
  std::size_t pivot = 3;
  red->add_option("--pivot", pivot, "coordinate that becomes the new independent variable")->check(CLI::Range(1, 3));

  auto* ver = app.add_subcommand("verify", "check numerically that each found generator maps solutions to solutions");
  add_target_options(ver, ver_opts);
  MappingOptions mopts;
  std::string start;
  ver->add_option("--eps", mopts.epsilon, "group parameter");
  ver->add_option("--tol", mopts.tol, "largest allowed deviation");
  ver->add_option("--steps", mopts.steps, "RK4 steps over the span");
  ver->add_option("--span", mopts.span, "integration time");
  ver->add_option("--start", start, "initial condition 't; x1, ...; v1, ...'");

  auto* cases = app.add_subcommand("cases", "registered systems");
  cases->require_subcommand(1);
  cases->add_subcommand("list", "names and summaries");
  auto* run = cases->add_subcommand("run", "run registered cases against their expected results");
  std::vector<std::string> names;
  bool all = false;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  run->add_option("names", names, "case names");
  run->add_flag("--all", all, "every registered case");
  run->add_option("--jobs", jobs, "cases run at once")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Format fmt = format_name.empty() ? default_format() : *parse_format(format_name);

    if (sym->parsed() || alg->parsed()) {
      Target t = resolve(sym->parsed() ? sym_opts : alg_opts);
      SymmetryBasis basis = find_symmetries(t.sys, t.window);
      if (sym->parsed()) {
        std::cout << render_symmetries(t.sys, t.window, basis, fmt);
        return kPass;
      }
      AlgebraOutcome a = analyze_algebra(basis, t.sys.names);
      std::cout << render_algebra(t.sys, t.window, basis, a, fmt);
      return a.report ? kPass : kMismatch;
    }

    if (red->parsed()) {
      Target t = resolve(red_opts);
      ReductionOutcome r = analyze_reduction(t.sys, pivot);
      std::cout << render_reduction(t.sys, r, fmt);
      return r.nonlocal ? kPass : kMismatch;
    }

    if (ver->parsed()) {
      Target t = resolve(ver_opts);
      PhasePoint p = !start.empty() ? parse_start(start, t.sys.n)
                     : t.entry      ? start_point(*t.entry)
                                    : default_start(t.sys);
      SymmetryBasis basis = find_symmetries(t.sys, t.window);
      std::vector<VerifyLine> lines;
      bool ok = true;
      for (const auto& X : basis.fields) {
        lines.push_back({X.str(t.sys.names), check_solution_mapping(t.sys, X, p, mopts)});
        ok = ok && lines.back().report.pass;
      }
      std::cout << render_verify(t.sys, lines, mopts, fmt);
      return ok ? kPass : kMismatch;
    }

    if (cases->got_subcommand("list")) {
      std::cout << render_case_list(builtin_specs(), fmt);
      return kPass;
    }

    if (all == !names.empty()) throw UsageError("cases run needs case names or --all, not both");
    std::vector<const CaseEntry*> entries;
    if (all)
      for (const auto& e : registry()) entries.push_back(&e);
    else
      for (const auto& n : names) entries.push_back(&find_case(n));
    std::vector<CaseReport> reps = run_all(entries, jobs);
    bool ok = true;
    for (const auto& r : reps) ok = ok && r.pass;
    std::cout << (reps.size() == 1 ? render_case(reps[0], fmt) : render_cases(reps, fmt));
    return ok ? kPass : kMismatch;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const SourceError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
}
