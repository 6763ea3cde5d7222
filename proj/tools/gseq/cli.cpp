#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gseq/alpha.hpp"
#include "gseq/error.hpp"
#include "gseq/eval.hpp"
#include "gseq/parser.hpp"
#include "gseq/runtime.hpp"
#include "gseq/specfile.hpp"
#include "gseq/tm.hpp"
#include "gseq/transforms.hpp"
#include "gseq/validator.hpp"

namespace gseq::cli {

namespace {

using nlohmann::json;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t default_budget() {
  const char* env = std::getenv("GSEQ_BUDGET");
  if (!env || !*env) return 100000;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw Error(ErrorCode::Syntax, std::string("GSEQ_BUDGET is not a positive integer: ") + env);
  return v;
}

ValidateOptions validate_options(bool allow_finite) {
  ValidateOptions o;
  o.allow_finite_kappa = allow_finite;
  return o;
}

Ordinal parse_kappa_arg(const std::string& text) {
  if (text.rfind("finite:", 0) == 0) return Ordinal::finite(std::stoull(text.substr(7)));
  return Ordinal::parse(text);
}

json violation_json(const Violation& v) {
  json j{{"code", std::string(to_string(v.code))}, {"symbol", v.symbol}, {"clause", v.clause}, {"detail", v.detail}};
  if (v.snapshot) j["snapshot"] = *v.snapshot;
  return j;
}

int cmd_validate(const std::string& path, bool allow_finite, bool as_json, std::ostream& out) {
  MachineSpec m = read_spec_file(path);
  auto violations = validate(m, validate_options(allow_finite));
  if (as_json) {
    json j{{"machine", m.name}, {"valid", violations.empty()}, {"kappa", m.kappa.to_string()},
           {"flavor", std::string(to_string(m.flavor))}, {"violations", json::array()}};
    for (const auto& v : violations) j["violations"].push_back(violation_json(v));
    out << j.dump(2) << "\n";
  } else if (violations.empty()) {
    out << "valid " << to_string(m.flavor) << " " << m.name << " kappa=" << m.kappa.to_string()
        << " symbols=" << m.sigma.size() << "\n";
  } else {
    for (const auto& v : violations) out << v.to_string() << "\n";
  }
  return violations.empty() ? kOk : kError;
}

struct RunArgs {
  std::string path;
  std::string input = "{}";
  std::uint64_t budget = 0;
  std::uint64_t jumps = 4;
  std::size_t window = 64;
  std::string mode = "full";
  std::string trace;
  bool json = false;
};

int cmd_run(const RunArgs& a, bool allow_finite, std::ostream& out, std::ostream& err) {
  MachineSpec m = read_spec_file(a.path);
  ValidatedMachine vm = check_machine(m, validate_options(allow_finite));
  OrdinalSet input = OrdinalSet::parse(a.input);
  Budget b;
  b.max_steps_per_segment = a.budget ? a.budget : default_budget();
  b.max_limit_jumps = a.jumps;
  b.window = a.window;
  RunHooks hooks;
  std::ofstream trace_file;
  if (!a.trace.empty()) {
    trace_file.open(a.trace, std::ios::binary);
    if (!trace_file) throw Error(ErrorCode::Io, "cannot write " + a.trace);
    hooks.trace = &trace_file;
  }
  RunTrace tr = run(vm, input, b, a.mode == "short" ? RunMode::Short : RunMode::Full, hooks);
  const Outcome& o = tr.outcome;
  for (const auto& w : tr.warnings) err << "warning: " << w << "\n";
  if (a.json) {
    json j{{"machine", m.name}, {"input", input.to_string()}, {"outcome", std::string(to_string(o.kind))},
           {"steps", tr.steps}, {"limits", tr.limits.size()}};
    if (o.kind == Outcome::Kind::Terminated) {
      j["output"] = o.output.to_string();
      j["length"] = o.length.to_string();
      j["short"] = tr.is_short(m.kappa);
    }
    if (!o.reason.empty()) j["reason"] = o.reason;
    if (o.kind == Outcome::Kind::Failed) j["error"] = std::string(to_string(o.error));
    out << j.dump(2) << "\n";
  } else {
    out << "outcome: " << to_string(o.kind) << "\n";
    if (o.kind == Outcome::Kind::Terminated) {
      out << "output: " << o.output.to_string() << "\n";
      out << "length: " << o.length.to_string() << "\n";
    }
    if (o.kind == Outcome::Kind::Failed) out << "error: " << to_string(o.error) << "\n";
    if (!o.reason.empty()) out << "reason: " << o.reason << "\n";
    out << "steps: " << tr.steps << "\n";
  }
  switch (o.kind) {
    case Outcome::Kind::Terminated: return kOk;
    case Outcome::Kind::OutOfBudget:
    case Outcome::Kind::LimitUnresolved: return kBudget;
    case Outcome::Kind::Failed: return kError;
  }
  return kError;
}

void emit_spec(const MachineSpec& m, const std::string& out_path, std::ostream& out) {
  ValidateOptions o;
  o.allow_finite_kappa = true;
  check_machine(m, o);
  if (out_path.empty()) {
    out << print_spec(m);
  } else {
    write_spec_file(out_path, m);
  }
}

// "A..B" inclusive; B < A is the empty range.
std::vector<std::uint64_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorCode::Syntax, "range must look like A..B: " + text);
  auto num = [&](const std::string& s) -> long long {
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) {
      throw Error(ErrorCode::Syntax, "bad range bound '" + s + "'");
    }
    return std::stoll(s);
  };
  long long lo = num(text.substr(0, dots));
  long long hi = num(text.substr(dots + 2));
  if (lo < 0) throw Error(ErrorCode::Syntax, "range starts below 0");
  std::vector<std::uint64_t> out;
  for (long long k = lo; k <= hi; ++k) out.push_back(static_cast<std::uint64_t>(k));
  return out;
}

struct CrossArgs {
  std::string program;
  std::string inputs = "0..12";
  std::string oracle = "{}";
  std::uint64_t budget = 0;
  std::string simulation;
  bool json = false;
};

int cmd_crosscheck(const CrossArgs& a, std::ostream& out, std::ostream& err) {
  AlphaMachineSpec spec = parse_alpha_program(read_text(a.program));
  OrdinalSet oracle = OrdinalSet::parse(a.oracle);
  std::vector<std::uint64_t> ks = parse_range(a.inputs);
  std::vector<OrdinalSet> inputs;
  for (auto k : ks) inputs.push_back(encode_pair_of_sets(OrdinalSet::of_naturals({k}), oracle));
  AlphaBudget budget;
  budget.max_steps = a.budget ? a.budget : std::min<std::uint64_t>(default_budget(), 2000);
  std::optional<MachineSpec> sim;
  if (!a.simulation.empty()) sim = read_spec_file(a.simulation);
  auto rows = crosscheck(spec, inputs, budget, sim);

  std::size_t agree = static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CrossRow& r) { return r.agree; }));
  if (a.json) {
    json j{{"program", spec.program.name}, {"oracle", oracle.to_string()}, {"rows", json::array()}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      json row{{"k", ks[i]},
               {"code", r.input.to_string()},
               {"alpha", std::string(to_string(r.alpha.kind))},
               {"gseq", std::string(to_string(r.gseq))},
               {"short", r.gseq_short},
               {"agree", r.agree}};
      if (r.alpha.kind == AlphaResult::Kind::Halted) row["alpha_output"] = r.alpha.output.to_string();
      if (r.gseq_short) row["gseq_output"] = r.gseq_output.to_string();
      j["rows"].push_back(row);
    }
    j["agree"] = agree;
    j["total"] = rows.size();
    out << j.dump(2) << "\n";
  } else {
    out << std::left << std::setw(4) << "k" << std::setw(12) << "alpha" << std::setw(18) << "gseq"
        << std::setw(7) << "agree" << "output\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      std::string gs = std::string(to_string(r.gseq)) + (r.gseq_short ? "/short" : "");
      std::string shown = r.alpha.kind == AlphaResult::Kind::Halted ? r.alpha.output.to_string() : "-";
      if (!r.agree && r.gseq_short) shown += " vs " + r.gseq_output.to_string();
      out << std::setw(4) << ks[i] << std::setw(12) << to_string(r.alpha.kind) << std::setw(18) << gs
          << std::setw(7) << (r.agree ? "yes" : "NO") << shown << "\n";
    }
    out << "agree " << agree << "/" << rows.size() << "\n";
  }
  if (agree == rows.size()) return kOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].agree) {
      err << "disagreement on input " << ks[i] << " (code " << rows[i].input.to_string() << ")\n";
      break;
    }
  }
  return kDisagree;
}

int cmd_eval(const std::string& path, const std::string& state_text, const std::string& formula, bool allow_finite,
             std::ostream& out) {
  MachineSpec m = read_spec_file(path);
  if (m.kappa.is_finite() && !allow_finite) {
    throw Error(ErrorCode::Unsupported, "finite kappa needs --allow-finite-kappa");
  }
  State s = State::parse(state_text, m.kappa);
  Formula f = parse_formula(formula, m.sigma);
  bool v = sat(s, f, EvalDomain::for_kappa(m.kappa), m.eval_options());
  out << (v ? "true" : "false") << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalised sequential algorithms over ordinals"};
  app.require_subcommand(1);
  bool allow_finite = false;
  app.add_flag("--allow-finite-kappa", allow_finite, "Accept machines over a finite kappa (surrogate mode)");

  std::string spec_path;
  bool as_json = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a spec file");
  validate_cmd->add_option("spec", spec_path, "Spec file")->required();
  validate_cmd->add_flag("--json", as_json, "Machine-readable report");

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Run a machine on an input set");
  run_cmd->add_option("spec", ra.path, "Spec file")->required();
  run_cmd->add_option("--input", ra.input, "Input set, e.g. {1,3} or co{0}");
  run_cmd->add_option("--budget", ra.budget, "Successor steps per segment (default: GSEQ_BUDGET or 100000)");
  run_cmd->add_option("--limit-jumps", ra.jumps, "Limit stages to cross");
  run_cmd->add_option("--window", ra.window, "Events kept per cell for limit classification");
  run_cmd->add_option("--mode", ra.mode, "full or short")->check(CLI::IsMember({"full", "short"}));
  run_cmd->add_option("--trace", ra.trace, "Write the trace records to this file");
  run_cmd->add_flag("--json", ra.json, "Machine-readable summary");

  auto* transform_cmd = app.add_subcommand("transform", "Build a machine from others");
  transform_cmd->require_subcommand(1);
  std::string out_path;
  std::string kappa_text;
  std::string first;
  std::string second;
  auto* t_compile = transform_cmd->add_subcommand("compile-tm", "Turing machine or alpha program to a spec");
  t_compile->add_option("tm", first, "TM file")->required();
  t_compile->add_option("--kappa", kappa_text, "Target kappa (default w)");
  auto* t_compose = transform_cmd->add_subcommand("compose", "Run the first machine, then the second");
  t_compose->add_option("first", first, "Spec file")->required();
  t_compose->add_option("second", second, "Spec file")->required();
  auto* t_flip = transform_cmd->add_subcommand("flip", "Complement the output");
  t_flip->add_option("spec", first, "Spec file")->required();
  auto* t_dovetail = transform_cmd->add_subcommand("dovetail", "Collect the inputs on which the machine halts");
  t_dovetail->add_option("spec", first, "Spec file")->required();
  auto* t_lift = transform_cmd->add_subcommand("lift", "Move a machine to a larger kappa");
  t_lift->add_option("spec", first, "Spec file")->required();
  t_lift->add_option("--kappa", kappa_text, "Target kappa")->required();
  for (auto* c : {t_compile, t_compose, t_flip, t_dovetail, t_lift}) {
    c->add_option("-o,--output", out_path, "Output spec file (default: stdout)");
  }

  CrossArgs ca;
  auto* cross_cmd = app.add_subcommand("crosscheck", "Compare an alpha program with its simulating machine");
  cross_cmd->add_option("program", ca.program, "Alpha program file")->required();
  cross_cmd->add_option("--inputs", ca.inputs, "Range A..B; input k codes the pair ({k}, oracle)");
  cross_cmd->add_option("--oracle", ca.oracle, "Oracle set O");
  cross_cmd->add_option("--budget", ca.budget, "Alpha-machine step budget");
  cross_cmd->add_option("--simulation", ca.simulation, "Use this spec instead of the compiled program")
      ->group("");
  cross_cmd->add_flag("--json", ca.json, "Machine-readable table");

  std::string state_text;
  std::string formula;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a sentence in a state");
  eval_cmd->add_option("spec", spec_path, "Spec file giving kappa and the signature")->required();
  eval_cmd->add_option("formula", formula, "Sentence")->required();
  eval_cmd->add_option("--state", state_text, "State text, e.g. \"constants: h=1; unary: In={3}\"")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*validate_cmd) return cmd_validate(spec_path, allow_finite, as_json, out);
    if (*run_cmd) return cmd_run(ra, allow_finite, out, err);
    if (*cross_cmd) return cmd_crosscheck(ca, out, err);
    if (*eval_cmd) return cmd_eval(spec_path, state_text, formula, allow_finite, out);
    if (*transform_cmd) {
      MachineSpec result;
      if (*t_compile) {
        TmSpec t = parse_tm(read_text(first));
        Ordinal kappa = kappa_text.empty() ? Ordinal::omega() : parse_kappa_arg(kappa_text);
        bool program = !t.branches.empty() || !t.params.empty();
        result = program ? compile_program(t, kappa) : compile_tm(t, kappa);
      } else if (*t_compose) {
        result = compose(read_spec_file(first), read_spec_file(second));
      } else if (*t_flip) {
        result = flip(read_spec_file(first));
      } else if (*t_dovetail) {
        result = dovetail(read_spec_file(first));
      } else if (*t_lift) {
        result = lift(read_spec_file(first), parse_kappa_arg(kappa_text));
      }
      emit_spec(result, out_path, out);
      return kOk;
    }
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << v.to_string() << "\n";
    return kError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace gseq::cli
