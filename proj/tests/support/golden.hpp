#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gseq/parser.hpp"
#include "gseq/specfile.hpp"
#include "gseq/tm.hpp"
#include "gseq/validator.hpp"
#include "paths.hpp"

namespace gseq::testing {

// One validator case: the checks to run and the violation code expected
// (nullopt means no violations at all).
struct GoldenCase {
  std::string name;
  std::function<std::vector<Violation>()> check;
  std::optional<ViolationCode> expect;
  std::string symbol;  // expected offending symbol when it matters
};

inline MachineSpec golden_bitflip() { return read_spec_file(data_path("bitflip.spec")); }

inline MachineSpec golden_even() { return compile_tm(parse_tm(read_data("even.tm"))); }

// Out = In plus the cell named by the constant c, which is pinned to 5.
inline MachineSpec golden_param(Flavor flavor) {
  MachineSpec m = parse_spec(R"(machine withparam
kappa: w
flavor: gseqap
signature {
  in: relation 2 membership
  In: relation 1 in
  Out: relation 1 out
  c: constant
}
params {
  c = 5
}
tau {
  In(x): In(x);
  Out(x): In(x) | x = c;
  c(x): x = c;
}
)");
  m.flavor = flavor;
  return m;
}

inline Witness witness(const MachineSpec& m, const std::string& var, const std::string& body, bool doubled) {
  return {{var}, parse_formula(body, m.sigma, doubled)};
}

inline std::vector<GoldenCase> golden_validator_suite() {
  std::vector<GoldenCase> cases;
  cases.push_back({"bit-flip machine is bounded", [] { return check_bounded(golden_bitflip()); }, std::nullopt, ""});
  cases.push_back({"In witness reading In@1",
                   [] {
                     MachineSpec m = golden_bitflip();
                     m.tau["In"] = witness(m, "x", "~In@1(x)", true);
                     return check_bounded(m);
                   },
                   ViolationCode::NotBounded, "In"});
  cases.push_back({"Out witness reading In@1",
                   [] {
                     MachineSpec m = golden_bitflip();
                     m.tau["Out"] = witness(m, "x", "In@1(x) | ~Out@0(x)", true);
                     return check_bounded(m);
                   },
                   ViolationCode::NotBounded, "Out"});
  cases.push_back({"compiled head witness reading h@1",
                   [] {
                     MachineSpec m = golden_even();
                     m.tau["h"] = witness(m, "x", "x = h@1", true);
                     return check_bounded(m);
                   },
                   ViolationCode::NotBounded, "h"});
  cases.push_back({"compiled TM validates", [] { return validate(golden_even()); }, std::nullopt, ""});
  cases.push_back({"hidden information in a GSeqA",
                   [] {
                     MachineSpec m = golden_bitflip();
                     m.sigma.add({"R", SymbolKind::Relation, 1, Role::None});
                     m.fixed_sets["R"] = OrdinalSet::of_naturals({1, 4, 9});
                     m.tau["R"] = witness(m, "x", "R(x)", true);
                     m.tau["Out"] = witness(m, "x", "R(x)", true);
                     m.defaults["R"] = witness(m, "x", "~x = x", false);
                     return validate(m);
                   },
                   ViolationCode::BadConstraint, "R"});
  cases.push_back({"parameter constant in a GSeqA", [] { return validate(golden_param(Flavor::GSeqA)); },
                   ViolationCode::BadConstraint, "c"});
  cases.push_back({"parameter constant in a GSeqAP", [] { return validate(golden_param(Flavor::GSeqAP)); },
                   std::nullopt, ""});
  cases.push_back({"signature without Out",
                   [] { return validate(read_spec_file(data_path("missing_out.spec"))); },
                   ViolationCode::MissingDistinguished, ""});
  cases.push_back({"default reading In",
                   [] {
                     MachineSpec m = golden_even();
                     m.defaults["t"] = witness(m, "x", "In(x) & x = 0", false);
                     return check_simple(m);
                   },
                   ViolationCode::NotSimple, "t"});
  cases.push_back({"witness with the wrong variable count",
                   [] {
                     MachineSpec m = golden_bitflip();
                     m.tau["Out"] = {{"x", "y"}, parse_formula("Out(x) & x = y", m.sigma, true)};
                     return check_bounded(m);
                   },
                   ViolationCode::ArityMismatch, "Out"});
  cases.push_back({"finite kappa without the surrogate flag",
                   [] { return validate(compile_tm(parse_tm(read_data("even.tm")), Ordinal::finite(6))); },
                   ViolationCode::NonLimitKappa, ""});
  return cases;
}

// Empty when the case behaves as expected, else a description of the mismatch.
inline std::string run_golden_case(const GoldenCase& c) {
  std::vector<Violation> v;
  try {
    v = c.check();
  } catch (const std::exception& e) {
    return std::string("threw ") + e.what();
  }
  if (!c.expect) {
    if (v.empty()) return {};
    return "unexpected " + v.front().to_string();
  }
  for (const auto& x : v) {
    if (x.code == *c.expect && (c.symbol.empty() || x.symbol == c.symbol)) return {};
  }
  std::string got = v.empty() ? std::string("no violations") : v.front().to_string();
  return "expected " + std::string(to_string(*c.expect)) + ", got " + got;
}

}  // namespace gseq::testing
