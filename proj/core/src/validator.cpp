#include "gseq/validator.hpp"

#include <algorithm>
#include <random>

namespace gseq {

namespace {

constexpr const char* kClauseCopy0 = "transition witness over copy-0 symbols";
constexpr const char* kClauseFree = "witness free variables";
constexpr const char* kClauseCover = "one witness per symbol";
constexpr const char* kClauseSimple = "default witness over membership only";
constexpr const char* kClauseRoles = "distinguished symbols present";
constexpr const char* kClauseSchema = "constraint schema";
constexpr const char* kClauseKappa = "kappa is a limit ordinal";
constexpr const char* kClauseUnique = "unique successor state";
constexpr const char* kClauseLoad = "unique loaded state";

void check_params(const std::string& symbol, const SymbolDecl& d, const Witness& w, std::vector<Violation>& out) {
  if (w.params.size() != expected_params(d)) {
    out.push_back({ViolationCode::ArityMismatch, symbol, kClauseFree,
                   "expected " + std::to_string(expected_params(d)) + " variables, got " +
                       std::to_string(w.params.size()),
                   std::nullopt});
    return;
  }
  auto sorted = w.params;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    out.push_back({ViolationCode::ArityMismatch, symbol, kClauseFree, "repeated variable", std::nullopt});
  }
  for (const auto& v : free_vars(w.body)) {
    if (std::find(w.params.begin(), w.params.end(), v) == w.params.end()) {
      out.push_back({ViolationCode::ArityMismatch, symbol, kClauseFree, "free variable " + v + " is not a parameter",
                     std::nullopt});
    }
  }
}

void check_term_arity(const Term& t, const Signature& sigma, const std::string& owner, std::vector<Violation>& out) {
  if (t.kind == Term::Kind::Func) {
    const auto* d = sigma.find(t.symbol.name);
    if (d && (d->kind != SymbolKind::Function || d->arity != t.args.size())) {
      out.push_back({ViolationCode::ArityMismatch, owner, kClauseFree, "bad use of " + t.symbol.name, std::nullopt});
    }
  }
  if (t.kind == Term::Kind::Const) {
    const auto* d = sigma.find(t.symbol.name);
    if (d && d->kind != SymbolKind::Constant) {
      out.push_back({ViolationCode::ArityMismatch, owner, kClauseFree, "bad use of " + t.symbol.name, std::nullopt});
    }
  }
  for (const auto& a : t.args) check_term_arity(a, sigma, owner, out);
}

void check_arity(const Formula& f, const Signature& sigma, const std::string& owner, std::vector<Violation>& out) {
  switch (f.kind()) {
    case Formula::Kind::Apply: {
      const auto* d = sigma.find(f.relation().name);
      if (d) {
        bool ok = (d->kind == SymbolKind::Relation && d->arity == f.terms().size()) ||
                  (d->kind == SymbolKind::Function && d->arity + 1 == f.terms().size());
        if (!ok) {
          out.push_back({ViolationCode::ArityMismatch, owner, kClauseFree, "bad use of " + f.relation().name,
                         std::nullopt});
        }
      }
      [[fallthrough]];
    }
    case Formula::Kind::Equal:
      for (const auto& t : f.terms()) check_term_arity(t, sigma, owner, out);
      break;
    case Formula::Kind::Not:
    case Formula::Kind::Exists: check_arity(f.left(), sigma, owner, out); break;
    case Formula::Kind::And:
      check_arity(f.left(), sigma, owner, out);
      check_arity(f.right(), sigma, owner, out);
      break;
  }
}

std::string copy_label(Copy c) {
  switch (c) {
    case Copy::None: return "unannotated";
    case Copy::Zero: return "copy 0";
    case Copy::One: return "copy 1";
  }
  return "?";
}

}  // namespace

std::string_view to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::NotBounded: return "NotBounded";
    case ViolationCode::NotSimple: return "NotSimple";
    case ViolationCode::ArityMismatch: return "ArityMismatch";
    case ViolationCode::UnknownSymbol: return "UnknownSymbol";
    case ViolationCode::MissingWitness: return "MissingWitness";
    case ViolationCode::MissingDistinguished: return "MissingDistinguished";
    case ViolationCode::BadConstraint: return "BadConstraint";
    case ViolationCode::NonLimitKappa: return "NonLimitKappa";
    case ViolationCode::D6Violation: return "D6Violation";
  }
  return "?";
}

std::string Violation::to_string() const {
  std::string out = std::string(gseq::to_string(code));
  if (!symbol.empty()) out += "(" + symbol + ")";
  out += " [" + clause + "]";
  if (!detail.empty()) out += ": " + detail;
  if (snapshot) out += " at state {" + *snapshot + "}";
  return out;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorCode::Validation,
            violations.empty() ? std::string("invalid machine") : violations.front().to_string(),
            violations.empty() ? std::string() : violations.front().symbol),
      violations_(std::move(violations)) {}

std::vector<Violation> check_bounded(const MachineSpec& spec) {
  std::vector<Violation> out;
  for (const auto& d : spec.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    if (!spec.tau.count(d.name)) {
      out.push_back({ViolationCode::MissingWitness, d.name, kClauseCover, "no transition witness", std::nullopt});
    }
  }
  for (const auto& [name, w] : spec.tau) {
    const auto* d = spec.sigma.find(name);
    if (!d) {
      out.push_back({ViolationCode::UnknownSymbol, name, kClauseCover, "witness for undeclared symbol", std::nullopt});
      continue;
    }
    if (d->role == Role::Membership) {
      out.push_back({ViolationCode::NotBounded, name, kClauseCover, "membership has a fixed interpretation",
                     std::nullopt});
      continue;
    }
    check_params(name, *d, w, out);
    for (const auto& ref : symbols_used(w.body)) {
      if (!spec.sigma.contains(ref.name)) {
        out.push_back({ViolationCode::UnknownSymbol, name, kClauseCopy0, "uses undeclared " + ref.name, std::nullopt});
      } else if (ref.copy != Copy::Zero) {
        out.push_back({ViolationCode::NotBounded, name, kClauseCopy0,
                       "uses " + ref.name + " (" + copy_label(ref.copy) + ")", std::nullopt});
      }
    }
    check_arity(w.body, spec.sigma, name, out);
  }
  return out;
}

std::vector<Violation> check_simple(const MachineSpec& spec) {
  std::vector<Violation> out;
  const auto membership = spec.membership();
  for (const auto& d : spec.sigma.decls()) {
    if (needs_default(spec, d) && !spec.defaults.count(d.name)) {
      out.push_back({ViolationCode::NotSimple, d.name, kClauseSimple, "no default witness", std::nullopt});
    }
  }
  for (const auto& [name, w] : spec.defaults) {
    const auto* d = spec.sigma.find(name);
    if (!d) {
      out.push_back({ViolationCode::UnknownSymbol, name, kClauseSimple, "default for undeclared symbol", std::nullopt});
      continue;
    }
    if (d->role != Role::None) {
      out.push_back({ViolationCode::NotSimple, name, kClauseSimple, "distinguished symbols take no default",
                     std::nullopt});
      continue;
    }
    check_params(name, *d, w, out);
    for (const auto& ref : symbols_used(w.body)) {
      if (ref.name != membership || ref.copy != Copy::None) {
        out.push_back({ViolationCode::NotSimple, name, kClauseSimple,
                       "uses " + ref.name + (ref.copy == Copy::None ? "" : " (" + copy_label(ref.copy) + ")"),
                       std::nullopt});
      }
    }
  }
  return out;
}

State random_state(const MachineSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const bool finite = spec.kappa.is_finite();
  const std::uint64_t bound = finite ? spec.kappa.finite_value() : 12;
  auto pick = [&](std::uint64_t n) { return n == 0 ? 0 : std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); };
  State s(spec.kappa);
  for (const auto& d : spec.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    switch (d.kind) {
      case SymbolKind::Constant:
        if (auto p = spec.params.find(d.name); p != spec.params.end()) {
          s.set_constant(d.name, p->second);
        } else {
          s.set_constant(d.name, Ordinal::finite(pick(bound)));
        }
        break;
      case SymbolKind::Relation:
        if (d.arity == 1) {
          std::vector<Ordinal> support;
          for (std::uint64_t i = 0; i < bound; ++i) {
            if (pick(3) == 0) support.push_back(Ordinal::finite(i));
          }
          bool co = !finite && pick(4) == 0;
          s.set_unary(d.name, OrdinalSet(co ? Polarity::Cofinite : Polarity::Finite, std::move(support)));
        } else {
          TupleSet tuples;
          std::uint64_t count = pick(4);
          for (std::uint64_t i = 0; i < count; ++i) {
            Tuple t;
            for (std::size_t j = 0; j < d.arity; ++j) t.push_back(Ordinal::finite(pick(bound)));
            tuples.insert(std::move(t));
          }
          s.set_nary(d.name, std::move(tuples));
        }
        break;
      case SymbolKind::Function: {
        if (!finite) throw Error(ErrorCode::Unrepresentable, "function over infinite kappa", d.name);
        TupleSet graph;
        std::vector<std::uint64_t> idx(d.arity, 0);
        while (true) {
          Tuple row;
          for (auto v : idx) row.push_back(Ordinal::finite(v));
          row.push_back(Ordinal::finite(pick(bound)));
          graph.insert(std::move(row));
          std::size_t i = d.arity;
          bool done = true;
          while (i > 0) {
            --i;
            if (++idx[i] < bound) {
              done = false;
              break;
            }
            idx[i] = 0;
          }
          if (done) break;
        }
        s.set_nary(d.name, std::move(graph));
        break;
      }
    }
  }
  return s;
}

std::vector<Violation> validate(const MachineSpec& spec, const ValidateOptions& options) {
  std::vector<Violation> out;
  for (Role r : {Role::Membership, Role::In, Role::Out}) {
    if (spec.sigma.name_of(r).empty()) {
      out.push_back({ViolationCode::MissingDistinguished, std::string(to_string(r)), kClauseRoles,
                     "no symbol with role " + std::string(to_string(r)), std::nullopt});
    }
  }
  if (spec.kappa.is_finite()) {
    if (!options.allow_finite_kappa) {
      out.push_back({ViolationCode::NonLimitKappa, "", kClauseKappa,
                     spec.kappa.to_string() + " is finite (surrogate kappa needs --allow-finite-kappa)", std::nullopt});
    }
  } else if (!spec.kappa.is_limit()) {
    out.push_back({ViolationCode::NonLimitKappa, "", kClauseKappa, spec.kappa.to_string() + " is a successor",
                   std::nullopt});
  }
  for (const auto& [name, value] : spec.params) {
    const auto* d = spec.sigma.find(name);
    if (!d || d->kind != SymbolKind::Constant) {
      out.push_back({ViolationCode::BadConstraint, name, kClauseSchema, "parameters must be constants", std::nullopt});
    }
  }
  for (const auto& [name, set] : spec.fixed_sets) {
    if (!spec.sigma.contains(name)) {
      out.push_back({ViolationCode::BadConstraint, name, kClauseSchema, "constraint for undeclared symbol",
                     std::nullopt});
    }
  }
  for (const auto& v : check_tci_schema(spec.tci())) {
    out.push_back({ViolationCode::BadConstraint, v.symbol, kClauseSchema, v.detail, std::nullopt});
  }
  auto bounded = check_bounded(spec);
  out.insert(out.end(), bounded.begin(), bounded.end());
  auto simple = check_simple(spec);
  out.insert(out.end(), simple.begin(), simple.end());
  if (!out.empty()) return out;

  const bool executable = spec.kappa.is_finite() || spec.kappa == Ordinal::omega();
  if (!executable) return out;
  const Tci tci = spec.tci();
  try {
    State loaded = load_state(spec, OrdinalSet::empty());
    if (auto check = models_tci(loaded, tci); !check) {
      const auto& r = check.reasons.front();
      out.push_back({ViolationCode::D6Violation, r.symbol, kClauseLoad, std::string(to_string(r.code)) + " " + r.detail,
                     loaded.to_string()});
    }
  } catch (const Error& e) {
    out.push_back({ViolationCode::D6Violation, e.symbol(), kClauseLoad, e.what(), std::nullopt});
  }
  for (std::size_t i = 0; i < options.samples && out.size() < 3; ++i) {
    State s;
    try {
      s = random_state(spec, options.seed + i);
    } catch (const Error&) {
      break;  // no representable random states for this signature
    }
    try {
      State next = successor(spec, s);
      if (auto check = models_tci(next, tci); !check) {
        const auto& r = check.reasons.front();
        out.push_back({ViolationCode::D6Violation, r.symbol, kClauseUnique,
                       "successor violates constraint: " + std::string(to_string(r.code)) + " " + r.detail,
                       s.to_string()});
      }
    } catch (const Error& e) {
      out.push_back({ViolationCode::D6Violation, e.symbol(), kClauseUnique, e.what(), s.to_string()});
    }
  }
  return out;
}

ValidatedMachine check_machine(const MachineSpec& spec, const ValidateOptions& options) {
  auto violations = validate(spec, options);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return {spec, assemble_tau(spec), assemble_defaults(spec), spec.tci()};
}

}  // namespace gseq
