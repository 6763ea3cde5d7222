#include "gseq/machine.hpp"

#include <algorithm>

#include "gseq/error.hpp"

namespace gseq {

namespace {

std::vector<Term> var_terms(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(Term::variable(n));
  return out;
}

Formula forall_all(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::forall(*it, body);
  return body;
}

// Constant / relation / function values from the witnesses, evaluated in `ev`.
void install(const SymbolDecl& d, const Witness& w, Evaluator& ev, const Ordinal& kappa, State& next,
             const std::string& clause) {
  switch (d.kind) {
    case SymbolKind::Constant: {
      OrdinalSet v = ev.defined_set(w.body, w.params.at(0)).normalized(kappa);
      if (!v.is_finite() || v.support().size() != 1) {
        throw Error(ErrorCode::D6Violation,
                    clause + " for constant " + d.name + " defines " + v.to_string() + ", not a single value", d.name);
      }
      next.set_constant(d.name, v.support().front());
      break;
    }
    case SymbolKind::Relation:
      if (d.arity == 1) {
        next.set_unary(d.name, ev.defined_set(w.body, w.params.at(0)));
      } else {
        next.set_nary(d.name, ev.defined_relation(w.body, w.params, d.name));
      }
      break;
    case SymbolKind::Function: {
      TupleSet graph = ev.defined_relation(w.body, w.params, d.name);
      if (!kappa.is_finite()) throw Error(ErrorCode::Unrepresentable, "function over infinite kappa", d.name);
      std::uint64_t n = kappa.finite_value();
      std::uint64_t expected = 1;
      for (std::size_t i = 0; i < d.arity; ++i) expected *= n;
      std::set<Tuple> args;
      for (const auto& row : graph) {
        if (!args.insert(Tuple(row.begin(), row.end() - 1)).second) {
          throw Error(ErrorCode::D6Violation, clause + " for function " + d.name + " is not functional", d.name);
        }
      }
      if (args.size() != expected) {
        throw Error(ErrorCode::D6Violation, clause + " for function " + d.name + " is not total", d.name);
      }
      next.set_nary(d.name, std::move(graph));
      break;
    }
  }
}

}  // namespace

EvalOptions MachineSpec::eval_options() const {
  EvalOptions o;
  auto m = membership();
  if (!m.empty()) o.membership = m;
  return o;
}

Tci MachineSpec::tci() const {
  Tci t = make_tci(sigma, kappa, flavor, params);
  for (const auto& [name, set] : fixed_sets) {
    if (!t.per_symbol.count(name)) continue;
    Constraint c;
    c.value = Constraint::Value::Set;
    c.mode = 1;
    c.set = set;
    t.per_symbol[name] = c;
  }
  return t;
}

std::size_t expected_params(const SymbolDecl& d) {
  switch (d.kind) {
    case SymbolKind::Constant: return 1;
    case SymbolKind::Relation: return d.arity;
    case SymbolKind::Function: return d.arity + 1;
  }
  return 0;
}

bool needs_default(const MachineSpec& spec, const SymbolDecl& d) {
  return d.role == Role::None && !spec.params.count(d.name);
}

Formula witness_clause(const SymbolDecl& d, const Witness& w, Copy copy) {
  switch (d.kind) {
    case SymbolKind::Constant: {
      const auto& y = w.params.at(0);
      return Formula::forall(y, Formula::iff(Formula::equal(Term::constant(d.name, copy), Term::variable(y)), w.body));
    }
    case SymbolKind::Relation:
      return forall_all(w.params, Formula::iff(Formula::apply(d.name, copy, var_terms(w.params)), w.body));
    case SymbolKind::Function: {
      std::vector<std::string> args(w.params.begin(), w.params.end() - 1);
      Term app = Term::function(d.name, copy, var_terms(args));
      return forall_all(w.params, Formula::iff(Formula::equal(app, Term::variable(w.params.back())), w.body));
    }
  }
  return Formula::truth();
}

BinaryFormula assemble_tau(const MachineSpec& spec) {
  std::vector<Formula> parts;
  for (const auto& d : spec.sigma.decls()) {
    if (d.role == Role::Membership) {
      Witness id{{"x", "y"}, Formula::apply(d.name, Copy::Zero, {Term::variable("x"), Term::variable("y")})};
      parts.push_back(witness_clause(d, id, Copy::One));
      continue;
    }
    auto it = spec.tau.find(d.name);
    if (it == spec.tau.end()) throw Error(ErrorCode::Validation, "no transition witness", d.name);
    parts.push_back(witness_clause(d, it->second, Copy::One));
  }
  return {Formula::conj_all(parts)};
}

Formula assemble_defaults(const MachineSpec& spec) {
  std::vector<Formula> parts;
  for (const auto& d : spec.sigma.decls()) {
    if (!needs_default(spec, d)) continue;
    auto it = spec.defaults.find(d.name);
    if (it == spec.defaults.end()) throw Error(ErrorCode::Validation, "no default witness", d.name);
    parts.push_back(witness_clause(d, it->second, Copy::None));
  }
  return Formula::conj_all(parts);
}

std::map<std::string, Witness> recover_witnesses(const Formula& assembled, const Signature& sigma, Copy copy) {
  std::vector<Formula> clauses;
  // conj_all nests to the left.
  Formula rest = assembled;
  auto is_clause = [](const Formula& f) {
    // A clause is a forall (Not Exists) or a bare iff (And of implications).
    return f.kind() == Formula::Kind::Not;
  };
  while (rest.kind() == Formula::Kind::And && is_clause(rest.right())) {
    clauses.push_back(rest.right());
    rest = rest.left();
  }
  clauses.push_back(rest);
  std::reverse(clauses.begin(), clauses.end());

  std::map<std::string, Witness> out;
  for (const auto& clause : clauses) {
    std::vector<std::string> vars;
    Formula f = clause;
    while (f.kind() == Formula::Kind::Not && f.left().kind() == Formula::Kind::Exists &&
           f.left().left().kind() == Formula::Kind::Not) {
      vars.push_back(f.left().var());
      f = f.left().left().left();
    }
    // iff(a, b) = And(Not(And(a, Not b)), Not(And(b, Not a)))
    if (f.kind() != Formula::Kind::And || f.left().kind() != Formula::Kind::Not ||
        f.left().left().kind() != Formula::Kind::And || f.left().left().right().kind() != Formula::Kind::Not) {
      throw Error(ErrorCode::Validation, "clause is not a biconditional");
    }
    Formula head = f.left().left().left();
    Formula body = f.left().left().right().left();
    if (!(Formula::iff(head, body) == f)) throw Error(ErrorCode::Validation, "clause is not a biconditional");
    std::string name;
    if (head.kind() == Formula::Kind::Apply && head.relation().copy == copy) {
      name = head.relation().name;
    } else if (head.kind() == Formula::Kind::Equal) {
      const Term& lhs = head.terms()[0];
      if (lhs.kind != Term::Kind::Const && lhs.kind != Term::Kind::Func) {
        throw Error(ErrorCode::Validation, "clause head is not a symbol");
      }
      name = lhs.symbol.name;
    } else {
      throw Error(ErrorCode::Validation, "clause head is not a symbol");
    }
    const SymbolDecl& d = sigma.at(name);
    if (d.role == Role::Membership) continue;
    if (vars.size() != expected_params(d)) throw Error(ErrorCode::ArityMismatch, "clause binds wrong count", name);
    out[name] = Witness{vars, body};
  }
  return out;
}

State successor(const MachineSpec& spec, const State& s) {
  Evaluator ev(s, EvalDomain::for_kappa(spec.kappa), spec.eval_options());
  State next(spec.kappa);
  for (const auto& d : spec.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    auto it = spec.tau.find(d.name);
    if (it == spec.tau.end()) throw Error(ErrorCode::Validation, "no transition witness", d.name);
    install(d, it->second, ev, spec.kappa, next, "transition witness");
  }
  return next;
}

State load_state(const MachineSpec& spec, const OrdinalSet& input) {
  State bare(spec.kappa);
  Evaluator ev(bare, EvalDomain::for_kappa(spec.kappa), spec.eval_options());
  State s(spec.kappa);
  for (const auto& d : spec.sigma.decls()) {
    switch (d.role) {
      case Role::Membership: continue;
      case Role::In: s.set_unary(d.name, input); continue;
      case Role::Out: s.set_unary(d.name, OrdinalSet::empty()); continue;
      case Role::None: break;
    }
    if (auto p = spec.params.find(d.name); p != spec.params.end()) {
      s.set_constant(d.name, p->second);
      continue;
    }
    auto it = spec.defaults.find(d.name);
    if (it == spec.defaults.end()) throw Error(ErrorCode::Validation, "no default witness", d.name);
    install(d, it->second, ev, spec.kappa, s, "default witness");
  }
  return s;
}

}  // namespace gseq
