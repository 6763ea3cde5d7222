#include "gseq/bep.hpp"

#include <map>

#include "gseq/printer.hpp"

namespace gseq {

namespace {

// Relations are encoded as pseudo function terms over the relation symbol; the
// value is 1 if the tuple is in the relation and 0 otherwise.
Ordinal term_value(const Term& t, const State& s, const Signature& sigma) {
  switch (t.kind) {
    case Term::Kind::Const: return s.constant(t.symbol.name);
    case Term::Kind::Literal: return t.literal;
    case Term::Kind::Var: return Ordinal{};
    case Term::Kind::Func: {
      Tuple args;
      for (const auto& a : t.args) args.push_back(term_value(a, s, sigma));
      const auto& d = sigma.at(t.symbol.name);
      if (d.kind == SymbolKind::Function) return s.apply_function(t.symbol.name, args);
      if (d.role == Role::Membership) return Ordinal::finite(args[0] < args[1] ? 1 : 0);
      if (d.arity == 1) return Ordinal::finite(s.unary(t.symbol.name).contains(args[0]) ? 1 : 0);
      return Ordinal::finite(s.nary(t.symbol.name).count(args) ? 1 : 0);
    }
  }
  return Ordinal{};
}

void combos(const std::vector<Term>& pool, std::size_t arity, std::vector<Term>& current,
            const std::function<void(const std::vector<Term>&)>& fn) {
  if (current.size() == arity) {
    fn(current);
    return;
  }
  for (const auto& t : pool) {
    current.push_back(t);
    combos(pool, arity, current, fn);
    current.pop_back();
  }
}

}  // namespace

std::vector<Term> ground_terms(const Signature& sigma, std::size_t depth) {
  std::vector<Term> value_terms;  // terms denoting elements
  for (const auto& d : sigma.decls()) {
    if (d.kind == SymbolKind::Constant) value_terms.push_back(Term::constant(d.name));
  }
  std::vector<Term> all = value_terms;
  std::vector<Term> level = value_terms;
  // Each round applies every function and relation to terms from the pool.
  for (std::size_t round = 1; round < depth && !value_terms.empty(); ++round) {
    std::vector<Term> fresh;
    for (const auto& d : sigma.decls()) {
      if (d.kind == SymbolKind::Constant) continue;
      std::vector<Term> current;
      combos(value_terms, d.arity, current, [&](const std::vector<Term>& args) {
        bool uses_new = std::any_of(args.begin(), args.end(), [&](const Term& a) {
          return std::find(level.begin(), level.end(), a) != level.end();
        });
        if (!uses_new) return;
        fresh.push_back(Term::function(d.name, Copy::None, args));
      });
    }
    level.clear();
    for (auto& t : fresh) {
      all.push_back(t);
      const auto& d = sigma.at(t.symbol.name);
      // Relation values are 0/1 and do not feed further applications.
      if (d.kind == SymbolKind::Function) {
        value_terms.push_back(t);
        level.push_back(t);
      }
    }
    if (level.empty()) break;
  }
  return all;
}

BepReport diagnose_bep(const ValidatedMachine& m, const std::vector<State>& sample, std::size_t depth) {
  BepReport report;
  report.depth = depth;
  report.states = sample.size();
  auto terms = ground_terms(m.spec.sigma, depth);
  report.term_count = terms.size();
  for (const auto& t : terms) report.terms.push_back(to_text(t));
  if (sample.empty()) return report;

  std::map<std::vector<Ordinal>, std::size_t> first_with;
  std::vector<Delta> deltas;
  report.constant_delta = true;
  report.verdict = BepReport::Verdict::Satisfied;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const State& s = sample[i];
    deltas.push_back(state_delta(s, successor(m.spec, s), m.spec.sigma));
    if (!(deltas[i] == deltas.front())) report.constant_delta = false;
    std::vector<Ordinal> key;
    for (const auto& t : terms) key.push_back(term_value(t, s, m.spec.sigma));
    auto [it, inserted] = first_with.emplace(std::move(key), i);
    if (!inserted && !report.witness && !(deltas[it->second] == deltas[i])) {
      report.verdict = BepReport::Verdict::NotFoundWithinBound;
      report.witness = BepReport::Witness{sample[it->second], s, deltas[it->second], deltas[i]};
    }
  }
  return report;
}

std::string BepReport::to_string() const {
  std::string out;
  switch (verdict) {
    case Verdict::Vacuous: out = "vacuous (empty sample)"; break;
    case Verdict::Satisfied: out = constant_delta ? "satisfied (delta constant on sample)" : "satisfied on sample"; break;
    case Verdict::NotFoundWithinBound: out = "no separating term set within depth " + std::to_string(depth); break;
  }
  out += "; " + std::to_string(term_count) + " ground terms, " + std::to_string(states) + " states";
  if (witness) {
    out += "\n  s0: " + witness->s0.to_string() + "\n  s1: " + witness->s1.to_string() +
           "\n  delta(s0): " + delta_to_string(witness->delta0) + "\n  delta(s1): " + delta_to_string(witness->delta1);
  }
  return out;
}

}  // namespace gseq
