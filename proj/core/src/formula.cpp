#include "gseq/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace gseq {

namespace {

using NodePtr = std::shared_ptr<const FormulaNode>;

void term_vars(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    if (std::find(out.begin(), out.end(), t.var) == out.end()) out.push_back(t.var);
  }
  for (const auto& a : t.args) term_vars(a, out);
}

bool term_mentions(const Term& t, const std::string& var) {
  if (t.kind == Term::Kind::Var) return t.var == var;
  return std::any_of(t.args.begin(), t.args.end(), [&](const Term& a) { return term_mentions(a, var); });
}

Term term_subst(const Term& t, const std::string& var, const Term& value) {
  if (t.kind == Term::Kind::Var) return t.var == var ? value : t;
  if (t.kind != Term::Kind::Func) return t;
  Term out = t;
  for (auto& a : out.args) a = term_subst(a, var, value);
  return out;
}

void collect_names(const Formula& f, std::unordered_set<std::string>& out);

void collect_term_names(const Term& t, std::unordered_set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.var);
  if (t.kind == Term::Kind::Const || t.kind == Term::Kind::Func) out.insert(t.symbol.name);
  for (const auto& a : t.args) collect_term_names(a, out);
}

void collect_names(const Formula& f, std::unordered_set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Apply: out.insert(f.relation().name); [[fallthrough]];
    case Formula::Kind::Equal:
      for (const auto& t : f.terms()) collect_term_names(t, out);
      break;
    case Formula::Kind::Not: collect_names(f.left(), out); break;
    case Formula::Kind::And:
      collect_names(f.left(), out);
      collect_names(f.right(), out);
      break;
    case Formula::Kind::Exists:
      out.insert(f.var());
      collect_names(f.left(), out);
      break;
  }
}

void free_vars_rec(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Equal:
    case Formula::Kind::Apply: {
      std::vector<std::string> vs;
      for (const auto& t : f.terms()) term_vars(t, vs);
      for (auto& v : vs) {
        if (std::find(bound.begin(), bound.end(), v) != bound.end()) continue;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
      break;
    }
    case Formula::Kind::Not: free_vars_rec(f.left(), bound, out); break;
    case Formula::Kind::And:
      free_vars_rec(f.left(), bound, out);
      free_vars_rec(f.right(), bound, out);
      break;
    case Formula::Kind::Exists:
      bound.push_back(f.var());
      free_vars_rec(f.left(), bound, out);
      bound.pop_back();
      break;
  }
}

bool terms_equal(const std::vector<Term>& a, const std::vector<Term>& b) { return a == b; }

bool nodes_equal(const FormulaNode* a, const FormulaNode* b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaNode::Kind::Equal: return terms_equal(a->terms, b->terms);
    case FormulaNode::Kind::Apply: return a->relation == b->relation && terms_equal(a->terms, b->terms);
    case FormulaNode::Kind::Not: return nodes_equal(a->left.get(), b->left.get());
    case FormulaNode::Kind::And:
      return nodes_equal(a->left.get(), b->left.get()) && nodes_equal(a->right.get(), b->right.get());
    case FormulaNode::Kind::Exists: return a->var == b->var && nodes_equal(a->left.get(), b->left.get());
  }
  return false;
}

Term map_term(const Term& t, const std::function<SymbolRef(const SymbolRef&)>& fn) {
  Term out = t;
  if (t.kind == Term::Kind::Const || t.kind == Term::Kind::Func) out.symbol = fn(t.symbol);
  for (auto& a : out.args) a = map_term(a, fn);
  return out;
}

void term_symbols(const Term& t, std::set<SymbolRef>& out) {
  if (t.kind == Term::Kind::Const || t.kind == Term::Kind::Func) out.insert(t.symbol);
  for (const auto& a : t.args) term_symbols(a, out);
}

void term_literals(const Term& t, std::set<Ordinal>& out) {
  if (t.kind == Term::Kind::Literal) out.insert(t.literal);
  for (const auto& a : t.args) term_literals(a, out);
}

// Innermost function application in a term, if any.
const Term* innermost_func(const Term& t) {
  for (const auto& a : t.args) {
    if (const Term* inner = innermost_func(a)) return inner;
  }
  return t.kind == Term::Kind::Func ? &t : nullptr;
}

Term replace_subterm(const Term& t, const Term& target, const Term& with) {
  if (t == target) return with;
  Term out = t;
  for (auto& a : out.args) a = replace_subterm(a, target, with);
  return out;
}

}  // namespace

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::Var;
  t.var = std::move(name);
  return t;
}

Term Term::constant(std::string name, Copy copy) {
  Term t;
  t.kind = Kind::Const;
  t.symbol = {std::move(name), copy};
  return t;
}

Term Term::function(std::string name, Copy copy, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Func;
  t.symbol = {std::move(name), copy};
  t.args = std::move(args);
  return t;
}

Term Term::lit(Ordinal value) {
  Term t;
  t.kind = Kind::Literal;
  t.literal = std::move(value);
  return t;
}

Formula::Formula() : Formula(equal(Term::lit(0), Term::lit(0))) {}

Formula Formula::equal(Term a, Term b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Equal;
  n->terms = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::apply(std::string relation, Copy copy, std::vector<Term> args) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Apply;
  n->relation = {std::move(relation), copy};
  n->terms = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::negate(Formula f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Not;
  n->left = std::move(f.node_);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::And;
  n->left = std::move(a.node_);
  n->right = std::move(b.node_);
  return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Formula f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Exists;
  n->var = std::move(var);
  n->left = std::move(f.node_);
  return Formula(std::move(n));
}

Formula Formula::truth() { return equal(Term::lit(0), Term::lit(0)); }
Formula Formula::falsity() { return negate(truth()); }

Formula Formula::disj(Formula a, Formula b) { return negate(conj(negate(std::move(a)), negate(std::move(b)))); }

Formula Formula::implies(Formula a, Formula b) { return negate(conj(std::move(a), negate(std::move(b)))); }

Formula Formula::iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

Formula Formula::forall(std::string var, Formula f) { return negate(exists(std::move(var), negate(std::move(f)))); }

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth();
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return falsity();
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = disj(out, parts[i]);
  return out;
}

bool operator==(const Formula& a, const Formula& b) { return nodes_equal(a.node(), b.node()); }

std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

Formula substitute(const Formula& f, const std::string& var, const Ordinal& value) {
  return substitute_term(f, var, Term::lit(value));
}

Formula substitute_term(const Formula& f, const std::string& var, const Term& value) {
  switch (f.kind()) {
    case Formula::Kind::Equal: {
      const auto& t = f.terms();
      if (!term_mentions(t[0], var) && !term_mentions(t[1], var)) return f;
      return Formula::equal(term_subst(t[0], var, value), term_subst(t[1], var, value));
    }
    case Formula::Kind::Apply: {
      const auto& t = f.terms();
      if (std::none_of(t.begin(), t.end(), [&](const Term& a) { return term_mentions(a, var); })) return f;
      std::vector<Term> args;
      for (const auto& a : t) args.push_back(term_subst(a, var, value));
      return Formula::apply(f.relation().name, f.relation().copy, std::move(args));
    }
    case Formula::Kind::Not: {
      auto l = substitute_term(f.left(), var, value);
      return l.node() == f.left().node() ? f : Formula::negate(l);
    }
    case Formula::Kind::And: {
      auto l = substitute_term(f.left(), var, value);
      auto r = substitute_term(f.right(), var, value);
      if (l.node() == f.left().node() && r.node() == f.right().node()) return f;
      return Formula::conj(l, r);
    }
    case Formula::Kind::Exists: {
      if (f.var() == var) return f;
      auto fv = free_vars(f.left());
      if (std::find(fv.begin(), fv.end(), var) == fv.end()) return f;
      if (term_mentions(value, f.var())) {
        Formula vf = Formula::equal(value, value);
        auto z = fresh_var({f, vf}, f.var());
        auto body = rename_free(f.left(), f.var(), z);
        return Formula::exists(z, substitute_term(body, var, value));
      }
      return Formula::exists(f.var(), substitute_term(f.left(), var, value));
    }
  }
  return f;
}

Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
  if (from == to) return f;
  return substitute_term(f, from, Term::variable(to));
}

std::size_t quantifier_rank(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Equal:
    case Formula::Kind::Apply: return 0;
    case Formula::Kind::Not: return quantifier_rank(f.left());
    case Formula::Kind::And: return std::max(quantifier_rank(f.left()), quantifier_rank(f.right()));
    case Formula::Kind::Exists: return 1 + quantifier_rank(f.left());
  }
  return 0;
}

std::set<Ordinal> support_constants(const Formula& f) {
  std::set<Ordinal> out;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    switch (g.kind()) {
      case Formula::Kind::Equal:
      case Formula::Kind::Apply:
        for (const auto& t : g.terms()) term_literals(t, out);
        break;
      case Formula::Kind::Not:
      case Formula::Kind::Exists: rec(g.left()); break;
      case Formula::Kind::And:
        rec(g.left());
        rec(g.right());
        break;
    }
  };
  rec(f);
  return out;
}

std::size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Equal:
    case Formula::Kind::Apply: return 1;
    case Formula::Kind::Not:
    case Formula::Kind::Exists: return 1 + formula_size(f.left());
    case Formula::Kind::And: return 1 + formula_size(f.left()) + formula_size(f.right());
  }
  return 1;
}

std::set<SymbolRef> symbols_used(const Formula& f) {
  std::set<SymbolRef> out;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    switch (g.kind()) {
      case Formula::Kind::Apply: out.insert(g.relation()); [[fallthrough]];
      case Formula::Kind::Equal:
        for (const auto& t : g.terms()) term_symbols(t, out);
        break;
      case Formula::Kind::Not:
      case Formula::Kind::Exists: rec(g.left()); break;
      case Formula::Kind::And:
        rec(g.left());
        rec(g.right());
        break;
    }
  };
  rec(f);
  return out;
}

Formula map_symbols(const Formula& f, const std::function<SymbolRef(const SymbolRef&)>& fn) {
  switch (f.kind()) {
    case Formula::Kind::Equal:
      return Formula::equal(map_term(f.terms()[0], fn), map_term(f.terms()[1], fn));
    case Formula::Kind::Apply: {
      std::vector<Term> args;
      for (const auto& t : f.terms()) args.push_back(map_term(t, fn));
      auto r = fn(f.relation());
      return Formula::apply(r.name, r.copy, std::move(args));
    }
    case Formula::Kind::Not: return Formula::negate(map_symbols(f.left(), fn));
    case Formula::Kind::And: return Formula::conj(map_symbols(f.left(), fn), map_symbols(f.right(), fn));
    case Formula::Kind::Exists: return Formula::exists(f.var(), map_symbols(f.left(), fn));
  }
  return f;
}

Formula with_copy(const Formula& f, Copy copy) {
  return map_symbols(f, [copy](const SymbolRef& s) { return SymbolRef{s.name, copy}; });
}

Formula replace_atoms(const Formula& f, const SymbolRef& relation,
                      const std::function<Formula(const std::vector<Term>&)>& fn) {
  switch (f.kind()) {
    case Formula::Kind::Equal: return f;
    case Formula::Kind::Apply: return f.relation() == relation ? fn(f.terms()) : f;
    case Formula::Kind::Not: return Formula::negate(replace_atoms(f.left(), relation, fn));
    case Formula::Kind::And:
      return Formula::conj(replace_atoms(f.left(), relation, fn), replace_atoms(f.right(), relation, fn));
    case Formula::Kind::Exists: return Formula::exists(f.var(), replace_atoms(f.left(), relation, fn));
  }
  return f;
}

Formula relativize(const Formula& f, const std::function<Formula(const std::string&)>& bound) {
  switch (f.kind()) {
    case Formula::Kind::Equal:
    case Formula::Kind::Apply: return f;
    case Formula::Kind::Not: return Formula::negate(relativize(f.left(), bound));
    case Formula::Kind::And: return Formula::conj(relativize(f.left(), bound), relativize(f.right(), bound));
    case Formula::Kind::Exists:
      return Formula::exists(f.var(), Formula::conj(bound(f.var()), relativize(f.left(), bound)));
  }
  return f;
}

Formula desugar_functions(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Equal:
    case Formula::Kind::Apply: {
      const Term* target = nullptr;
      for (const auto& t : f.terms()) {
        if ((target = innermost_func(t))) break;
      }
      if (!target) return f;
      Term app = *target;
      auto z = fresh_var({f}, "z");
      std::vector<Term> replaced;
      for (const auto& t : f.terms()) replaced.push_back(replace_subterm(t, app, Term::variable(z)));
      Formula atom = f.kind() == Formula::Kind::Equal
                         ? Formula::equal(replaced[0], replaced[1])
                         : Formula::apply(f.relation().name, f.relation().copy, replaced);
      auto graph_args = app.args;
      graph_args.push_back(Term::variable(z));
      return Formula::exists(z, Formula::conj(Formula::apply(app.symbol.name, app.symbol.copy, graph_args),
                                              desugar_functions(atom)));
    }
    case Formula::Kind::Not: return Formula::negate(desugar_functions(f.left()));
    case Formula::Kind::And: return Formula::conj(desugar_functions(f.left()), desugar_functions(f.right()));
    case Formula::Kind::Exists: return Formula::exists(f.var(), desugar_functions(f.left()));
  }
  return f;
}

std::string fresh_var(const std::vector<Formula>& avoid, const std::string& hint) {
  std::unordered_set<std::string> used;
  for (const auto& f : avoid) collect_names(f, used);
  std::string base = hint.empty() ? "v" : hint;
  while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
  if (base.empty() || base == "w") base = "v";
  if (!used.count(base)) return base;
  for (std::size_t i = 1;; ++i) {
    auto name = base + std::to_string(i);
    if (!used.count(name)) return name;
  }
}

}  // namespace gseq
