#include "gseq/transforms.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gseq/error.hpp"

namespace gseq {

namespace {

using Cases = std::vector<std::pair<Formula, Formula>>;

Term k0(const std::string& name) { return Term::constant(name, Copy::Zero); }
Term var(const std::string& name) { return Term::variable(name); }
Term lit(std::uint64_t v) { return Term::lit(v); }
Formula eq(Term a, Term b) { return Formula::equal(std::move(a), std::move(b)); }
Formula no(Formula f) { return Formula::negate(std::move(f)); }
Formula all(const std::vector<Formula>& parts) { return Formula::conj_all(parts); }
Formula any(const std::vector<Formula>& parts) { return Formula::disj_all(parts); }
Formula is(const std::string& constant, std::uint64_t v) { return eq(k0(constant), lit(v)); }

std::vector<Term> var_terms(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(var(n));
  return out;
}

// First name in hint, hint0, hint1, ... that sigma does not use.
std::string fresh_symbol(const Signature& sigma, const std::string& hint) {
  if (!sigma.contains(hint)) return hint;
  for (std::size_t i = 0;; ++i) {
    std::string name = hint + std::to_string(i);
    if (!sigma.contains(name)) return name;
  }
}

std::string pick_var(const std::vector<std::string>& taken, const std::string& hint) {
  std::string v = hint;
  for (std::size_t i = 0; std::find(taken.begin(), taken.end(), v) != taken.end(); ++i) v = hint + std::to_string(i);
  return v;
}

std::vector<std::string> term_vars(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) {
    if (t.kind == Term::Kind::Var) out.push_back(t.var);
  }
  return out;
}

class OrderFormulas {
 public:
  explicit OrderFormulas(std::string membership) : mem_(std::move(membership)) {}

  Formula lt(Term a, Term b) const { return Formula::apply(mem_, Copy::Zero, {std::move(a), std::move(b)}); }

  // b is the immediate successor of a.
  Formula succ(const Term& a, const Term& b) const {
    std::string z = pick_var(term_vars({a, b}), "z");
    return Formula::conj(lt(a, b), no(Formula::exists(z, Formula::conj(lt(a, var(z)), lt(var(z), b)))));
  }

  // x = a + 1, or x = a when a is the largest element.
  Formula succ_clamped(const Term& a, const Term& x) const {
    std::string z = pick_var(term_vars({a, x}), "z");
    return Formula::disj(succ(a, x), Formula::conj(no(Formula::exists(z, lt(a, var(z)))), eq(x, a)));
  }

 private:
  std::string mem_;
};

// Simultaneous renaming of w's parameters to `to`.
Formula rebind(const Witness& w, const std::vector<std::string>& to) {
  if (w.params == to) return w.body;
  if (w.params.size() != to.size()) throw Error(ErrorCode::ArityMismatch, "witness parameter count differs");
  Formula f = w.body;
  std::vector<Formula> avoid{f};
  std::vector<std::string> tmp;
  for (std::size_t i = 0; i < to.size(); ++i) {
    std::string t = fresh_var(avoid, "r");
    avoid.push_back(Formula::equal(var(t), var(t)));
    tmp.push_back(t);
    f = rename_free(f, w.params[i], t);
  }
  for (std::size_t i = 0; i < to.size(); ++i) f = rename_free(f, tmp[i], to[i]);
  return f;
}

Formula unchanged(const SymbolDecl& d, const std::vector<std::string>& params) {
  if (d.kind == SymbolKind::Constant) return eq(var(params.at(0)), k0(d.name));
  return Formula::apply(d.name, Copy::Zero, var_terms(params));
}

// Body whose value follows the first matching guard; otherwise unchanged.
// Guards must be pairwise exclusive.
Formula guarded(const Cases& cases, const Formula& otherwise) {
  std::vector<Formula> parts, guards;
  for (const auto& [g, v] : cases) {
    parts.push_back(Formula::conj(g, v));
    guards.push_back(g);
  }
  parts.push_back(Formula::conj(no(any(guards)), otherwise));
  return any(parts);
}

std::vector<std::string> standard_params(const SymbolDecl& d) {
  std::size_t n = expected_params(d);
  if (n == 1) return {"x"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

Formula empty_value(const SymbolDecl& d, const std::vector<std::string>& params) {
  if (d.kind == SymbolKind::Relation) return no(eq(var(params[0]), var(params[0])));
  return eq(var(params.back()), lit(0));  // constants and function values
}

std::function<SymbolRef(const SymbolRef&)> renamer(const std::map<std::string, std::string>& names) {
  return [names](const SymbolRef& r) {
    auto it = names.find(r.name);
    return it == names.end() ? r : SymbolRef{it->second, r.copy};
  };
}

Witness renamed(const Witness& w, const std::map<std::string, std::string>& names) {
  return {w.params, map_symbols(w.body, renamer(names))};
}

const Witness& tau_of(const MachineSpec& m, const std::string& name) {
  auto it = m.tau.find(name);
  if (it == m.tau.end()) throw Error(ErrorCode::Validation, "no transition witness", name);
  return it->second;
}

// Default witness body for a symbol of m, read over copy-0 symbols, with
// `params` free. Input and output tapes start as given / empty; parameters
// keep their value.
Formula initial_value(const MachineSpec& m, const SymbolDecl& d, const std::vector<std::string>& params,
                      const std::map<std::string, std::string>& names) {
  auto it = m.defaults.find(d.name);
  if (it != m.defaults.end()) return with_copy(map_symbols(rebind(it->second, params), renamer(names)), Copy::Zero);
  if (m.params.count(d.name)) return unchanged({names.at(d.name), d.kind, d.arity, Role::None}, params);
  return empty_value(d, params);
}

}  // namespace

Formula stall_sentence(const MachineSpec& m) {
  std::vector<Formula> parts;
  for (const auto& d : m.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    parts.push_back(witness_clause(d, tau_of(m, d.name), Copy::Zero));
  }
  return all(parts);
}

MachineSpec compose(const MachineSpec& m1, const MachineSpec& m2) {
  if (!(m1.kappa == m2.kappa)) {
    throw Error(ErrorCode::KappaMismatch,
                "cannot compose machines over " + m1.kappa.to_string() + " and " + m2.kappa.to_string());
  }
  const std::string mem = m1.membership(), in = m1.in(), out = m1.out();
  auto names_for = [&](const MachineSpec& m, const std::string& suffix) {
    std::map<std::string, std::string> r;
    for (const auto& d : m.sigma.decls()) {
      switch (d.role) {
        case Role::Membership: r[d.name] = mem; break;
        case Role::In: r[d.name] = in; break;
        case Role::Out: r[d.name] = out; break;
        case Role::None: r[d.name] = d.name + suffix; break;
      }
    }
    return r;
  };
  auto n1 = names_for(m1, "_1");
  auto n2 = names_for(m2, "_2");

  MachineSpec c;
  c.name = m1.name + "_then_" + m2.name;
  c.kappa = m1.kappa;
  c.flavor = (m1.flavor == Flavor::GSeqAP || m2.flavor == Flavor::GSeqAP) ? Flavor::GSeqAP : Flavor::GSeqA;
  c.sigma.add({mem, SymbolKind::Relation, 2, Role::Membership});
  c.sigma.add({in, SymbolKind::Relation, 1, Role::In});
  c.sigma.add({out, SymbolKind::Relation, 1, Role::Out});
  for (int stage = 0; stage < 2; ++stage) {
    const MachineSpec* m = stage == 0 ? &m1 : &m2;
    const auto& names = stage == 0 ? n1 : n2;
    for (const auto& d : m->sigma.decls()) {
      if (d.role != Role::None) continue;
      c.sigma.add({names.at(d.name), d.kind, d.arity, Role::None});
      if (auto p = m->params.find(d.name); p != m->params.end()) c.params[names.at(d.name)] = p->second;
      if (auto s = m->fixed_sets.find(d.name); s != m->fixed_sets.end()) c.fixed_sets[names.at(d.name)] = s->second;
      if (auto w = m->defaults.find(d.name); w != m->defaults.end()) c.defaults[names.at(d.name)] = renamed(w->second, names);
    }
  }
  const std::string ph = fresh_symbol(c.sigma, "ph");
  c.sigma.add({ph, SymbolKind::Constant, 0, Role::None});
  c.defaults[ph] = {{"x"}, Formula::equal(var("x"), lit(0))};

  Formula stall1 = map_symbols(stall_sentence(m1), renamer(n1));
  Formula first = Formula::conj(is(ph, 0), no(stall1));
  Formula handoff = Formula::conj(is(ph, 0), stall1);
  Formula second = no(is(ph, 0));

  c.tau[ph] = {{"x"}, guarded({{handoff, eq(var("x"), lit(1))}}, eq(var("x"), k0(ph)))};
  for (const auto& d : c.sigma.decls()) {
    if (d.role != Role::In && d.role != Role::Out) continue;
    {
      const auto& d1 = m1.sigma.at(m1.sigma.name_of(d.role));
      const auto& d2 = m2.sigma.at(m2.sigma.name_of(d.role));
      Witness w1 = renamed(tau_of(m1, d1.name), n1);
      Witness w2 = renamed(tau_of(m2, d2.name), n2);
      const auto& x = w1.params;
      Formula at_handoff = d.role == Role::In ? Formula::apply(out, Copy::Zero, var_terms(x)) : empty_value(d, x);
      c.tau[d.name] = {x, guarded({{first, w1.body}, {handoff, at_handoff}, {second, rebind(w2, x)}}, w1.body)};
    }
  }
  // by stage, not address: compose(m, m) is legal
  for (int stage = 0; stage < 2; ++stage) {
    const MachineSpec* m = stage == 0 ? &m1 : &m2;
    const auto& names = stage == 0 ? n1 : n2;
    Formula active = stage == 0 ? first : second;
    for (const auto& d : m->sigma.decls()) {
      if (d.role != Role::None) continue;
      Witness w = renamed(tau_of(*m, d.name), names);
      const auto& nd = c.sigma.at(names.at(d.name));
      c.tau[nd.name] = {w.params, guarded({{active, w.body}}, unchanged(nd, w.params))};
    }
  }
  return c;
}

MachineSpec flip(const MachineSpec& m) {
  MachineSpec c = m;
  c.name = "flip_" + m.name;
  const std::string f = fresh_symbol(m.sigma, "f");
  c.sigma.add({f, SymbolKind::Constant, 0, Role::None});
  c.defaults[f] = {{"x"}, Formula::equal(var("x"), lit(0))};
  Formula stall = stall_sentence(m);
  Formula running = Formula::conj(is(f, 0), no(stall));
  Formula flipping = Formula::conj(is(f, 0), stall);
  c.tau[f] = {{"x"}, guarded({{flipping, eq(var("x"), lit(1))}}, eq(var("x"), k0(f)))};
  for (const auto& d : m.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    const Witness& w = tau_of(m, d.name);
    Cases cases{{running, w.body}};
    if (d.role == Role::Out) cases.push_back({flipping, no(unchanged(d, w.params))});
    c.tau[d.name] = {w.params, guarded(cases, unchanged(d, w.params))};
  }
  return c;
}

MachineSpec lift(const MachineSpec& m, const Ordinal& kappa2) {
  if (!(m.kappa < kappa2)) {
    throw Error(ErrorCode::BadLift, "lift needs kappa(m) = " + m.kappa.to_string() + " < " + kappa2.to_string());
  }
  OrderFormulas order(m.membership());
  MachineSpec c;
  c.name = "lift_" + m.name;
  c.kappa = kappa2;
  c.flavor = Flavor::GSeqAP;
  c.sigma = m.sigma;
  c.params = m.params;
  c.fixed_sets = m.fixed_sets;
  const std::string cc = fresh_symbol(c.sigma, "c");
  c.sigma.add({cc, SymbolKind::Constant, 0, Role::None});
  const std::string dd = fresh_symbol(c.sigma, "d");
  c.sigma.add({dd, SymbolKind::Constant, 0, Role::None});
  c.params[cc] = m.kappa;
  c.defaults[dd] = {{"x"}, Formula::equal(var("x"), lit(0))};
  c.tau[cc] = {{"x"}, eq(var("x"), k0(cc))};
  c.tau[dd] = {{"x"}, guarded({{is(dd, 0), eq(var("x"), lit(1))}}, eq(var("x"), k0(dd)))};

  auto below_c = [&](const std::vector<std::string>& vars) {
    std::vector<Formula> parts;
    for (const auto& v : vars) parts.push_back(order.lt(var(v), k0(cc)));
    return all(parts);
  };
  auto rel = [&](const Formula& f) { return relativize(f, [&](const std::string& y) { return order.lt(var(y), k0(cc)); }); };
  std::map<std::string, std::string> same;
  for (const auto& d : m.sigma.decls()) same[d.name] = d.name;

  for (const auto& d : m.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    const Witness& w = tau_of(m, d.name);
    const auto& x = w.params;
    Formula init;
    if (d.role == Role::In) {
      init = Formula::apply(d.name, Copy::Zero, var_terms(x));
    } else if (d.role == Role::Out) {
      init = empty_value(d, x);
    } else {
      init = rel(initial_value(m, d, x, same));
    }
    Formula step = rel(w.body);
    if (d.kind != SymbolKind::Relation) {
      // A value at or above c is replaced by 0, so the witness stays total
      // on states the lifted run never reaches.
      std::vector<std::string> args(x.begin(), x.end() - 1);
      const std::string& value = x.back();
      Formula body = all({below_c(x), any({all({is(dd, 0), init}), all({no(is(dd, 0)), step})})});
      std::string other = fresh_var({body}, "v");
      Formula none = no(Formula::exists(other, rename_free(body, value, other)));
      c.tau[d.name] = {x, any({body, all({none, eq(var(value), lit(0))})})};
    } else {
      Formula in_range = below_c(x);
      c.tau[d.name] = {x, any({all({is(dd, 0), in_range, init}), all({no(is(dd, 0)), in_range, step})})};
    }
    if (d.role == Role::None && !m.params.count(d.name)) {
      auto p = standard_params(d);
      c.defaults[d.name] = {p, empty_value(d, p)};
    }
  }
  return c;
}

MachineSpec dovetail(const MachineSpec& m) {
  const std::string mem = m.membership();
  OrderFormulas order(mem);
  MachineSpec c;
  c.name = "dovetail_" + m.name;
  c.kappa = m.kappa;
  c.flavor = m.flavor;
  c.sigma.add({mem, SymbolKind::Relation, 2, Role::Membership});
  c.sigma.add({m.in(), SymbolKind::Relation, 1, Role::In});
  c.sigma.add({m.out(), SymbolKind::Relation, 1, Role::Out});
  const std::string In = m.in(), Out = m.out();

  std::map<std::string, std::string> inner;
  for (const auto& d : m.sigma.decls()) inner[d.name] = d.role == Role::Membership ? mem : d.name + "_m";
  for (const auto& d : m.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    c.sigma.add({inner.at(d.name), d.kind, d.arity, Role::None});
    if (auto p = m.params.find(d.name); p != m.params.end()) c.params[inner.at(d.name)] = p->second;
  }
  const std::vector<std::string> counters{"c0", "c1", "c2", "d", "q", "o", "sq", "k", "wq"};
  for (const auto& name : counters) {
    if (c.sigma.contains(name)) throw Error(ErrorCode::Validation, "dovetail control symbol clashes", name);
    c.sigma.add({name, SymbolKind::Constant, 0, Role::None});
  }
  for (const char* name : {"R", "E"}) {
    if (c.sigma.contains(name)) throw Error(ErrorCode::Validation, "dovetail control symbol clashes", name);
    c.sigma.add({name, SymbolKind::Relation, 1, Role::None});
  }
  const std::string In_m = inner.at(In), Out_m = inner.at(Out);

  enum : std::uint64_t { kLoad = 0, kSim = 1, kAdvance = 2 };
  auto lt = [&](const std::string& a, const std::string& b) { return order.lt(k0(a), k0(b)); };
  const Term x = var("x");

  // Cases of the construction.
  Formula c1 = all({is("c0", 0), is("d", 0)});
  Formula c2 = all({no(is("c0", 0)), no(is("d", 0))});
  Formula c3 = all({is("c0", 0), no(is("d", 0))});

  // Square walker on index i: from sq = i^2 it reaches sq = (i+1)^2 in 2i+2
  // steps, then increments i.
  struct Walk {
    Formula a, a_end, b, b_end;
  };
  auto walk = [&](const std::string& i) {
    Formula w0 = is("wq", 0);
    Formula below = lt("k", i);
    return Walk{all({w0, below}), all({w0, no(below)}), all({no(w0), below}), all({no(w0), no(below)})};
  };

  // Case 1: encode the input as E = {pair(1, y) : y in I}, one index o at a time.
  Formula at_index = all({is("wq", 0), is("k", 0)});
  std::string y = "y";
  Formula encoded =
      no(Formula::exists(y, all({Formula::apply(In, Copy::Zero, {var(y)}), no(order.lt(var(y), k0("o")))})));
  Formula c1_finish = all({c1, at_index, encoded});
  Formula c1_walk = all({c1, no(all({at_index, encoded}))});
  Walk wo = walk("o");

  // Case 2: phases.
  Formula load = all({c2, is("q", kLoad)});
  Formula sim = all({c2, is("q", kSim)});
  Formula adv = all({c2, no(is("q", kLoad)), no(is("q", kSim))});
  Formula round_end = all({load, lt("c0", "c1")});
  Formula skip = all({load, no(lt("c0", "c1")), Formula::apply("R", Copy::Zero, {k0("c1")})});
  Formula start = all({load, no(lt("c0", "c1")), no(Formula::apply("R", Copy::Zero, {k0("c1")}))});
  Formula stall = map_symbols(stall_sentence(m), renamer(inner));
  Formula halted = all({sim, stall});
  Formula gave_up = all({sim, no(stall), no(lt("c2", "c0"))});
  Formula stepping = all({sim, no(stall), lt("c2", "c0")});
  Walk wb = walk("c1");

  auto set = [&](std::uint64_t v) { return eq(x, lit(v)); };
  auto inc = [&](const std::string& name) { return order.succ_clamped(k0(name), x); };
  auto constant = [&](const std::string& name, const Cases& cases) {
    c.tau[name] = {{"x"}, guarded(cases, eq(x, k0(name)))};
    c.defaults[name] = {{"x"}, Formula::equal(var("x"), lit(0))};
  };

  constant("c0", {{c1_finish, set(1)}, {round_end, inc("c0")}});
  constant("d", {{c1_finish, set(1)}});
  constant("c1", {{c1_finish, set(0)}, {round_end, set(0)}, {all({adv, wb.b_end}), inc("c1")}});
  constant("c2", {{c1_finish, set(0)}, {round_end, set(0)}, {start, set(0)}, {stepping, inc("c2")}});
  constant("q", {{c1_finish, set(kLoad)},
                 {round_end, set(kLoad)},
                 {skip, set(kAdvance)},
                 {start, set(kSim)},
                 {halted, set(kAdvance)},
                 {gave_up, set(kAdvance)},
                 {all({adv, wb.b_end}), set(kLoad)}});
  constant("o", {{all({c1_walk, wo.b_end}), inc("o")}});
  constant("sq", {{c1_finish, set(0)},
                  {round_end, set(0)},
                  {all({c1_walk, no(wo.a_end)}), inc("sq")},
                  {all({adv, no(wb.a_end)}), inc("sq")}});
  constant("k", {{c1_finish, set(0)},
                 {round_end, set(0)},
                 {all({c1_walk, any({wo.a, wo.b})}), inc("k")},
                 {all({c1_walk, any({wo.a_end, wo.b_end})}), set(0)},
                 {all({adv, any({wb.a, wb.b})}), inc("k")},
                 {all({adv, any({wb.a_end, wb.b_end})}), set(0)}});
  constant("wq", {{c1_finish, set(0)},
                  {round_end, set(0)},
                  {all({c1_walk, wo.a_end}), set(1)},
                  {all({c1_walk, wo.b_end}), set(0)},
                  {all({adv, wb.a_end}), set(1)},
                  {all({adv, wb.b_end}), set(0)}});

  // pair(1, o) is sq + 2 for o <= 1 and sq + 1 above.
  std::string s = "s";
  Formula plus1 = order.succ(k0("sq"), x);
  Formula plus2 = Formula::exists(s, all({order.succ(k0("sq"), var(s)), order.succ(var(s), x)}));
  Formula small = any({is("o", 0), is("o", 1)});
  Formula code = any({all({small, plus2}), all({no(small), plus1})});
  Formula E0 = Formula::apply("E", Copy::Zero, {x});
  c.tau["E"] = {{"x"},
                guarded({{all({c1_walk, at_index}),
                          any({E0, all({Formula::apply(In, Copy::Zero, {k0("o")}), code})})}},
                        E0)};
  Formula R0 = Formula::apply("R", Copy::Zero, {x});
  c.tau["R"] = {{"x"}, guarded({{halted, any({R0, eq(x, k0("c1"))})}}, R0)};
  for (const char* rel : {"R", "E"}) c.defaults[rel] = {{"x"}, no(eq(var("x"), var("x")))};
  c.tau[In] = {{"x"}, Formula::apply(In, Copy::Zero, {x})};
  c.tau[Out] = {{"x"}, guarded({{c3, R0}}, Formula::apply(Out, Copy::Zero, {x}))};

  for (const auto& d : m.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    Witness w = renamed(tau_of(m, d.name), inner);
    SymbolDecl nd{inner.at(d.name), d.kind, d.arity, Role::None};
    Formula loaded;
    if (d.role == Role::In) {
      loaded = any({eq(var(w.params[0]), k0("sq")), Formula::apply("E", Copy::Zero, {var(w.params[0])})});
    } else if (d.role == Role::Out) {
      loaded = empty_value(nd, w.params);
    } else {
      loaded = initial_value(m, d, w.params, inner);
    }
    c.tau[nd.name] = {w.params, guarded({{start, loaded}, {stepping, w.body}}, unchanged(nd, w.params))};
    if (!m.params.count(d.name)) {
      if (auto def = m.defaults.find(d.name); def != m.defaults.end()) {
        c.defaults[nd.name] = renamed(def->second, inner);
      } else {
        auto p = standard_params(nd);
        c.defaults[nd.name] = {p, empty_value(nd, p)};
      }
    }
  }
  return c;
}

}  // namespace gseq
