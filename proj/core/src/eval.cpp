#include "gseq/eval.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>

#include "gseq/error.hpp"

namespace gseq {

namespace {

using Value = std::uint64_t;

struct SymData {
  enum class Kind { Membership, Unary, Nary, Const };
  Kind kind = Kind::Membership;
  bool cofinite = false;
  std::vector<Value> support;
  std::vector<std::vector<Value>> tuples;  // sorted
  Value value = 0;
  std::vector<Value> points;  // sorted, unique
};

struct CTerm {
  Term::Kind kind = Term::Kind::Var;
  int slot = -1;
  Value value = 0;
  int sym = -1;
  std::vector<CTerm> args;
};

using Points = std::shared_ptr<const std::vector<Value>>;

Points no_points() {
  static const Points empty = std::make_shared<const std::vector<Value>>();
  return empty;
}

Points merged(const Points& a, const Points& b) {
  if (b->empty() || a == b) return a;
  if (a->empty()) return b;
  if (std::includes(a->begin(), a->end(), b->begin(), b->end())) return a;
  if (std::includes(b->begin(), b->end(), a->begin(), a->end())) return b;
  auto out = std::make_shared<std::vector<Value>>();
  out->reserve(a->size() + b->size());
  std::set_union(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(*out));
  return out;
}

struct CNode {
  Formula::Kind kind = Formula::Kind::Equal;
  int sym = -1;
  std::vector<CTerm> terms;
  int slot = -1;
  int left = -1;
  int right = -1;
  int rank = 0;
  std::vector<int> free_slots;  // sorted
  std::shared_ptr<const std::vector<Value>> points = no_points();  // Omega mode only
  signed char memo = -1;
};

Value to_value(const Ordinal& o, const std::string& what) {
  if (!o.is_finite()) throw Error(ErrorCode::Unsupported, what + ": infinite value " + o.to_string());
  return o.finite_value();
}

void merge_slots(std::vector<int>& dst, const std::vector<int>& src) {
  std::vector<int> out;
  std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out));
  dst.swap(out);
}

bool term_closed(const CTerm& t) {
  if (t.kind == Term::Kind::Var) return false;
  return std::all_of(t.args.begin(), t.args.end(), term_closed);
}

Value pow2(int r) { return r >= 40 ? (Value{1} << 40) : (Value{1} << r); }

// Elements of [lo, hi) worth probing: everything if the gap is short,
// otherwise K from each end plus the midpoint.
void gap_candidates(Value lo, Value hi, Value k, std::vector<Value>& out) {
  if (hi <= lo) return;
  Value len = hi - lo;
  if (len <= 2 * k + 1) {
    for (Value v = lo; v < hi; ++v) out.push_back(v);
    return;
  }
  for (Value v = lo; v < lo + k; ++v) out.push_back(v);
  out.push_back(lo + len / 2);
  for (Value v = hi - k; v < hi; ++v) out.push_back(v);
}

}  // namespace

EvalDomain EvalDomain::for_kappa(const Ordinal& kappa) {
  if (kappa.is_finite()) return surrogate(kappa.finite_value());
  if (kappa == Ordinal::omega()) return omega();
  throw Error(ErrorCode::Unsupported, "cannot evaluate over kappa = " + kappa.to_string());
}

struct Evaluator::Impl {
  const State* states[2] = {nullptr, nullptr};
  EvalDomain dom;
  EvalOptions opt;

  std::map<std::pair<std::string, int>, int> sym_index;
  std::vector<SymData> syms;
  std::unordered_map<std::string, int> slot_of;
  std::vector<Value> env;
  std::vector<std::string> slot_name;
  std::unordered_map<const FormulaNode*, int> node_of;
  std::vector<CNode> nodes;
  std::vector<Formula> pinned;

  Impl(const State* s0, const State* s1, const EvalDomain& d, EvalOptions o) : dom(d), opt(std::move(o)) {
    states[0] = s0;
    states[1] = s1;
    for (const State* s : states) {
      if (!s) continue;
      if (dom.mode == EvalDomain::Mode::Omega && !(s->kappa() == Ordinal::omega())) {
        throw Error(ErrorCode::Unsupported, "Omega mode needs kappa = w, got " + s->kappa().to_string());
      }
    }
  }

  bool omega() const { return dom.mode == EvalDomain::Mode::Omega; }

  void check_domain(Value v, const std::string& what) const {
    if (!omega() && v >= dom.n) {
      throw Error(ErrorCode::OutOfDomain, what + " = " + std::to_string(v) + " outside surrogate domain of size " +
                                              std::to_string(dom.n));
    }
  }

  int symbol(const SymbolRef& ref) {
    int which = ref.copy == Copy::One ? 1 : 0;
    auto key = std::make_pair(ref.name, which);
    if (auto it = sym_index.find(key); it != sym_index.end()) return it->second;
    const State* s = states[which];
    if (!s) throw Error(ErrorCode::UnknownSymbol, "copy-1 symbol " + ref.name + " needs a second state", ref.name);
    SymData d;
    if (s->has_constant(ref.name)) {
      d.kind = SymData::Kind::Const;
      d.value = to_value(s->constant(ref.name), ref.name);
      check_domain(d.value, ref.name);
      d.points = {d.value};
    } else if (s->has_unary(ref.name)) {
      d.kind = SymData::Kind::Unary;
      const auto& set = s->unary(ref.name);
      d.cofinite = set.is_cofinite();
      for (const auto& a : set.support()) d.support.push_back(to_value(a, ref.name));
      d.points = d.support;
    } else if (s->has_nary(ref.name)) {
      d.kind = SymData::Kind::Nary;
      for (const auto& t : s->nary(ref.name)) {
        std::vector<Value> row;
        for (const auto& a : t) {
          row.push_back(to_value(a, ref.name));
          d.points.push_back(row.back());
        }
        d.tuples.push_back(std::move(row));
      }
      std::sort(d.tuples.begin(), d.tuples.end());
      std::sort(d.points.begin(), d.points.end());
      d.points.erase(std::unique(d.points.begin(), d.points.end()), d.points.end());
    } else if (ref.name == opt.membership) {
      d.kind = SymData::Kind::Membership;
    } else {
      throw Error(ErrorCode::UnknownSymbol, "state does not interpret " + ref.name, ref.name);
    }
    syms.push_back(std::move(d));
    int id = static_cast<int>(syms.size()) - 1;
    sym_index.emplace(std::move(key), id);
    return id;
  }

  int slot(const std::string& var) {
    auto [it, inserted] = slot_of.emplace(var, static_cast<int>(env.size()));
    if (inserted) {
      slot_name.push_back(var);
      env.push_back(0);
    }
    return it->second;
  }

  CTerm compile_term(const Term& t, std::vector<int>& free, std::vector<Value>& points) {
    CTerm c;
    c.kind = t.kind;
    switch (t.kind) {
      case Term::Kind::Var:
        c.slot = slot(t.var);
        free.push_back(c.slot);
        break;
      case Term::Kind::Literal:
        c.value = to_value(t.literal, "literal");
        check_domain(c.value, "literal");
        points.push_back(c.value);
        break;
      case Term::Kind::Const: {
        c.sym = symbol(t.symbol);
        if (syms[c.sym].kind != SymData::Kind::Const) {
          throw Error(ErrorCode::ArityMismatch, t.symbol.name + " is not a constant", t.symbol.name);
        }
        c.value = syms[c.sym].value;
        points.push_back(c.value);
        break;
      }
      case Term::Kind::Func: {
        c.sym = symbol(t.symbol);
        if (syms[c.sym].kind != SymData::Kind::Nary) {
          throw Error(ErrorCode::ArityMismatch, t.symbol.name + " is not a function graph", t.symbol.name);
        }
        for (const auto& a : t.args) c.args.push_back(compile_term(a, free, points));
        if (omega()) {
          const auto& p = syms[c.sym].points;
          points.insert(points.end(), p.begin(), p.end());
        }
        break;
      }
    }
    return c;
  }

  int compile(const Formula& f) {
    if (auto it = node_of.find(f.node()); it != node_of.end()) return it->second;
    CNode n;
    n.kind = f.kind();
    switch (f.kind()) {
      case Formula::Kind::Equal:
      case Formula::Kind::Apply: {
        std::vector<int> free;
        std::vector<Value> points;
        if (f.kind() == Formula::Kind::Apply) {
          n.sym = symbol(f.relation());
          const auto& d = syms[n.sym];
          if (d.kind == SymData::Kind::Const) {
            throw Error(ErrorCode::ArityMismatch, f.relation().name + " is a constant", f.relation().name);
          }
          std::size_t want = d.kind == SymData::Kind::Membership ? 2 : d.kind == SymData::Kind::Unary ? 1 : 0;
          if (d.kind == SymData::Kind::Nary && !d.tuples.empty()) want = d.tuples.front().size();
          if (want != 0 && want != f.terms().size()) {
            throw Error(ErrorCode::ArityMismatch, "wrong number of arguments for " + f.relation().name,
                        f.relation().name);
          }
          if (omega()) points = d.points;
        }
        for (const auto& t : f.terms()) n.terms.push_back(compile_term(t, free, points));
        std::sort(free.begin(), free.end());
        free.erase(std::unique(free.begin(), free.end()), free.end());
        n.free_slots = std::move(free);
        if (omega()) {
          std::sort(points.begin(), points.end());
          points.erase(std::unique(points.begin(), points.end()), points.end());
          n.points = std::make_shared<const std::vector<Value>>(std::move(points));
        }
        break;
      }
      case Formula::Kind::Not: {
        n.left = compile(f.left());
        const CNode& l = nodes[n.left];
        n.rank = l.rank;
        n.free_slots = l.free_slots;
        n.points = l.points;
        break;
      }
      case Formula::Kind::And: {
        n.left = compile(f.left());
        n.right = compile(f.right());
        const CNode& l = nodes[n.left];
        const CNode& r = nodes[n.right];
        n.rank = std::max(l.rank, r.rank);
        n.free_slots = l.free_slots;
        merge_slots(n.free_slots, r.free_slots);
        n.points = merged(l.points, r.points);
        break;
      }
      case Formula::Kind::Exists: {
        n.slot = slot(f.var());
        n.left = compile(f.left());
        const CNode& l = nodes[n.left];
        n.rank = l.rank + 1;
        for (int s : l.free_slots) {
          if (s != n.slot) n.free_slots.push_back(s);
        }
        n.points = l.points;
        break;
      }
    }
    nodes.push_back(std::move(n));
    int id = static_cast<int>(nodes.size()) - 1;
    node_of.emplace(f.node(), id);
    return id;
  }

  int root(const Formula& f) {
    pinned.push_back(f);
    return compile(f);
  }

  Value term(const CTerm& t) {
    switch (t.kind) {
      case Term::Kind::Var: return env[t.slot];
      case Term::Kind::Literal:
      case Term::Kind::Const: return t.value;
      case Term::Kind::Func: {
        std::vector<Value> args;
        args.reserve(t.args.size());
        for (const auto& a : t.args) args.push_back(term(a));
        const auto& tuples = syms[t.sym].tuples;
        auto it = std::lower_bound(tuples.begin(), tuples.end(), args);
        if (it != tuples.end() && it->size() == args.size() + 1 && std::equal(args.begin(), args.end(), it->begin())) {
          return it->back();
        }
        throw Error(ErrorCode::D6Violation, "function undefined at an argument");
      }
    }
    return 0;
  }

  bool atom(const CNode& n) {
    const SymData& d = syms[n.sym];
    switch (d.kind) {
      case SymData::Kind::Membership: return term(n.terms[0]) < term(n.terms[1]);
      case SymData::Kind::Unary: {
        bool in = std::binary_search(d.support.begin(), d.support.end(), term(n.terms[0]));
        return in != d.cofinite;
      }
      case SymData::Kind::Nary: {
        std::vector<Value> args;
        args.reserve(n.terms.size());
        for (const auto& t : n.terms) args.push_back(term(t));
        return std::binary_search(d.tuples.begin(), d.tuples.end(), args);
      }
      case SymData::Kind::Const: break;
    }
    return false;
  }

  void candidates(const CNode& n, std::vector<Value>& out) {
    out.clear();
    if (!omega()) {
      out.reserve(dom.n);
      for (Value v = 0; v < dom.n; ++v) out.push_back(v);
      return;
    }
    const std::vector<Value>* pts = n.points.get();
    std::vector<Value> extended;
    if (!n.free_slots.empty()) {
      extended = *pts;
      for (int s : n.free_slots) extended.push_back(env[s]);
      std::sort(extended.begin(), extended.end());
      extended.erase(std::unique(extended.begin(), extended.end()), extended.end());
      pts = &extended;
    }
    const std::vector<Value>& points = *pts;
    Value k = pow2(n.rank) * opt.probe_scale;
    Value lo = 0;
    for (Value p : points) {
      gap_candidates(lo, p, k, out);
      out.push_back(p);
      lo = p + 1;
    }
    for (Value v = lo; v <= lo + k; ++v) out.push_back(v);
  }

  bool eval(int i) {
    CNode& n = nodes[i];
    if (n.memo >= 0) return n.memo != 0;
    bool r = false;
    switch (n.kind) {
      case Formula::Kind::Equal: r = term(n.terms[0]) == term(n.terms[1]); break;
      case Formula::Kind::Apply: r = atom(n); break;
      case Formula::Kind::Not: r = !eval(n.left); break;
      case Formula::Kind::And: r = eval(n.left) && eval(n.right); break;
      case Formula::Kind::Exists: {
        std::vector<Value> cands;
        candidates(n, cands);
        int s = n.slot;
        Value saved = env[s];
        int left = n.left;
        for (Value c : cands) {
          env[s] = c;
          if (eval(left)) {
            r = true;
            break;
          }
        }
        env[s] = saved;
        break;
      }
    }
    CNode& again = nodes[i];
    if (again.free_slots.empty()) again.memo = r ? 1 : 0;
    return r;
  }

  bool eval_at(int i, int s, Value v) {
    env[s] = v;
    return eval(i);
  }

  // Pointwise evaluation of a subformula whose only free slot is s.
  OrdinalSet pointwise(int i, int s) {
    const CNode& n = nodes[i];
    const std::vector<Value>& points = *n.points;
    Value k = pow2(n.rank + 1) * opt.probe_scale;
    std::vector<Value> trues;
    std::vector<Value> falses;
    auto probe = [&](Value v) { (eval_at(i, s, v) ? trues : falses).push_back(v); };
    auto range = [&](Value a, Value b, bool value) {
      auto& dst = value ? trues : falses;
      for (Value v = a; v <= b; ++v) dst.push_back(v);
    };
    Value lo = 0;
    auto gap = [&](Value hi) {
      if (hi <= lo) return;
      Value len = hi - lo;
      if (len <= 2 * k + 3) {
        for (Value v = lo; v < hi; ++v) probe(v);
        return;
      }
      for (Value v = lo; v < lo + k; ++v) probe(v);
      for (Value v = hi - k; v < hi; ++v) probe(v);
      Value a = lo + k;
      Value b = hi - k - 1;
      bool mid = eval_at(i, s, a + (b - a) / 2);
      if (eval_at(i, s, a) != mid || eval_at(i, s, b) != mid) {
        throw Error(ErrorCode::ThresholdViolation, "non-constant truth value inside a long gap");
      }
      range(a, b, mid);
    };
    for (Value p : points) {
      gap(p);
      probe(p);
      lo = p + 1;
    }
    for (Value v = lo; v <= lo + k; ++v) probe(v);
    Value t = lo + k + 1;
    bool tail = eval_at(i, s, t);
    if (eval_at(i, s, t + k + 1) != tail || eval_at(i, s, 2 * t + 3 * k) != tail) {
      throw Error(ErrorCode::ThresholdViolation, "non-constant truth value in the tail");
    }
    std::vector<Ordinal> support;
    for (Value v : tail ? falses : trues) support.push_back(Ordinal::finite(v));
    return {tail ? Polarity::Cofinite : Polarity::Finite, std::move(support)};
  }

  OrdinalSet symbol_set(const SymData& d) const {
    std::vector<Ordinal> support;
    for (Value v : d.support) support.push_back(Ordinal::finite(v));
    return {d.cofinite ? Polarity::Cofinite : Polarity::Finite, std::move(support)};
  }

  static OrdinalSet below(Value v) {
    std::vector<Ordinal> support;
    for (Value a = 0; a < v; ++a) support.push_back(Ordinal::finite(a));
    return OrdinalSet::of(std::move(support));
  }

  bool has_slot(const CNode& n, int s) const {
    return std::binary_search(n.free_slots.begin(), n.free_slots.end(), s);
  }

  static bool is_var(const CTerm& t, int s) { return t.kind == Term::Kind::Var && t.slot == s; }

  OrdinalSet set_of(int i, int s) {
    const CNode& n = nodes[i];
    if (!has_slot(n, s)) return eval(i) ? OrdinalSet::full() : OrdinalSet::empty();
    switch (n.kind) {
      case Formula::Kind::Not: return set_of(n.left, s).complement();
      case Formula::Kind::And: {
        int l = n.left;
        int r = n.right;
        OrdinalSet a = set_of(l, s);
        if (a.is_empty()) return a;
        return a.intersect(set_of(r, s));
      }
      case Formula::Kind::Apply: {
        const SymData& d = syms[n.sym];
        if (d.kind == SymData::Kind::Unary && is_var(n.terms[0], s)) return symbol_set(d);
        if (d.kind == SymData::Kind::Membership) {
          const CTerm& a = n.terms[0];
          const CTerm& b = n.terms[1];
          if (is_var(a, s) && is_var(b, s)) return OrdinalSet::empty();
          if (is_var(a, s) && term_closed(b)) return below(term(b));
          if (is_var(b, s) && term_closed(a)) return below(term(a) + 1).complement();
        }
        break;
      }
      case Formula::Kind::Equal: {
        const CTerm& a = n.terms[0];
        const CTerm& b = n.terms[1];
        if (is_var(a, s) && is_var(b, s)) return OrdinalSet::full();
        if (is_var(a, s) && term_closed(b)) return OrdinalSet::of({Ordinal::finite(term(b))});
        if (is_var(b, s) && term_closed(a)) return OrdinalSet::of({Ordinal::finite(term(a))});
        break;
      }
      case Formula::Kind::Exists: break;
    }
    return pointwise(i, s);
  }

  // Compiles f and checks its free variables against `allowed`.
  int checked_root(const Formula& f, const std::vector<std::string>& allowed) {
    int r = root(f);
    for (int s : nodes[r].free_slots) {
      const std::string& v = slot_name[s];
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        throw Error(ErrorCode::NotClosed, "unexpected free variable " + v, v);
      }
    }
    return r;
  }
};

Evaluator::Evaluator(const State& s, const EvalDomain& dom, EvalOptions options)
    : impl_(std::make_unique<Impl>(&s, nullptr, dom, std::move(options))) {}

Evaluator::Evaluator(const State& s0, const State& s1, const EvalDomain& dom, EvalOptions options)
    : impl_(std::make_unique<Impl>(&s0, &s1, dom, std::move(options))) {
  if (!(s0.kappa() == s1.kappa())) throw Error(ErrorCode::KappaMismatch, "state pair over different kappa");
}

Evaluator::~Evaluator() = default;

bool Evaluator::sat(const Formula& f) {
  return impl_->eval(impl_->checked_root(f, {}));
}

OrdinalSet Evaluator::defined_set(const Formula& f) {
  auto fv = free_vars(f);
  if (fv.size() > 1) throw Error(ErrorCode::NotClosed, "defined_set needs one free variable");
  if (fv.empty()) return sat(f) ? OrdinalSet::full().normalized(impl_->states[0]->kappa()) : OrdinalSet::empty();
  return defined_set(f, fv.front());
}

OrdinalSet Evaluator::defined_set(const Formula& f, const std::string& var) {
  auto& im = *impl_;
  int root = im.checked_root(f, {var});
  int s = im.slot(var);
  if (!im.omega()) {
    std::vector<Ordinal> members;
    for (Value v = 0; v < im.dom.n; ++v) {
      if (im.eval_at(root, s, v)) members.push_back(Ordinal::finite(v));
    }
    return OrdinalSet::of(std::move(members));
  }
  return im.set_of(root, s);
}

TupleSet Evaluator::defined_relation(const Formula& f, const std::string& symbol) {
  return defined_relation(f, free_vars(f), symbol);
}

TupleSet Evaluator::defined_relation(const Formula& f, const std::vector<std::string>& vars, const std::string& symbol) {
  auto& im = *impl_;
  int root = im.checked_root(f, vars);
  std::vector<int> slots;
  for (const auto& v : vars) slots.push_back(im.slot(v));
  const std::size_t k = vars.size();
  Value limit = 0;  // enumerate [0, limit)
  Value bound = 0;  // true tuples must stay below this
  if (im.omega()) {
    const CNode& n = im.nodes[root];
    Value kk = pow2(n.rank + 1) * im.opt.probe_scale;
    Value base = n.points->empty() ? 0 : n.points->back() + 1;
    bound = base + kk;
    limit = base + (k + 1) * (kk + 1);
  } else {
    bound = limit = im.dom.n;
  }
  TupleSet out;
  if (k == 0) {
    if (im.eval(root)) out.insert(Tuple{});
    return out;
  }
  if (limit == 0) return out;
  std::vector<Value> idx(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) im.env[slots[i]] = idx[i];
    if (im.eval(root)) {
      Tuple t;
      for (Value v : idx) {
        if (v >= bound) {
          throw Error(ErrorCode::Unrepresentable,
                      (symbol.empty() ? std::string("formula") : symbol) + " defines an infinite relation", symbol);
        }
        t.push_back(Ordinal::finite(v));
      }
      out.insert(std::move(t));
    }
    std::size_t i = k;
    bool done = false;
    while (true) {
      if (i == 0) {
        done = true;
        break;
      }
      --i;
      if (++idx[i] < limit) break;
      idx[i] = 0;
    }
    if (done) break;
  }
  return out;
}

bool sat(const State& s, const Formula& f, const EvalDomain& dom, const EvalOptions& options) {
  return Evaluator(s, dom, options).sat(f);
}

bool sat2(const State& s0, const State& s1, const BinaryFormula& f, const EvalDomain& dom,
          const EvalOptions& options) {
  return Evaluator(s0, s1, dom, options).sat(f.formula);
}

OrdinalSet defined_set(const State& s, const Formula& f, const EvalDomain& dom, const EvalOptions& options) {
  return Evaluator(s, dom, options).defined_set(f);
}

TupleSet defined_relation(const State& s, const Formula& f, const EvalDomain& dom, const EvalOptions& options) {
  return Evaluator(s, dom, options).defined_relation(f);
}

std::uint64_t threshold(const State& s, const Formula& f) {
  Value m = 0;
  auto see = [&](const Ordinal& o) { m = std::max(m, to_value(o, "threshold")); };
  for (const auto& [k, v] : s.constants()) see(v);
  for (const auto& [k, v] : s.unaries()) {
    for (const auto& a : v.support()) see(a);
  }
  for (const auto& [k, v] : s.naries()) {
    for (const auto& t : v) {
      for (const auto& a : t) see(a);
    }
  }
  for (const auto& o : support_constants(f)) see(o);
  return m + pow2(static_cast<int>(quantifier_rank(f)) + 1) + 1;
}

}  // namespace gseq
