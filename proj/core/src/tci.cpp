#include "gseq/tci.hpp"

#include <algorithm>
#include <iterator>

#include "gseq/error.hpp"

namespace gseq {

std::string_view to_string(Flavor f) { return f == Flavor::GSeqA ? "gseqa" : "gseqap"; }

std::string_view to_string(TciReasonCode c) {
  switch (c) {
    case TciReasonCode::MissingSymbol: return "MissingSymbol";
    case TciReasonCode::OutOfDomain: return "OutOfDomain";
    case TciReasonCode::ParameterMismatch: return "ParameterMismatch";
    case TciReasonCode::NotSubset: return "NotSubset";
    case TciReasonCode::NotEqual: return "NotEqual";
    case TciReasonCode::NotFunctional: return "NotFunctional";
  }
  return "?";
}

Tci make_tci(const Signature& sigma, const Ordinal& kappa, Flavor flavor,
             const std::map<std::string, Ordinal>& params) {
  Tci t{sigma, kappa, flavor, {}};
  for (const auto& d : sigma.decls()) {
    Constraint c;
    if (d.role == Role::Membership) {
      c.value = Constraint::Value::Membership;
      c.mode = 1;
    } else if (auto it = params.find(d.name); it != params.end()) {
      c.value = Constraint::Value::Singleton;
      c.mode = 1;
      c.alpha = it->second;
    }
    t.per_symbol[d.name] = c;
  }
  return t;
}

std::vector<SchemaViolation> check_tci_schema(const Tci& t) {
  std::vector<SchemaViolation> out;
  for (const auto& d : t.sigma.decls()) {
    auto it = t.per_symbol.find(d.name);
    if (it == t.per_symbol.end()) {
      out.push_back({d.name, "no constraint"});
      continue;
    }
    const Constraint& c = it->second;
    if (d.role == Role::Membership) {
      if (c.value != Constraint::Value::Membership || c.mode != 1) {
        out.push_back({d.name, "membership must be constrained to the true order"});
      }
      continue;
    }
    switch (c.value) {
      case Constraint::Value::Membership:
        out.push_back({d.name, "only the membership symbol may take the order constraint"});
        break;
      case Constraint::Value::Full:
        if (c.mode != 0) out.push_back({d.name, "constraint (kappa^n, 1) pins a full relation"});
        break;
      case Constraint::Value::Singleton:
        if (t.flavor != Flavor::GSeqAP) {
          out.push_back({d.name, "parameter constraint in a parameter-free machine"});
        } else if (d.kind != SymbolKind::Constant) {
          out.push_back({d.name, "parameter constraint on a non-constant"});
        } else if (!(c.alpha < t.kappa)) {
          out.push_back({d.name, "parameter " + c.alpha.to_string() + " not below kappa"});
        }
        break;
      case Constraint::Value::Set:
        out.push_back({d.name, "hidden information: constraint (" + c.set.to_string() + ", " +
                                   std::to_string(c.mode) + ") fixes an arbitrary set"});
        break;
    }
  }
  for (const auto& [name, c] : t.per_symbol) {
    if (!t.sigma.contains(name)) out.push_back({name, "constraint for undeclared symbol"});
  }
  return out;
}

TciCheck models_tci(const State& s, const Tci& t) {
  auto schema = check_tci_schema(t);
  if (!schema.empty()) {
    throw Error(ErrorCode::Validation, "BadConstraint: " + schema.front().detail, schema.front().symbol);
  }
  TciCheck out;
  auto fail = [&](TciReasonCode code, const std::string& symbol, std::string detail) {
    out.ok = false;
    out.reasons.push_back({code, symbol, std::move(detail)});
  };
  if (!(s.kappa() == t.kappa)) {
    fail(TciReasonCode::OutOfDomain, "", "universe " + s.kappa().to_string() + " != " + t.kappa.to_string());
    return out;
  }
  for (const auto& d : t.sigma.decls()) {
    if (d.role == Role::Membership) continue;
    const Constraint& c = t.per_symbol.at(d.name);
    switch (d.kind) {
      case SymbolKind::Constant: {
        if (!s.has_constant(d.name)) {
          fail(TciReasonCode::MissingSymbol, d.name, "no interpretation");
          break;
        }
        const auto& v = s.constant(d.name);
        if (!(v < t.kappa)) fail(TciReasonCode::OutOfDomain, d.name, v.to_string());
        if (c.value == Constraint::Value::Singleton && !(v == c.alpha)) {
          fail(TciReasonCode::ParameterMismatch, d.name, v.to_string() + " != " + c.alpha.to_string());
        }
        break;
      }
      case SymbolKind::Relation:
        if (d.arity == 1 ? !s.has_unary(d.name) : !s.has_nary(d.name)) {
          fail(TciReasonCode::MissingSymbol, d.name, "no interpretation");
        } else if (d.arity == 1) {
          const auto& set = s.unary(d.name);
          if (!set.support().empty() && !(set.support().back() < t.kappa)) {
            fail(TciReasonCode::OutOfDomain, d.name, set.to_string());
          }
        } else {
          for (const auto& tup : s.nary(d.name)) {
            bool bad = tup.size() != d.arity;
            for (const auto& a : tup) bad = bad || !(a < t.kappa);
            if (bad) {
              fail(TciReasonCode::OutOfDomain, d.name, tuple_to_string(tup));
              break;
            }
          }
        }
        break;
      case SymbolKind::Function: {
        if (!s.has_nary(d.name)) {
          fail(TciReasonCode::MissingSymbol, d.name, "no interpretation");
          break;
        }
        // Graph must be total and functional on kappa^n.
        const auto& graph = s.nary(d.name);
        if (!t.kappa.is_finite()) {
          fail(TciReasonCode::NotFunctional, d.name, "finite graph cannot be total on an infinite kappa");
          break;
        }
        std::uint64_t n = t.kappa.finite_value();
        std::uint64_t expected = 1;
        for (std::size_t i = 0; i < d.arity; ++i) expected *= n;
        std::set<Tuple> seen;
        bool ok = true;
        for (const auto& row : graph) {
          if (row.size() != d.arity + 1) {
            ok = false;
            break;
          }
          for (const auto& a : row) ok = ok && a < t.kappa;
          ok = ok && seen.insert(Tuple(row.begin(), row.end() - 1)).second;
        }
        if (!ok || seen.size() != expected) fail(TciReasonCode::NotFunctional, d.name, tuples_to_string(graph));
        break;
      }
    }
  }
  return out;
}

Delta state_delta(const State& s0, const State& s1, const Signature& sigma) {
  if (!(s0.kappa() == s1.kappa())) throw Error(ErrorCode::KappaMismatch, "states over different kappa");
  Delta out;
  for (const auto& d : sigma.decls()) {
    if (d.role == Role::Membership) continue;
    DeltaEntry e;
    e.kind = d.kind;
    bool changed = false;
    switch (d.kind) {
      case SymbolKind::Constant:
        if (!(s0.constant(d.name) == s1.constant(d.name))) {
          e.set = OrdinalSet::full().normalized(s0.kappa());
          changed = true;
        }
        break;
      case SymbolKind::Relation:
        if (d.arity == 1) {
          e.set = s0.unary(d.name).symmetric_difference(s1.unary(d.name)).normalized(s0.kappa());
          changed = !e.set.is_empty();
        } else {
          const auto& a = s0.nary(d.name);
          const auto& b = s1.nary(d.name);
          std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                        std::inserter(e.tuples, e.tuples.end()));
          changed = !e.tuples.empty();
        }
        break;
      case SymbolKind::Function: {
        const auto& a = s0.nary(d.name);
        const auto& b = s1.nary(d.name);
        std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::inserter(e.tuples, e.tuples.end()));
        changed = !e.tuples.empty();
        break;
      }
    }
    if (changed) out[d.name] = std::move(e);
  }
  return out;
}

std::string delta_to_string(const Delta& d) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, e] : d) {
    if (!first) out += ", ";
    first = false;
    out += name + ": ";
    bool tuples = e.kind == SymbolKind::Function || (e.kind == SymbolKind::Relation && !e.tuples.empty());
    out += tuples ? tuples_to_string(e.tuples) : e.set.to_string();
  }
  return out + "}";
}

}  // namespace gseq
