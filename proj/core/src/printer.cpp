#include "gseq/printer.hpp"

namespace gseq {

namespace {

enum Prec { kIff = 1, kImplies = 2, kOr = 3, kAnd = 4, kPrefix = 5 };

struct Printed {
  std::string text;
  int prec;
  bool open;  // ends in a quantifier whose body would swallow a following operator
};

std::string symbol_text(const SymbolRef& s, const PrintOptions& o) {
  switch (s.copy) {
    case Copy::None: return s.name;
    case Copy::Zero: return o.omit_copy0 ? s.name : s.name + "@0";
    case Copy::One: return s.name + "@1";
  }
  return s.name;
}

std::string term_text(const Term& t, const PrintOptions& o) {
  switch (t.kind) {
    case Term::Kind::Var: return t.var;
    case Term::Kind::Literal: return t.literal.to_string();
    case Term::Kind::Const: return symbol_text(t.symbol, o);
    case Term::Kind::Func: {
      std::string out = symbol_text(t.symbol, o) + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += term_text(t.args[i], o);
      }
      return out + ")";
    }
  }
  return {};
}

// Not(And(a, Not(b))) -> (a, b)
bool match_implies(const Formula& f, Formula& a, Formula& b) {
  if (f.kind() != Formula::Kind::Not) return false;
  Formula c = f.left();
  if (c.kind() != Formula::Kind::And || c.right().kind() != Formula::Kind::Not) return false;
  a = c.left();
  b = c.right().left();
  return true;
}

// Not(And(Not(a), Not(b))) -> (a, b)
bool match_or(const Formula& f, Formula& a, Formula& b) {
  if (f.kind() != Formula::Kind::Not) return false;
  Formula c = f.left();
  if (c.kind() != Formula::Kind::And) return false;
  if (c.left().kind() != Formula::Kind::Not || c.right().kind() != Formula::Kind::Not) return false;
  a = c.left().left();
  b = c.right().left();
  return true;
}

bool match_iff(const Formula& f, Formula& a, Formula& b) {
  if (f.kind() != Formula::Kind::And) return false;
  Formula a1, b1, a2, b2;
  if (!match_implies(f.left(), a1, b1) || !match_implies(f.right(), a2, b2)) return false;
  if (!(a1 == b2) || !(b1 == a2)) return false;
  a = a1;
  b = b1;
  return true;
}

bool match_forall(const Formula& f, std::string& var, Formula& body) {
  if (f.kind() != Formula::Kind::Not || f.left().kind() != Formula::Kind::Exists) return false;
  Formula inner = f.left().left();
  if (inner.kind() != Formula::Kind::Not) return false;
  var = f.left().var();
  body = inner.left();
  return true;
}

Printed print(const Formula& f, const PrintOptions& o);

std::string wrap(const Printed& p, int min_prec, bool left_operand) {
  if (p.prec < min_prec || (left_operand && p.open)) return "(" + p.text + ")";
  return p.text;
}

Printed binary(const Formula& a, const Formula& b, const char* op, int prec, bool right_assoc,
               const PrintOptions& o) {
  Printed l = print(a, o);
  Printed r = print(b, o);
  int lmin = right_assoc ? prec + 1 : prec;
  int rmin = right_assoc ? prec : prec + 1;
  bool r_wrapped = r.prec < rmin;
  std::string text = wrap(l, lmin, true) + " " + op + " " + wrap(r, rmin, false);
  return {text, prec, !r_wrapped && r.open};
}

Printed print(const Formula& f, const PrintOptions& o) {
  Formula a, b;
  std::string var;
  switch (f.kind()) {
    case Formula::Kind::Equal:
      return {term_text(f.terms()[0], o) + " = " + term_text(f.terms()[1], o), kPrefix, false};
    case Formula::Kind::Apply: {
      const auto& r = f.relation();
      if (r.name == o.membership && r.copy != Copy::One && f.terms().size() == 2) {
        return {term_text(f.terms()[0], o) + " < " + term_text(f.terms()[1], o), kPrefix, false};
      }
      std::string out = symbol_text(r, o) + "(";
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i) out += ", ";
        out += term_text(f.terms()[i], o);
      }
      return {out + ")", kPrefix, false};
    }
    case Formula::Kind::Not: {
      if (match_forall(f, var, a)) {
        Printed body = print(a, o);
        return {"forall " + var + ". " + body.text, kPrefix, true};
      }
      if (match_or(f, a, b)) return binary(a, b, "|", kOr, false, o);
      if (match_implies(f, a, b)) return binary(a, b, "->", kImplies, true, o);
      Printed inner = print(f.left(), o);
      std::string text = inner.prec < kPrefix ? "~(" + inner.text + ")" : "~" + inner.text;
      return {text, kPrefix, inner.prec >= kPrefix && inner.open};
    }
    case Formula::Kind::And:
      if (match_iff(f, a, b)) return binary(a, b, "<->", kIff, false, o);
      return binary(f.left(), f.right(), "&", kAnd, false, o);
    case Formula::Kind::Exists: {
      Printed body = print(f.left(), o);
      return {"exists " + f.var() + ". " + body.text, kPrefix, true};
    }
  }
  return {};
}

}  // namespace

std::string to_text(const Formula& f, const PrintOptions& options) { return print(f, options).text; }

std::string to_text(const Term& t, const PrintOptions& options) { return term_text(t, options); }

}  // namespace gseq
