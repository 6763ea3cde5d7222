#include "gseq/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "gseq/error.hpp"

namespace gseq {

namespace {

enum class Tok { Ident, Literal, LParen, RParen, Comma, Dot, Not, And, Or, Implies, Iff, Eq, Less, At, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool literal_char(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == 'w' || c == '*' || c == '^' || c == '+';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      if (word == "w") {
        while (i < text.size() && literal_char(text[i])) ++i;
        out.push_back({Tok::Literal, std::string(text.substr(start, i - start)), start});
      } else {
        out.push_back({Tok::Ident, word, start});
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && literal_char(text[i])) ++i;
      out.push_back({Tok::Literal, std::string(text.substr(start, i - start)), start});
      continue;
    }
    auto rest = text.substr(i);
    auto emit = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(text.substr(i, len)), i});
      i += len;
    };
    if (rest.substr(0, 3) == "<->") emit(Tok::Iff, 3);
    else if (rest.substr(0, 2) == "->") emit(Tok::Implies, 2);
    else if (c == '(') emit(Tok::LParen, 1);
    else if (c == ')') emit(Tok::RParen, 1);
    else if (c == ',') emit(Tok::Comma, 1);
    else if (c == '.') emit(Tok::Dot, 1);
    else if (c == '~') emit(Tok::Not, 1);
    else if (c == '&') emit(Tok::And, 1);
    else if (c == '|') emit(Tok::Or, 1);
    else if (c == '=') emit(Tok::Eq, 1);
    else if (c == '<') emit(Tok::Less, 1);
    else if (c == '@') emit(Tok::At, 1);
    else throw ParseError(ErrorCode::Syntax, std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sigma, bool doubled)
      : tokens_(lex(text)), sigma_(sigma), doubled_(doubled) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    auto i = pos_ + ahead;
    return tokens_[i < tokens_.size() ? i : tokens_.size() - 1];
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ErrorCode::Syntax, msg, peek().pos); }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (accept(Tok::Iff)) f = Formula::iff(f, parse_implies());
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (accept(Tok::Implies)) return Formula::implies(f, parse_implies());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::And)) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return Formula::negate(parse_unary());
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      bool universal = t.text == "forall";
      next();
      const Token& v = peek();
      if (v.kind != Tok::Ident || is_keyword(v.text)) fail("expected variable after quantifier");
      if (sigma_.contains(v.text)) {
        throw ParseError(ErrorCode::Syntax, "cannot bind symbol name " + v.text, v.pos, v.text);
      }
      std::string var = next().text;
      expect(Tok::Dot, "'.'");
      Formula body = parse_iff();
      return universal ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    if (accept(Tok::LParen)) {
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  static bool is_keyword(const std::string& s) { return s == "forall" || s == "exists"; }

  Copy parse_copy() {
    if (!accept(Tok::At)) return doubled_ ? Copy::Zero : Copy::None;
    const Token& t = peek();
    if (!doubled_) fail("copy index outside a doubled formula");
    if (t.kind != Tok::Literal || (t.text != "0" && t.text != "1")) fail("copy index must be 0 or 1");
    next();
    return t.text == "0" ? Copy::Zero : Copy::One;
  }

  std::vector<Term> parse_args() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (accept(Tok::RParen)) return args;
    do {
      args.push_back(parse_term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')'");
    return args;
  }

  void check_arity(const SymbolDecl& d, std::size_t got, std::size_t pos) const {
    if (d.arity != got) {
      throw ParseError(ErrorCode::ArityMismatch,
                       d.name + " expects " + std::to_string(d.arity) + " arguments, got " + std::to_string(got),
                       pos, d.name);
    }
  }

  const SymbolDecl& lookup(const Token& t) const {
    if (const auto* d = sigma_.find(t.text)) return *d;
    throw ParseError(ErrorCode::UnknownSymbol, "unknown symbol " + t.text, t.pos, t.text);
  }

  // An identifier directly applied to arguments, possibly with a copy marker.
  bool is_application() const {
    if (peek(1).kind == Tok::LParen) return true;
    return peek(1).kind == Tok::At && peek(3).kind == Tok::LParen;
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && is_application()) {
      const SymbolDecl& d = lookup(t);
      if (d.kind == SymbolKind::Relation) {
        Token name = next();
        Copy copy = parse_copy();
        auto args = parse_args();
        check_arity(d, args.size(), name.pos);
        return Formula::apply(name.text, copy, std::move(args));
      }
    }
    Term lhs = parse_term();
    if (accept(Tok::Eq)) return Formula::equal(std::move(lhs), parse_term());
    if (peek().kind == Tok::Less) {
      auto at = next().pos;
      auto mem = sigma_.name_of(Role::Membership);
      if (mem.empty()) throw ParseError(ErrorCode::UnknownSymbol, "no membership symbol for '<'", at);
      Term rhs = parse_term();
      return Formula::apply(mem, doubled_ ? Copy::Zero : Copy::None, {std::move(lhs), std::move(rhs)});
    }
    fail("expected '=' or '<' after term");
  }

  Term parse_term() {
    const Token& t = peek();
    if (t.kind == Tok::Literal) {
      next();
      try {
        return Term::lit(Ordinal::parse(t.text));
      } catch (const ParseError& e) {
        throw ParseError(ErrorCode::Syntax, "bad ordinal literal '" + t.text + "'", t.pos + e.position());
      }
    }
    if (t.kind != Tok::Ident || is_keyword(t.text)) fail("expected term");
    if (is_application()) {
      const SymbolDecl& d = lookup(t);
      if (d.kind != SymbolKind::Function) {
        throw ParseError(ErrorCode::Syntax, t.text + " is not a function symbol", t.pos, t.text);
      }
      Token name = next();
      Copy copy = parse_copy();
      auto args = parse_args();
      check_arity(d, args.size(), name.pos);
      return Term::function(name.text, copy, std::move(args));
    }
    if (const auto* d = sigma_.find(t.text)) {
      if (d->kind != SymbolKind::Constant) {
        throw ParseError(ErrorCode::ArityMismatch, t.text + " used without arguments", t.pos, t.text);
      }
      Token name = next();
      return Term::constant(name.text, parse_copy());
    }
    if (peek(1).kind == Tok::At) {
      throw ParseError(ErrorCode::UnknownSymbol, "unknown symbol " + t.text, t.pos, t.text);
    }
    return Term::variable(next().text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sigma_;
  bool doubled_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sigma, bool doubled) {
  return Parser(text, sigma, doubled).parse();
}

BinaryFormula parse_binary_formula(std::string_view text, const Signature& sigma) {
  return {parse_formula(text, sigma, true)};
}

}  // namespace gseq
