#include "gseq/specfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gseq/error.hpp"
#include "gseq/parser.hpp"
#include "gseq/printer.hpp"

namespace gseq {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : s_(text) {}

  std::size_t pos() const { return i_; }
  bool done() {
    skip();
    return i_ >= s_.size();
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(ErrorCode::Syntax, msg, at);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, i_); }

  // Skips blanks, newlines and comments.
  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else {
        break;
      }
    }
  }
  // Skips blanks and comments but stops at a newline.
  void skip_inline() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r')) ++i_;
    if (i_ < s_.size() && s_[i_] == '#') {
      while (i_ < s_.size() && s_[i_] != '\n') ++i_;
    }
  }

  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }

  std::string ident() {
    skip();
    std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (b == i_) fail("expected a name");
    return std::string(s_.substr(b, i_ - b));
  }

  // Rest of the current line, comment stripped, trimmed. Sets `at` to its offset.
  std::string line(std::size_t& at) {
    skip_inline();
    at = i_;
    std::size_t b = i_;
    while (i_ < s_.size() && s_[i_] != '\n' && s_[i_] != '#') ++i_;
    std::size_t e = i_;
    while (e > b && std::isspace(static_cast<unsigned char>(s_[e - 1]))) --e;
    skip_inline();
    if (i_ < s_.size() && s_[i_] != '\n') fail("unexpected text after value");
    return std::string(s_.substr(b, e - b));
  }

  // Text up to the next ';' (formulas contain none).
  std::string_view until_semicolon(std::size_t& at) {
    skip();
    at = i_;
    std::size_t e = s_.find(';', i_);
    if (e == std::string_view::npos) fail("missing ';'");
    std::string_view out = s_.substr(i_, e - i_);
    i_ = e + 1;
    return out;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

// Re-raises a parse error from a nested parser with an offset into the file.
template <class F>
auto nested(std::size_t base, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.code(), e.message(), base + e.position(), e.symbol());
  } catch (const Error& e) {
    throw ParseError(e.code(), e.message(), base, e.symbol());
  }
}

Ordinal parse_kappa(const std::string& v, std::size_t at) {
  return nested(at, [&] {
    if (v.rfind("finite:", 0) == 0) {
      std::string n = v.substr(7);
      if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(ErrorCode::Syntax, "bad finite kappa", 7);
      }
      return Ordinal::finite(std::stoull(n));
    }
    return Ordinal::parse(v);
  });
}

std::string print_kappa(const Ordinal& k) {
  return k.is_finite() ? "finite:" + std::to_string(k.finite_value()) : k.to_string();
}

void parse_signature(Cursor& c, MachineSpec& m) {
  c.expect('{');
  while (!c.accept('}')) {
    std::size_t at = c.pos();
    SymbolDecl d;
    d.name = c.ident();
    c.expect(':');
    std::string kind = c.ident();
    std::size_t rest_at = 0;
    std::istringstream rest(c.line(rest_at));
    if (kind == "relation") {
      d.kind = SymbolKind::Relation;
      if (!(rest >> d.arity)) c.fail("relation needs an arity", rest_at);
      std::string role;
      if (rest >> role) {
        if (role == "membership") d.role = Role::Membership;
        else if (role == "in") d.role = Role::In;
        else if (role == "out") d.role = Role::Out;
        else c.fail("unknown role '" + role + "'", rest_at);
      }
    } else if (kind == "function") {
      d.kind = SymbolKind::Function;
      if (!(rest >> d.arity)) c.fail("function needs an arity", rest_at);
    } else if (kind == "constant") {
      d.kind = SymbolKind::Constant;
    } else {
      c.fail("unknown symbol kind '" + kind + "'", at);
    }
    std::string extra;
    if (rest >> extra) c.fail("unexpected '" + extra + "'", rest_at);
    nested(at, [&] {
      m.sigma.add(d);
      return 0;
    });
  }
}

void parse_params(Cursor& c, MachineSpec& m) {
  c.expect('{');
  while (!c.accept('}')) {
    std::size_t name_at = c.pos();
    std::string name = c.ident();
    c.expect('=');
    std::size_t at = 0;
    std::string v = c.line(at);
    if (m.params.count(name) || m.fixed_sets.count(name)) c.fail("duplicate parameter " + name, name_at);
    if (!v.empty() && (v.front() == '{' || v.rfind("co{", 0) == 0)) {
      m.fixed_sets[name] = nested(at, [&] { return OrdinalSet::parse(v); });
    } else {
      m.params[name] = nested(at, [&] { return Ordinal::parse(v); });
    }
  }
}

void parse_witnesses(Cursor& c, const MachineSpec& m, bool doubled, std::map<std::string, Witness>& out) {
  c.expect('{');
  while (!c.accept('}')) {
    std::size_t at = c.pos();
    std::string name = c.ident();
    if (out.count(name)) c.fail("duplicate witness for " + name, at);
    Witness w;
    c.expect('(');
    if (!c.accept(')')) {
      do {
        w.params.push_back(c.ident());
      } while (c.accept(','));
      c.expect(')');
    }
    c.expect(':');
    std::size_t body_at = 0;
    std::string_view body = c.until_semicolon(body_at);
    w.body = nested(body_at, [&] { return parse_formula(body, m.sigma, doubled); });
    out.emplace(std::move(name), std::move(w));
  }
}

}  // namespace

MachineSpec parse_spec(std::string_view text) {
  Cursor c(text);
  MachineSpec m;
  c.skip();
  std::size_t head_at = c.pos();
  if (c.done() || c.ident() != "machine") c.fail("a spec starts with 'machine NAME'", head_at);
  m.name = c.ident();
  bool seen_kappa = false;
  bool seen_sig = false;
  std::map<std::string, bool> seen;
  while (!c.done()) {
    std::size_t at = c.pos();
    std::string section = c.ident();
    if (seen[section]) c.fail("repeated section '" + section + "'", at);
    seen[section] = true;
    if (section == "kappa") {
      c.expect(':');
      std::size_t v_at = 0;
      std::string v = c.line(v_at);
      m.kappa = parse_kappa(v, v_at);
      seen_kappa = true;
    } else if (section == "flavor") {
      c.expect(':');
      std::size_t v_at = 0;
      std::string v = c.line(v_at);
      if (v == "gseqa") m.flavor = Flavor::GSeqA;
      else if (v == "gseqap") m.flavor = Flavor::GSeqAP;
      else c.fail("flavor is gseqa or gseqap", v_at);
    } else if (section == "signature") {
      parse_signature(c, m);
      seen_sig = true;
    } else if (section == "params") {
      parse_params(c, m);
    } else if (section == "default" || section == "tau") {
      if (!seen_sig) c.fail("'" + section + "' must follow 'signature'", at);
      if (section == "default") parse_witnesses(c, m, false, m.defaults);
      else parse_witnesses(c, m, true, m.tau);
    } else {
      c.fail("unknown section '" + section + "'", at);
    }
  }
  if (!seen_kappa) c.fail("missing 'kappa:'", 0);
  if (!seen_sig) c.fail("missing 'signature'", 0);
  return m;
}

std::string print_spec(const MachineSpec& m) {
  std::ostringstream o;
  o << "machine " << m.name << "\n";
  o << "kappa: " << print_kappa(m.kappa) << "\n";
  o << "flavor: " << (m.flavor == Flavor::GSeqAP ? "gseqap" : "gseqa") << "\n";
  o << "signature {\n";
  for (const auto& d : m.sigma.decls()) {
    o << "  " << d.name << ": ";
    switch (d.kind) {
      case SymbolKind::Relation:
        o << "relation " << d.arity;
        if (d.role == Role::Membership) o << " membership";
        if (d.role == Role::In) o << " in";
        if (d.role == Role::Out) o << " out";
        break;
      case SymbolKind::Function: o << "function " << d.arity; break;
      case SymbolKind::Constant: o << "constant"; break;
    }
    o << "\n";
  }
  o << "}\n";
  if (!m.params.empty() || !m.fixed_sets.empty()) {
    o << "params {\n";
    for (const auto& [k, v] : m.params) o << "  " << k << " = " << v.to_string() << "\n";
    for (const auto& [k, v] : m.fixed_sets) o << "  " << k << " = " << v.to_string() << "\n";
    o << "}\n";
  }
  PrintOptions plain;
  plain.membership = m.membership();
  PrintOptions doubled = plain;
  doubled.omit_copy0 = true;
  auto block = [&](const char* title, const std::map<std::string, Witness>& ws, const PrintOptions& opts) {
    if (ws.empty()) return;
    o << title << " {\n";
    // Declaration order first, so the file reads like the signature.
    auto one = [&](const std::string& name, const Witness& w) {
      o << "  " << name << "(";
      for (std::size_t i = 0; i < w.params.size(); ++i) o << (i ? ", " : "") << w.params[i];
      o << "): " << to_text(w.body, opts) << ";\n";
    };
    for (const auto& d : m.sigma.decls()) {
      if (auto it = ws.find(d.name); it != ws.end()) one(it->first, it->second);
    }
    for (const auto& [name, w] : ws) {
      if (!m.sigma.contains(name)) one(name, w);
    }
    o << "}\n";
  };
  block("default", m.defaults, plain);
  block("tau", m.tau, doubled);
  return o.str();
}

MachineSpec read_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

void write_spec_file(const std::string& path, const MachineSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << print_spec(spec);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace gseq
