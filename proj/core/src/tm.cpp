#include "gseq/tm.hpp"

#include <cctype>
#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "gseq/error.hpp"
#include "gseq/parser.hpp"

namespace gseq {

namespace {

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t offset) : s_(line), base_(offset) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  bool peek(char c) {
    skip_ws();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(std::string_view tok) {
    skip_ws();
    if (s_.substr(i_, tok.size()) != tok) fail("expected '" + std::string(tok) + "'");
    i_ += tok.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }
  std::uint64_t number() {
    skip_ws();
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected a number");
    i_ = static_cast<std::size_t>(p - s_.data());
    return v;
  }
  std::string word() {
    skip_ws();
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a name");
    return std::string(s_.substr(start, i_ - start));
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ErrorCode::Syntax, msg, base_ + i_); }

 private:
  std::string_view s_;
  std::size_t base_;
  std::size_t i_ = 0;
};

void parse_row(LineReader& r, TmSpec& t) {
  r.expect("(");
  std::size_t j = r.number();
  r.expect(",");
  if (r.accept("oracle") || r.peek('p')) {
    TmBranch b;
    if (r.accept("param")) {
      b.kind = TmBranch::Kind::Param;
      b.param = r.number();
    }
    r.expect(")");
    r.expect("->");
    r.expect("(");
    b.yes = r.number();
    r.expect(",");
    b.no = r.number();
    r.expect(")");
    if (!t.branches.emplace(j, b).second) r.fail("duplicate branch row for state " + std::to_string(j));
    return;
  }
  auto bit = r.number();
  if (bit > 1) r.fail("bit must be 0 or 1");
  r.expect(")");
  r.expect("->");
  r.expect("(");
  TmAction a;
  a.next = r.number();
  r.expect(",");
  auto w = r.number();
  if (w > 1) r.fail("written bit must be 0 or 1");
  a.write = static_cast<int>(w);
  r.expect(",");
  if (r.accept("L")) {
    a.move = Move::Left;
  } else if (r.accept("R")) {
    a.move = Move::Right;
  } else {
    r.fail("expected L or R");
  }
  r.expect(")");
  if (!t.delta.emplace(std::make_pair(j, static_cast<int>(bit)), a).second) {
    r.fail("duplicate row for (" + std::to_string(j) + ", " + std::to_string(bit) + ")");
  }
}

std::string lit(std::size_t v) { return std::to_string(v); }

}  // namespace

TmSpec parse_tm(std::string_view text) {
  TmSpec t;
  bool have_states = false;
  std::optional<std::uint64_t> initial, final_marker;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    auto end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineReader r(line, offset);
    if (!r.done()) {
      if (r.peek('(')) {
        parse_row(r, t);
      } else if (r.accept("tm ")) {
        t.name = r.word();
      } else if (r.accept("states:")) {
        t.states = r.number();
        have_states = true;
      } else if (r.accept("initial:")) {
        initial = r.number();
      } else if (r.accept("final:")) {
        final_marker = r.number();
      } else if (r.accept("params:")) {
        if (!r.done()) {
          t.params.push_back(r.number());
          while (r.accept(",")) t.params.push_back(r.number());
        }
      } else {
        r.fail("unknown line");
      }
      if (!r.done()) r.fail("trailing characters");
    }
    offset = end + 1;
  }
  if (!have_states) throw ParseError(ErrorCode::Syntax, "missing 'states:' line", 0);
  if (t.states == 0) throw ParseError(ErrorCode::Syntax, "a machine needs at least one state", 0);
  if (initial && *initial != 0) throw ParseError(ErrorCode::Syntax, "the initial state must be 0", 0);
  if (final_marker && *final_marker != t.states - 1) {
    throw ParseError(ErrorCode::Syntax, "the final state must be states-1", 0);
  }
  return t;
}

std::string print_tm(const TmSpec& t) {
  std::ostringstream out;
  out << "tm " << t.name << '\n';
  out << "states: " << t.states << '\n';
  out << "initial: 0\n";
  out << "final: " << t.final_state() << '\n';
  if (!t.params.empty()) {
    out << "params: ";
    for (std::size_t i = 0; i < t.params.size(); ++i) out << (i ? ", " : "") << t.params[i];
    out << '\n';
  }
  for (const auto& [key, a] : t.delta) {
    out << '(' << key.first << ", " << key.second << ") -> (" << a.next << ", " << a.write << ", "
        << (a.move == Move::Left ? 'L' : 'R') << ")\n";
  }
  for (const auto& [j, b] : t.branches) {
    out << '(' << j << ", ";
    if (b.kind == TmBranch::Kind::Oracle) {
      out << "oracle";
    } else {
      out << "param " << b.param;
    }
    out << ") -> (" << b.yes << ", " << b.no << ")\n";
  }
  return out.str();
}

void check_tm(const TmSpec& t, bool allow_branches) {
  auto bad = [&](const std::string& msg) { throw Error(ErrorCode::Validation, "TmSpec " + t.name + ": " + msg); };
  if (t.states == 0) bad("no states");
  if (!allow_branches && (!t.branches.empty() || !t.params.empty())) {
    bad("branch rows and params are only allowed in alpha-machine programs");
  }
  for (const auto& [key, a] : t.delta) {
    if (key.first >= t.states || a.next >= t.states) bad("row mentions a state out of range");
    if (key.first == t.final_state()) bad("the final state has a transition");
    if (t.branches.count(key.first)) bad("state " + std::to_string(key.first) + " has both branch and bit rows");
  }
  for (const auto& [j, b] : t.branches) {
    if (j >= t.states || b.yes >= t.states || b.no >= t.states) bad("branch mentions a state out of range");
    if (j == t.final_state()) bad("the final state has a transition");
    if (b.kind == TmBranch::Kind::Param && b.param >= t.params.size()) bad("branch on an undeclared parameter");
  }
  for (std::size_t j = 0; j + 1 < t.states; ++j) {
    if (t.branches.count(j)) continue;
    if (!t.delta.count({j, 0}) || !t.delta.count({j, 1})) bad("delta is not total at state " + std::to_string(j));
  }
}

MachineSpec compile_tm(const TmSpec& t, const Ordinal& kappa) {
  check_tm(t, false);
  return compile_program(t, kappa);
}

MachineSpec compile_program(const TmSpec& t, const Ordinal& kappa) {
  check_tm(t, true);
  if (kappa.is_finite() && kappa.finite_value() < std::max<std::uint64_t>(2, t.states)) {
    throw Error(ErrorCode::OutOfDomain, "kappa " + kappa.to_string() + " is too small for " + t.name);
  }
  for (auto p : t.params) {
    if (!(Ordinal::finite(p) < kappa)) throw Error(ErrorCode::OutOfDomain, "parameter " + std::to_string(p) + " >= kappa");
  }

  MachineSpec m;
  m.name = t.name;
  m.kappa = kappa;
  m.sigma.add({"in", SymbolKind::Relation, 2, Role::Membership});
  m.sigma.add({"In", SymbolKind::Relation, 1, Role::In});
  m.sigma.add({"Out", SymbolKind::Relation, 1, Role::Out});
  m.sigma.add({"h", SymbolKind::Constant, 0, Role::None});
  m.sigma.add({"t", SymbolKind::Constant, 0, Role::None});
  m.sigma.add({"e", SymbolKind::Constant, 0, Role::None});
  for (std::size_t i = 0; i < t.params.size(); ++i) {
    std::string p = "p" + std::to_string(i);
    m.sigma.add({p, SymbolKind::Constant, 0, Role::None});
    m.params[p] = Ordinal::finite(t.params[i]);
  }
  m.flavor = t.params.empty() ? Flavor::GSeqA : Flavor::GSeqAP;

  const std::string run = "~(e = 0)";
  const std::string pre = "((h = 0 & x = 0) | (x < h & ~(exists z. x < z & z < h)))";
  const std::string suc = "((h < x & ~(exists z. h < z & z < x)) | (~(exists z. h < z) & x = h))";
  auto row_guard = [&](std::size_t j, int k) {
    return run + " & " + (k ? "Out(h)" : "~Out(h)") + " & t = " + lit(j);
  };
  auto branch_test = [](const TmBranch& b) {
    return b.kind == TmBranch::Kind::Oracle ? std::string("In(h)") : "h = p" + std::to_string(b.param);
  };
  std::string no_row = run;
  for (std::size_t j = 0; j + 1 < t.states; ++j) no_row += " & ~(t = " + lit(j) + ")";

  std::vector<std::string> h{"(e = 0 & h = x)"}, st{"(e = 0 & t = x)"};
  std::vector<std::string> out{"(e = 0 & In(x))", "(" + run + " & ~(x = h) & Out(x))"};
  for (const auto& [key, a] : t.delta) {
    std::string g = row_guard(key.first, key.second);
    h.push_back("(" + g + " & " + (a.move == Move::Left ? pre : suc) + ")");
    st.push_back("(" + g + " & x = " + lit(a.next) + ")");
    out.push_back("(" + g + " & x = h & " + (a.write ? "x = x" : "~(x = x)") + ")");
  }
  for (const auto& [j, b] : t.branches) {
    std::string g = run + " & t = " + lit(j);
    h.push_back("(" + g + " & x = h)");
    st.push_back("(" + g + " & " + branch_test(b) + " & x = " + lit(b.yes) + ")");
    st.push_back("(" + g + " & ~" + branch_test(b) + " & x = " + lit(b.no) + ")");
    out.push_back("(" + g + " & x = h & Out(x))");
  }
  h.push_back("(" + no_row + " & x = h)");
  st.push_back("(" + no_row + " & x = t)");
  out.push_back("(" + no_row + " & x = h & Out(x))");

  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : " | ") + p;
    return s;
  };
  auto tau = [&](const std::string& text) { return Witness{{"x"}, parse_formula(text, m.sigma, true)}; };
  m.tau["h"] = tau(join(h));
  m.tau["t"] = tau(join(st));
  m.tau["e"] = tau("(e = 0 & x = 1) | (" + run + " & x = e)");
  m.tau["In"] = tau("In(x)");
  m.tau["Out"] = tau(join(out));
  for (std::size_t i = 0; i < t.params.size(); ++i) {
    std::string p = "p" + std::to_string(i);
    m.tau[p] = tau("x = " + p);
  }
  for (const char* c : {"h", "t", "e"}) m.defaults[c] = Witness{{"x"}, parse_formula("x = 0", m.sigma)};
  return m;
}

}  // namespace gseq
