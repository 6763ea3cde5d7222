#include "gseq/state.hpp"

#include <cctype>
#include <functional>

#include "gseq/error.hpp"

namespace gseq {

namespace {

void check_below(const Ordinal& a, const Ordinal& kappa, const std::string& name) {
  if (!(a < kappa)) {
    throw Error(ErrorCode::OutOfDomain, name + ": " + a.to_string() + " is not below " + kappa.to_string(), name);
  }
}

void combine(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

// Enumerates all tuples of the given length over [0, n).
void for_each_tuple(std::size_t len, std::uint64_t n, const std::function<void(const Tuple&)>& fn) {
  Tuple t(len, Ordinal::finite(0));
  std::vector<std::uint64_t> idx(len, 0);
  if (n == 0 && len > 0) return;
  while (true) {
    for (std::size_t i = 0; i < len; ++i) t[i] = Ordinal::finite(idx[i]);
    fn(t);
    std::size_t i = len;
    while (i > 0) {
      --i;
      if (++idx[i] < n) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (len == 0) return;
  }
}

}  // namespace

State State::blank(const Signature& sigma, const Ordinal& kappa) {
  State s(kappa);
  for (const auto& d : sigma.decls()) {
    if (d.role == Role::Membership) continue;
    switch (d.kind) {
      case SymbolKind::Constant: s.constants_[d.name] = Ordinal{}; break;
      case SymbolKind::Relation:
        if (d.arity == 1) s.unary_[d.name] = OrdinalSet{};
        else s.nary_[d.name] = TupleSet{};
        break;
      case SymbolKind::Function: {
        if (!kappa.is_finite()) {
          throw Error(ErrorCode::Unrepresentable, "function symbols need a finite kappa", d.name);
        }
        TupleSet graph;
        for_each_tuple(d.arity, kappa.finite_value(), [&](const Tuple& args) {
          Tuple row = args;
          row.push_back(Ordinal{});
          graph.insert(std::move(row));
        });
        s.nary_[d.name] = std::move(graph);
        break;
      }
    }
  }
  return s;
}

void State::set_constant(const std::string& name, Ordinal value) {
  check_below(value, kappa_, name);
  constants_[name] = std::move(value);
}

void State::set_unary(const std::string& name, OrdinalSet value) {
  try {
    unary_[name] = value.normalized(kappa_);
  } catch (const Error& e) {
    throw Error(ErrorCode::OutOfDomain, name + ": " + e.what(), name);
  }
}

void State::set_nary(const std::string& name, TupleSet value) {
  for (const auto& t : value) {
    for (const auto& a : t) check_below(a, kappa_, name);
  }
  nary_[name] = std::move(value);
}

const Ordinal& State::constant(std::string_view name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) throw Error(ErrorCode::UnknownSymbol, "state has no constant " + std::string(name), std::string(name));
  return it->second;
}

const OrdinalSet& State::unary(std::string_view name) const {
  auto it = unary_.find(name);
  if (it == unary_.end()) throw Error(ErrorCode::UnknownSymbol, "state has no unary relation " + std::string(name), std::string(name));
  return it->second;
}

const TupleSet& State::nary(std::string_view name) const {
  auto it = nary_.find(name);
  if (it == nary_.end()) throw Error(ErrorCode::UnknownSymbol, "state has no relation " + std::string(name), std::string(name));
  return it->second;
}

Ordinal State::apply_function(std::string_view name, const Tuple& args) const {
  const auto& graph = nary(name);
  Tuple lo = args;
  auto it = graph.lower_bound(lo);
  if (it != graph.end() && it->size() == args.size() + 1 &&
      std::equal(args.begin(), args.end(), it->begin())) {
    return it->back();
  }
  throw Error(ErrorCode::D6Violation, "function " + std::string(name) + " undefined at " + tuple_to_string(args),
              std::string(name));
}

std::string tuple_to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += t[i].to_string();
  }
  return out + ")";
}

std::string tuples_to_string(const TupleSet& ts) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : ts) {
    if (!first) out += ',';
    first = false;
    out += tuple_to_string(t);
  }
  return out + "}";
}

std::string State::to_string() const {
  std::string out = "constants:";
  for (const auto& [k, v] : constants_) out += " " + k + "=" + v.to_string();
  out += "; unary:";
  for (const auto& [k, v] : unary_) out += " " + k + "=" + v.to_string();
  out += "; nary:";
  for (const auto& [k, v] : nary_) out += " " + k + "=" + tuples_to_string(v);
  return out;
}

State State::parse(std::string_view text, const Ordinal& kappa) {
  State s(kappa);
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void { throw ParseError(ErrorCode::Syntax, "state: " + msg, pos); };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_name = [&] {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (start == pos) fail("expected name");
    return std::string(text.substr(start, pos - start));
  };
  // Reads up to the matching close brace of a braced value.
  auto read_braced = [&](bool allow_co) {
    skip();
    std::size_t start = pos;
    if (allow_co && text.substr(pos, 2) == "co") pos += 2;
    if (pos >= text.size() || text[pos] != '{') fail("expected '{'");
    auto close = text.find('}', pos);
    if (close == std::string_view::npos) fail("missing '}'");
    pos = close + 1;
    return text.substr(start, pos - start);
  };
  while (true) {
    skip();
    if (pos >= text.size()) break;
    std::string section = read_name();
    skip();
    if (pos >= text.size() || text[pos] != ':') fail("expected ':'");
    ++pos;
    while (true) {
      skip();
      if (pos >= text.size() || text[pos] == ';') break;
      std::string name = read_name();
      skip();
      if (pos >= text.size() || text[pos] != '=') fail("expected '='");
      ++pos;
      skip();
      if (section == "constants") {
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != ';') ++pos;
        s.set_constant(name, Ordinal::parse(text.substr(start, pos - start)));
      } else if (section == "unary") {
        s.set_unary(name, OrdinalSet::parse(read_braced(true)));
      } else if (section == "nary") {
        skip();
        if (pos >= text.size() || text[pos] != '{') fail("expected '{'");
        ++pos;
        TupleSet tuples;
        while (true) {
          skip();
          if (pos < text.size() && text[pos] == '}') {
            ++pos;
            break;
          }
          if (pos >= text.size() || text[pos] != '(') fail("expected '('");
          auto close = text.find(')', pos);
          if (close == std::string_view::npos) fail("missing ')'");
          auto body = text.substr(pos + 1, close - pos - 1);
          Tuple t;
          std::size_t start = 0;
          while (true) {
            auto comma = body.find(',', start);
            t.push_back(Ordinal::parse(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
          }
          tuples.insert(std::move(t));
          pos = close + 1;
          skip();
          if (pos < text.size() && text[pos] == ',') ++pos;
        }
        s.set_nary(name, std::move(tuples));
      } else {
        fail("unknown section " + section);
      }
    }
    if (pos < text.size() && text[pos] == ';') ++pos;
  }
  return s;
}

std::size_t State::hash() const noexcept {
  std::size_t h = kappa_.hash();
  for (const auto& [k, v] : constants_) {
    combine(h, std::hash<std::string>{}(k));
    combine(h, v.hash());
  }
  for (const auto& [k, v] : unary_) {
    combine(h, std::hash<std::string>{}(k));
    combine(h, v.is_cofinite() ? 1 : 2);
    for (const auto& a : v.support()) combine(h, a.hash());
  }
  for (const auto& [k, v] : nary_) {
    combine(h, std::hash<std::string>{}(k));
    for (const auto& t : v) {
      for (const auto& a : t) combine(h, a.hash());
      combine(h, 0x51);
    }
  }
  return h;
}

}  // namespace gseq
