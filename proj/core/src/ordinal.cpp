#include "gseq/ordinal.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <limits>

#include "gseq/error.hpp"

namespace gseq {

namespace {

bool well_formed(const std::vector<CnfTerm>& terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) return false;
    if (i > 0 && terms[i - 1].exponent <= terms[i].exponent) return false;
  }
  return true;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw Error(ErrorCode::RepresentationOverflow, "coefficient overflow");
  }
  return a + b;
}

class OrdinalReader {
 public:
  explicit OrdinalReader(std::string_view text) : text_(text) {}

  Ordinal read() {
    std::vector<CnfTerm> terms;
    skip_ws();
    if (at_end()) fail("empty ordinal");
    while (true) {
      terms.push_back(read_term());
      skip_ws();
      if (at_end()) break;
      if (text_[pos_] != '+') fail("expected '+'");
      ++pos_;
    }
    // "0" alone denotes zero; zero summands are not allowed elsewhere.
    if (terms.size() == 1 && terms[0].coefficient == 0 && terms[0].exponent == 0) return {};
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (terms[i].coefficient == 0) fail("zero summand");
      if (i > 0 && terms[i - 1].exponent <= terms[i].exponent) fail("summands not in Cantor normal form");
    }
    return Ordinal::from_terms(std::move(terms));
  }

 private:
  CnfTerm read_term() {
    skip_ws();
    if (at_end()) fail("expected ordinal term");
    if (text_[pos_] == 'w') {
      ++pos_;
      CnfTerm term{1, 1};
      skip_ws();
      if (!at_end() && text_[pos_] == '^') {
        ++pos_;
        auto e = read_number();
        if (e > std::numeric_limits<std::uint32_t>::max()) {
          throw Error(ErrorCode::RepresentationOverflow, "exponent too large");
        }
        term.exponent = static_cast<std::uint32_t>(e);
        if (term.exponent == 0) fail("exponent must be positive");
        skip_ws();
      }
      if (!at_end() && text_[pos_] == '*') {
        ++pos_;
        term.coefficient = read_number();
      }
      return term;
    }
    return CnfTerm{0, read_number()};
  }

  std::uint64_t read_number() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected number");
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
        throw Error(ErrorCode::RepresentationOverflow, "number too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ErrorCode::Syntax, "ordinal: " + what, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal o;
  o.tail_ = n;
  return o;
}

Ordinal Ordinal::omega() { return omega_power(1); }

Ordinal Ordinal::omega_power(std::uint32_t exponent, std::uint64_t coefficient) {
  if (exponent == 0) return finite(coefficient);
  Ordinal o;
  if (coefficient > 0) o.high_.push_back({exponent, coefficient});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<CnfTerm> terms) {
  if (!well_formed(terms)) throw Error(ErrorCode::Unsupported, "terms not in Cantor normal form");
  Ordinal o;
  if (!terms.empty() && terms.back().exponent == 0) {
    o.tail_ = terms.back().coefficient;
    terms.pop_back();
  }
  o.high_ = std::move(terms);
  return o;
}

Ordinal Ordinal::parse(std::string_view text) { return OrdinalReader(text).read(); }

std::vector<CnfTerm> Ordinal::terms() const {
  auto out = high_;
  if (tail_ > 0) out.push_back({0, tail_});
  return out;
}

bool Ordinal::is_limit() const noexcept { return !high_.empty() && tail_ == 0; }

bool Ordinal::is_successor() const noexcept { return tail_ > 0; }

std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) throw Error(ErrorCode::Unsupported, "ordinal " + to_string() + " is not finite");
  return tail_;
}

Ordinal Ordinal::successor() const { return plus(1); }

Ordinal Ordinal::plus(std::uint64_t n) const {
  Ordinal o = *this;
  o.tail_ = checked_add(o.tail_, n);
  return o;
}

Ordinal Ordinal::limit_part() const {
  Ordinal o = *this;
  o.tail_ = 0;
  return o;
}

std::string Ordinal::to_string() const {
  std::string out;
  for (const auto& t : high_) {
    if (!out.empty()) out += '+';
    out += 'w';
    if (t.exponent > 1) out += '^' + std::to_string(t.exponent);
    if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
  }
  if (tail_ > 0 || out.empty()) {
    if (!out.empty()) out += '+';
    out += std::to_string(tail_);
  }
  return out;
}

std::size_t Ordinal::hash() const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(tail_);
  for (const auto& t : high_) {
    h ^= t.exponent + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= t.coefficient + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept {
  const auto& x = a.high_;
  const auto& y = b.high_;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i].exponent != y[i].exponent) return x[i].exponent <=> y[i].exponent;
    if (x[i].coefficient != y[i].coefficient) return x[i].coefficient <=> y[i].coefficient;
  }
  if (x.size() != y.size()) return x.size() <=> y.size();
  return a.tail_ <=> b.tail_;
}

Order ord_compare(const Ordinal& a, const Ordinal& b) noexcept {
  auto c = a <=> b;
  if (c < 0) return Order::Less;
  if (c > 0) return Order::Greater;
  return Order::Equal;
}

Ordinal next_limit(const Ordinal& a) {
  auto terms = a.limit_part().terms();
  if (!terms.empty() && terms.back().exponent == 1) {
    terms.back().coefficient = checked_add(terms.back().coefficient, 1);
  } else {
    terms.push_back({1, 1});
  }
  return Ordinal::from_terms(std::move(terms));
}

std::uint64_t godel_pair(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t m = a > b ? a : b;
  if (m >= (1ULL << 31)) throw Error(ErrorCode::RepresentationOverflow, "pair argument too large");
  const std::uint64_t base = m * m;
  // Block for max m: (0,m), (1,m), ..., (m-1,m), (m,0), ..., (m,m).
  if (a < m) return base + a;
  return base + m + b;
}

std::pair<std::uint64_t, std::uint64_t> godel_unpair(std::uint64_t code) {
  auto m = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(code)));
  while (m * m > code) --m;
  while ((m + 1) * (m + 1) <= code) ++m;
  const std::uint64_t offset = code - m * m;
  if (offset < m) return {offset, m};
  return {m, offset - m};
}

Ordinal godel_pair(const Ordinal& a, const Ordinal& b) {
  if (!a.is_finite() || !b.is_finite()) {
    throw Error(ErrorCode::Unsupported, "pairing is only defined on finite ordinals");
  }
  return Ordinal::finite(godel_pair(a.finite_value(), b.finite_value()));
}

std::pair<Ordinal, Ordinal> godel_unpair(const Ordinal& code) {
  if (!code.is_finite()) throw Error(ErrorCode::Unsupported, "unpairing is only defined on finite ordinals");
  auto [a, b] = godel_unpair(code.finite_value());
  return {Ordinal::finite(a), Ordinal::finite(b)};
}

}  // namespace gseq
