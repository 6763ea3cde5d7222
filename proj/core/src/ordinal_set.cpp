#include "gseq/ordinal_set.hpp"

#include <algorithm>
#include <iterator>

#include "gseq/error.hpp"

namespace gseq {

namespace {

using Support = std::vector<Ordinal>;

Support set_union(const Support& a, const Support& b) {
  Support out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Support set_inter(const Support& a, const Support& b) {
  Support out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Support set_diff(const Support& a, const Support& b) {
  Support out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void check_below(const Support& support, const Ordinal& kappa) {
  if (!support.empty() && !(support.back() < kappa)) {
    throw Error(ErrorCode::OutOfDomain,
                "element " + support.back().to_string() + " is not below " + kappa.to_string());
  }
}

}  // namespace

OrdinalSet::OrdinalSet(Polarity polarity, std::vector<Ordinal> support)
    : polarity_(polarity), support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
}

OrdinalSet OrdinalSet::of_naturals(const std::vector<std::uint64_t>& elements) {
  std::vector<Ordinal> support;
  support.reserve(elements.size());
  for (auto e : elements) support.push_back(Ordinal::finite(e));
  return of(std::move(support));
}

OrdinalSet OrdinalSet::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip();
  Polarity polarity = Polarity::Finite;
  if (text.substr(pos, 2) == "co") {
    polarity = Polarity::Cofinite;
    pos += 2;
  }
  skip();
  if (pos >= text.size() || text[pos] != '{') throw ParseError(ErrorCode::Syntax, "set: expected '{'", pos);
  ++pos;
  auto close = text.find('}', pos);
  if (close == std::string_view::npos) throw ParseError(ErrorCode::Syntax, "set: missing '}'", text.size());
  std::vector<Ordinal> support;
  auto body = text.substr(pos, close - pos);
  if (body.find_first_not_of(" \t") != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      auto comma = body.find(',', start);
      auto item = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      try {
        support.push_back(Ordinal::parse(item));
      } catch (const ParseError& e) {
        throw ParseError(ErrorCode::Syntax, "set: bad element '" + std::string(item) + "'",
                         pos + start + e.position());
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  pos = close + 1;
  skip();
  if (pos != text.size()) throw ParseError(ErrorCode::Syntax, "set: trailing characters", pos);
  return {polarity, std::move(support)};
}

bool OrdinalSet::contains(const Ordinal& a) const {
  bool in = std::binary_search(support_.begin(), support_.end(), a);
  return is_finite() ? in : !in;
}

OrdinalSet OrdinalSet::unite(const OrdinalSet& other) const {
  if (is_finite() && other.is_finite()) return {Polarity::Finite, set_union(support_, other.support_)};
  if (is_cofinite() && other.is_cofinite()) return {Polarity::Cofinite, set_inter(support_, other.support_)};
  const auto& fin = is_finite() ? *this : other;
  const auto& cof = is_finite() ? other : *this;
  return {Polarity::Cofinite, set_diff(cof.support_, fin.support_)};
}

OrdinalSet OrdinalSet::intersect(const OrdinalSet& other) const {
  return complement().unite(other.complement()).complement();
}

OrdinalSet OrdinalSet::symmetric_difference(const OrdinalSet& other) const {
  return minus(other).unite(other.minus(*this));
}

OrdinalSet OrdinalSet::normalized(const Ordinal& kappa) const {
  check_below(support_, kappa);
  if (is_finite() || !kappa.is_finite()) return *this;
  std::vector<Ordinal> members;
  std::size_t j = 0;
  for (std::uint64_t i = 0; i < kappa.finite_value(); ++i) {
    auto o = Ordinal::finite(i);
    if (j < support_.size() && support_[j] == o) {
      ++j;
      continue;
    }
    members.push_back(o);
  }
  return {Polarity::Finite, std::move(members)};
}

std::string OrdinalSet::to_string() const {
  std::string out = is_cofinite() ? "co{" : "{";
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (i > 0) out += ',';
    out += support_[i].to_string();
  }
  return out + "}";
}

OrdinalSet set_complement(const OrdinalSet& s, const Ordinal& kappa) {
  check_below(s.support(), kappa);
  return s.complement().normalized(kappa);
}

bool set_member(const OrdinalSet& s, const Ordinal& a, const Ordinal& kappa) {
  if (!(a < kappa)) {
    throw Error(ErrorCode::OutOfDomain, "element " + a.to_string() + " is not below " + kappa.to_string());
  }
  check_below(s.support(), kappa);
  return s.contains(a);
}

}  // namespace gseq
