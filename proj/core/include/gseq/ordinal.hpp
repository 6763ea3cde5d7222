#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gseq {

// One summand omega^exponent * coefficient of a Cantor normal form.
struct CnfTerm {
  std::uint32_t exponent = 0;
  std::uint64_t coefficient = 1;

  friend bool operator==(const CnfTerm&, const CnfTerm&) = default;
};

// Ordinal below omega^omega in Cantor normal form. Terms are kept with
// strictly decreasing exponents and nonzero coefficients; no terms is 0.
// The finite tail is stored inline so naturals never allocate.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  static Ordinal omega_power(std::uint32_t exponent, std::uint64_t coefficient = 1);
  // Throws Unsupported unless the terms are in normal form.
  static Ordinal from_terms(std::vector<CnfTerm> terms);
  // Text syntax: 0, 7, w, w*2+3, w^2, w^3*4+w+1.
  static Ordinal parse(std::string_view text);

  std::vector<CnfTerm> terms() const;

  bool is_zero() const noexcept { return high_.empty() && tail_ == 0; }
  bool is_finite() const noexcept { return high_.empty(); }
  bool is_limit() const noexcept;
  bool is_successor() const noexcept;
  // Throws Unsupported for infinite ordinals.
  std::uint64_t finite_value() const;

  Ordinal successor() const;
  Ordinal plus(std::uint64_t n) const;
  // Drops the finite tail: the largest limit (or 0) not above this ordinal.
  Ordinal limit_part() const;
  // Finite tail n such that this == limit_part() + n.
  std::uint64_t finite_part() const noexcept { return tail_; }

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept;

 private:
  // Terms with positive exponent, then the finite tail.
  std::vector<CnfTerm> high_;
  std::uint64_t tail_ = 0;
};

enum class Order { Less, Equal, Greater };

Order ord_compare(const Ordinal& a, const Ordinal& b) noexcept;

// Least limit ordinal strictly above `a`.
Ordinal next_limit(const Ordinal& a);

// Canonical pairing on omega x omega, ordered by max then lexicographically.
std::uint64_t godel_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> godel_unpair(std::uint64_t code);
Ordinal godel_pair(const Ordinal& a, const Ordinal& b);
std::pair<Ordinal, Ordinal> godel_unpair(const Ordinal& code);

struct OrdinalHash {
  std::size_t operator()(const Ordinal& o) const noexcept { return o.hash(); }
};

}  // namespace gseq
