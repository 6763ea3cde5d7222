#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gseq/ordinal.hpp"

namespace gseq {

enum class Polarity { Finite, Cofinite };

// A finite set of ordinals, or the complement of one. The bound kappa is not
// stored; operations that need it take it as an argument.
class OrdinalSet {
 public:
  OrdinalSet() = default;
  OrdinalSet(Polarity polarity, std::vector<Ordinal> support);

  static OrdinalSet empty() { return {}; }
  static OrdinalSet full() { return {Polarity::Cofinite, {}}; }
  static OrdinalSet of(std::vector<Ordinal> elements) { return {Polarity::Finite, std::move(elements)}; }
  static OrdinalSet of_naturals(const std::vector<std::uint64_t>& elements);
  // Syntax: {1,3,5}, co{0,2}, {} and co{}.
  static OrdinalSet parse(std::string_view text);

  Polarity polarity() const noexcept { return polarity_; }
  bool is_finite() const noexcept { return polarity_ == Polarity::Finite; }
  bool is_cofinite() const noexcept { return polarity_ == Polarity::Cofinite; }
  const std::vector<Ordinal>& support() const noexcept { return support_; }
  bool is_empty() const noexcept { return is_finite() && support_.empty(); }

  // Membership without a domain check.
  bool contains(const Ordinal& a) const;

  OrdinalSet complement() const { return {flip(polarity_), support_}; }
  OrdinalSet unite(const OrdinalSet& other) const;
  OrdinalSet intersect(const OrdinalSet& other) const;
  OrdinalSet minus(const OrdinalSet& other) const { return intersect(other.complement()); }
  OrdinalSet symmetric_difference(const OrdinalSet& other) const;

  // At finite kappa every subset is finite, so cofinite sets are rewritten
  // with Finite polarity; this makes == extensional. Throws OutOfDomain if the
  // support leaves kappa.
  OrdinalSet normalized(const Ordinal& kappa) const;

  std::string to_string() const;

  friend bool operator==(const OrdinalSet&, const OrdinalSet&) = default;

 private:
  static Polarity flip(Polarity p) {
    return p == Polarity::Finite ? Polarity::Cofinite : Polarity::Finite;
  }

  Polarity polarity_ = Polarity::Finite;
  std::vector<Ordinal> support_;
};

OrdinalSet set_complement(const OrdinalSet& s, const Ordinal& kappa);
bool set_member(const OrdinalSet& s, const Ordinal& a, const Ordinal& kappa);

}  // namespace gseq
