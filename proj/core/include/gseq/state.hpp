#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gseq/ordinal.hpp"
#include "gseq/ordinal_set.hpp"
#include "gseq/signature.hpp"

namespace gseq {

using Tuple = std::vector<Ordinal>;
using TupleSet = std::set<Tuple>;

// An expansion of (kappa; <). Membership is the ordinal order and is never
// stored. Functions are stored as their graphs in `nary` with arity + 1.
class State {
 public:
  State() = default;
  explicit State(Ordinal kappa) : kappa_(std::move(kappa)) {}

  // Every non-membership symbol at 0 / empty; a function maps everything to 0
  // (only representable at finite kappa).
  static State blank(const Signature& sigma, const Ordinal& kappa);

  const Ordinal& kappa() const noexcept { return kappa_; }

  // Setters check that values lie below kappa (OutOfDomain).
  void set_constant(const std::string& name, Ordinal value);
  void set_unary(const std::string& name, OrdinalSet value);
  void set_nary(const std::string& name, TupleSet value);

  const Ordinal& constant(std::string_view name) const;   // throws UnknownSymbol
  const OrdinalSet& unary(std::string_view name) const;   // throws UnknownSymbol
  const TupleSet& nary(std::string_view name) const;      // throws UnknownSymbol

  bool has_constant(std::string_view name) const { return constants_.find(name) != constants_.end(); }
  bool has_unary(std::string_view name) const { return unary_.find(name) != unary_.end(); }
  bool has_nary(std::string_view name) const { return nary_.find(name) != nary_.end(); }

  const std::map<std::string, Ordinal, std::less<>>& constants() const noexcept { return constants_; }
  const std::map<std::string, OrdinalSet, std::less<>>& unaries() const noexcept { return unary_; }
  const std::map<std::string, TupleSet, std::less<>>& naries() const noexcept { return nary_; }

  // Value of function f at args, read from its graph; throws D6Violation if
  // the graph has no entry.
  Ordinal apply_function(std::string_view name, const Tuple& args) const;

  // Snapshot text: "constants: h=0 t=1; unary: In={3} Out=co{1}; nary: G={(1,2)}".
  std::string to_string() const;
  static State parse(std::string_view text, const Ordinal& kappa);

  std::size_t hash() const noexcept;

  friend bool operator==(const State&, const State&) = default;

 private:
  Ordinal kappa_ = Ordinal::omega();
  std::map<std::string, Ordinal, std::less<>> constants_;
  std::map<std::string, OrdinalSet, std::less<>> unary_;
  std::map<std::string, TupleSet, std::less<>> nary_;
};

std::string tuple_to_string(const Tuple& t);
std::string tuples_to_string(const TupleSet& ts);

struct StateHash {
  std::size_t operator()(const State& s) const noexcept { return s.hash(); }
};

}  // namespace gseq
