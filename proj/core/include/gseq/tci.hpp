#pragma once

#include <map>
#include <string>
#include <vector>

#include "gseq/ordinal.hpp"
#include "gseq/ordinal_set.hpp"
#include "gseq/signature.hpp"
#include "gseq/state.hpp"

namespace gseq {

enum class Flavor { GSeqA, GSeqAP };

std::string_view to_string(Flavor f);

// Constraint value for one symbol; the mode is 0 (subset) or 1 (equality).
struct Constraint {
  enum class Value {
    Membership,  // the true order on kappa
    Full,        // kappa^n
    Singleton,   // {alpha}, for parameter constants
    Set,         // an explicit subset of kappa (hidden information)
  };

  Value value = Value::Full;
  int mode = 0;
  Ordinal alpha;    // Singleton
  OrdinalSet set;   // Set

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Theory with constraints in interpretation; the theory part is always empty
// and the universe is constrained to (kappa, 1).
struct Tci {
  Signature sigma;
  Ordinal kappa = Ordinal::omega();
  Flavor flavor = Flavor::GSeqA;
  std::map<std::string, Constraint> per_symbol;
};

// Standard machine schema: membership (in, 1), parameter constants ({alpha}, 1),
// everything else (kappa^n, 0).
Tci make_tci(const Signature& sigma, const Ordinal& kappa, Flavor flavor,
             const std::map<std::string, Ordinal>& params = {});

struct SchemaViolation {
  std::string symbol;
  std::string detail;
};

// Checks the per-symbol constraints against the flavor. Hidden information
// (a Set constraint in mode 1) is never allowed; Singleton constraints only on
// constants of a GSeqAP, with alpha < kappa.
std::vector<SchemaViolation> check_tci_schema(const Tci& t);

enum class TciReasonCode { MissingSymbol, OutOfDomain, ParameterMismatch, NotSubset, NotEqual, NotFunctional };

std::string_view to_string(TciReasonCode c);

struct TciReason {
  TciReasonCode code;
  std::string symbol;
  std::string detail;
};

struct TciCheck {
  bool ok = true;
  std::vector<TciReason> reasons;
  explicit operator bool() const noexcept { return ok; }
};

// s models t. Throws Validation (BadConstraint) if the schema itself is bad.
TciCheck models_tci(const State& s, const Tci& t);

// Per-symbol disagreement between s0 and s1. Unary relations map to a set,
// n-ary relations to a tuple set, constants to the full set, functions to the
// graph points of s1 where the value changed. Unchanged symbols are omitted.
struct DeltaEntry {
  SymbolKind kind = SymbolKind::Relation;
  OrdinalSet set;     // unary relations and constants
  TupleSet tuples;    // n-ary relations and functions

  friend bool operator==(const DeltaEntry&, const DeltaEntry&) = default;
};
using Delta = std::map<std::string, DeltaEntry>;

Delta state_delta(const State& s0, const State& s1, const Signature& sigma);
std::string delta_to_string(const Delta& d);

}  // namespace gseq
