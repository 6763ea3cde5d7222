#pragma once

#include <map>
#include <string>
#include <vector>

#include "gseq/eval.hpp"
#include "gseq/formula.hpp"
#include "gseq/ordinal.hpp"
#include "gseq/ordinal_set.hpp"
#include "gseq/signature.hpp"
#include "gseq/state.hpp"
#include "gseq/tci.hpp"

namespace gseq {

// phi^X with its free variables named. A relation of arity n has n params, a
// function of arity n has n + 1 (the last is the value), a constant has 1.
struct Witness {
  std::vector<std::string> params;
  Formula body;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct MachineSpec {
  std::string name;
  Ordinal kappa = Ordinal::omega();
  Signature sigma;
  Flavor flavor = Flavor::GSeqA;
  std::map<std::string, Ordinal> params;
  // Explicit-set constraints. Only present so that hidden-information
  // machines can be written down and rejected.
  std::map<std::string, OrdinalSet> fixed_sets;
  // Transition witnesses: bodies use copy-0 symbols only.
  std::map<std::string, Witness> tau;
  // Default witnesses: bodies use the membership symbol only (copy None).
  std::map<std::string, Witness> defaults;

  std::string membership() const { return sigma.name_of(Role::Membership); }
  std::string in() const { return sigma.name_of(Role::In); }
  std::string out() const { return sigma.name_of(Role::Out); }
  EvalOptions eval_options() const;
  Tci tci() const;

  friend bool operator==(const MachineSpec&, const MachineSpec&) = default;
};

std::size_t expected_params(const SymbolDecl& d);

// Default witnesses are required for every symbol outside {in, In, Out} that
// is not a parameter constant.
bool needs_default(const MachineSpec& spec, const SymbolDecl& d);

// The per-symbol clause psi^X: forall y (X@1(y) <-> phi^X(y)) and its
// constant / function variants. `copy` is the copy of X on the left (One for
// transitions, None for defaults).
Formula witness_clause(const SymbolDecl& d, const Witness& w, Copy copy);

// Conjunction of the clauses in declaration order, with the identity clause
// for the membership symbol first.
BinaryFormula assemble_tau(const MachineSpec& spec);
Formula assemble_defaults(const MachineSpec& spec);

// Splits an assembled sentence back into per-symbol witnesses. Throws
// Validation if the sentence is not a conjunction of witness clauses.
std::map<std::string, Witness> recover_witnesses(const Formula& assembled, const Signature& sigma, Copy copy);

// Next state computed symbol by symbol from the transition witnesses.
// Throws D6Violation when a constant or function is not uniquely defined, and
// Unrepresentable when a relation leaves the finite/cofinite class.
State successor(const MachineSpec& spec, const State& s);

// Loaded state for input A: In = A, Out empty, parameters at their values,
// everything else from the default witnesses over the bare order.
State load_state(const MachineSpec& spec, const OrdinalSet& input);

}  // namespace gseq
