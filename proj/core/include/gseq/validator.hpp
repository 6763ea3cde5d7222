#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gseq/error.hpp"
#include "gseq/machine.hpp"

namespace gseq {

enum class ViolationCode {
  NotBounded,
  NotSimple,
  ArityMismatch,
  UnknownSymbol,
  MissingWitness,
  MissingDistinguished,
  BadConstraint,
  NonLimitKappa,
  D6Violation,
};

std::string_view to_string(ViolationCode c);

struct Violation {
  ViolationCode code;
  std::string symbol;
  std::string clause;
  std::string detail;
  std::optional<std::string> snapshot;  // counterexample state

  std::string to_string() const;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct ValidatedMachine {
  MachineSpec spec;
  BinaryFormula tau;
  Formula defaults;
  Tci tci;
};

struct ValidateOptions {
  bool allow_finite_kappa = false;
  std::size_t samples = 64;
  std::uint64_t seed = 0x5eed;
};

// Transition witnesses: copy-0 symbols only, one per symbol, right variable count.
std::vector<Violation> check_bounded(const MachineSpec& spec);
// Default witnesses: membership only, covering the non-distinguished symbols.
std::vector<Violation> check_simple(const MachineSpec& spec);
// All checks plus semantic sampling of random representable states. Throws
// ValidationError listing every violation found.
ValidatedMachine check_machine(const MachineSpec& spec, const ValidateOptions& options = {});
// check_machine without the exception.
std::vector<Violation> validate(const MachineSpec& spec, const ValidateOptions& options = {});

// Random representable state of the machine's signature: supports and
// constants below 12 (or below kappa if finite), parameters at their values.
State random_state(const MachineSpec& spec, std::uint64_t seed);

}  // namespace gseq
