#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gseq/machine.hpp"
#include "gseq/ordinal.hpp"
#include "gseq/ordinal_set.hpp"
#include "gseq/runtime.hpp"
#include "gseq/tm.hpp"

namespace gseq {

// Ordinal Turing machine with a tape of length alpha. Only alpha = w runs.
// The program is a TmSpec that may use oracle and parameter branches; the
// oracle is the coded input written on the tape at start.
struct AlphaMachineSpec {
  Ordinal alpha = Ordinal::omega();
  TmSpec program;

  friend bool operator==(const AlphaMachineSpec&, const AlphaMachineSpec&) = default;
};

AlphaMachineSpec parse_alpha_program(std::string_view text);

struct AlphaConfig {
  Ordinal head;
  std::size_t state = 0;
  OrdinalSet tape;
  OrdinalSet oracle;
  Ordinal clock;

  friend bool operator==(const AlphaConfig&, const AlphaConfig&) = default;
};

// {pair(0, x) : x in X} u {pair(1, o) : o in O}. Both sets must be finite.
OrdinalSet encode_pair_of_sets(const OrdinalSet& x, const OrdinalSet& o);
std::pair<OrdinalSet, OrdinalSet> decode_pair_of_sets(const OrdinalSet& code);

struct AlphaBudget {
  std::uint64_t max_steps = 100000;
  // Compute the configuration at w when the run does not halt before it.
  // The clock is then w, so the result is still NotHalted (or Crashed).
  bool follow_limit = false;
  std::size_t window = 64;
};

struct AlphaResult {
  enum class Kind { Halted, NotHalted, Crashed };
  Kind kind = Kind::NotHalted;
  OrdinalSet output;
  std::uint64_t steps = 0;
  AlphaConfig config;  // last configuration reached
  std::optional<AlphaConfig> limit;
  std::string reason;
};

std::string_view to_string(AlphaResult::Kind k);

AlphaResult run_alpha_machine(const AlphaMachineSpec& spec, const OrdinalSet& input,
                              const AlphaBudget& budget = {});

// compile_program at kappa = alpha. Parameters become GSeqAP parameters.
MachineSpec simulate_alpha_as_gseqap(const AlphaMachineSpec& spec);

struct CrossRow {
  OrdinalSet input;
  AlphaResult alpha;
  Outcome::Kind gseq = Outcome::Kind::OutOfBudget;
  bool gseq_short = false;
  OrdinalSet gseq_output;
  Ordinal gseq_length;
  bool agree = false;
};

// Halted(B) on the alpha side iff a short terminating run with output B on
// the simulating machine. `simulation` defaults to simulate_alpha_as_gseqap.
std::vector<CrossRow> crosscheck(const AlphaMachineSpec& spec, const std::vector<OrdinalSet>& inputs,
                                 const AlphaBudget& budget = {},
                                 const std::optional<MachineSpec>& simulation = std::nullopt);

}  // namespace gseq
