#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gseq/ordinal.hpp"
#include "gseq/ordinal_set.hpp"
#include "gseq/state.hpp"
#include "gseq/validator.hpp"

namespace gseq {

struct Budget {
  std::uint64_t max_steps_per_segment = 100000;
  std::uint64_t max_limit_jumps = 4;
  std::size_t window = 64;          // events kept per cell for the tail classifier
  bool snapshot_every_step = false;
};

enum class RunMode { Full, Short };

enum class TailClass { Stable, Periodic, Unbounded, Unknown };
std::string_view to_string(TailClass c);

// One cell: a constant (no index), an element of a unary relation, the
// "tail" of a unary relation (every element never in any support), a tuple of
// an n-ary relation, or an argument tuple of a function.
struct CellClass {
  std::string symbol;
  std::string cell;
  TailClass tail = TailClass::Stable;
  std::uint64_t value = 0;
};

struct LimitRecord {
  Ordinal limit;
  bool verified = true;
  bool via_cycle = true;
  std::uint64_t period = 0;  // cycle length when via_cycle
  std::vector<CellClass> cells;
};

struct Snapshot {
  Ordinal stamp;
  State state;
};

struct Outcome {
  enum class Kind { Terminated, OutOfBudget, LimitUnresolved, Failed };
  Kind kind = Kind::OutOfBudget;
  State final_state;
  OrdinalSet output;
  Ordinal length;         // Terminated: final stamp + 1
  Ordinal limit;          // LimitUnresolved
  ErrorCode error = ErrorCode::Validation;  // Failed
  std::string reason;
};

std::string_view to_string(Outcome::Kind k);

struct RunTrace {
  std::string machine;
  OrdinalSet input;
  std::vector<Snapshot> snapshots;
  std::vector<LimitRecord> limits;
  std::vector<std::string> warnings;
  std::uint64_t steps = 0;
  std::uint64_t events = 0;
  Outcome outcome;

  bool terminated() const { return outcome.kind == Outcome::Kind::Terminated; }
  // Terminated with a length below kappa.
  bool is_short(const Ordinal& kappa) const { return terminated() && outcome.length < kappa; }
};

struct RunHooks {
  // Newline-delimited trace records.
  std::ostream* trace = nullptr;
  // Called after every successor step with the stamp of `from`.
  std::function<void(const Ordinal& stamp, const State& from, const State& to)> on_step;
};

// In = A, Out empty, other symbols from the defaults.
State load(const ValidatedMachine& m, const OrdinalSet& input);
OrdinalSet unload(const State& s, const ValidatedMachine& m);
// One transition; checks the result against the machine's constraints.
State step(const ValidatedMachine& m, const State& s);

// Cell value at a limit from its recent history (oldest first); `start` is
// the value before the first listed event, or nullopt if events were dropped.
struct TailVerdict {
  TailClass tail;
  std::uint64_t value;
};
TailVerdict classify_tail(std::optional<std::uint64_t> start, const std::vector<std::uint64_t>& events);

// Pointwise minimum (intersection for relations) over a list of states.
State pointwise_min(const std::vector<State>& states, const Signature& sigma);

RunTrace run(const ValidatedMachine& m, const OrdinalSet& input, const Budget& budget = {},
             RunMode mode = RunMode::Full, const RunHooks& hooks = {});

struct ReductionResult {
  bool certified = false;
  bool short_run = false;
  OrdinalSet expected;
  OrdinalSet actual;
  RunTrace trace;
  std::string reason;
};

// Runs m on `a`; certifies iff the run terminates with output `b`.
ReductionResult certify_reduction(const ValidatedMachine& m, const OrdinalSet& a, const OrdinalSet& b,
                                  const Budget& budget = {});

}  // namespace gseq
