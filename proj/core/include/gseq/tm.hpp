#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gseq/machine.hpp"
#include "gseq/ordinal.hpp"

namespace gseq {

enum class Move { Left, Right };

struct TmAction {
  std::size_t next = 0;
  int write = 0;
  Move move = Move::Right;
  friend bool operator==(const TmAction&, const TmAction&) = default;
};

// Branch rows exist only in alpha-machine programs. An oracle branch tests the
// input tape at the head; a parameter branch tests head == params[param].
struct TmBranch {
  enum class Kind { Oracle, Param };
  Kind kind = Kind::Oracle;
  std::size_t param = 0;
  std::size_t yes = 0;
  std::size_t no = 0;
  friend bool operator==(const TmBranch&, const TmBranch&) = default;
};

// States 0..states-1; 0 is initial and states-1 is the only final state.
struct TmSpec {
  std::string name = "tm";
  std::size_t states = 1;
  std::map<std::pair<std::size_t, int>, TmAction> delta;
  std::map<std::size_t, TmBranch> branches;
  std::vector<std::uint64_t> params;

  std::size_t final_state() const { return states - 1; }
  friend bool operator==(const TmSpec&, const TmSpec&) = default;
};

// Line format:
//   tm NAME
//   states: N
//   initial: 0          (optional, must be 0)
//   final: N-1          (optional, must be N-1)
//   params: 4, 9        (alpha programs)
//   (j, b) -> (j', w, L|R)
//   (j, oracle) -> (yes, no)
//   (j, param i) -> (yes, no)
// '#' starts a comment. Throws ParseError.
TmSpec parse_tm(std::string_view text);
std::string print_tm(const TmSpec& t);

// Throws Validation unless delta is total on non-final states and undefined
// on the final one. Branch rows and params need allow_branches.
void check_tm(const TmSpec& t, bool allow_branches = false);

// GSeqA over kappa with signature {in, In, Out, h, t, e}: the first step
// copies In to Out, later steps simulate one TM step each. Moving left at 0
// stays at 0; at finite kappa moving right at the last cell stays there.
MachineSpec compile_tm(const TmSpec& t, const Ordinal& kappa = Ordinal::omega());

// compile_tm extended with branch rows and parameter constants p0, p1, ...
// The result is a GSeqAP when the program has parameters.
MachineSpec compile_program(const TmSpec& t, const Ordinal& kappa = Ordinal::omega());

}  // namespace gseq
