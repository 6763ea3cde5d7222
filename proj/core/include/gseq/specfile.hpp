#pragma once

#include <string>
#include <string_view>

#include "gseq/machine.hpp"

namespace gseq {

// Text form of a MachineSpec:
//
//   machine copy
//   kappa: w                  # ordinal syntax, or finite:N
//   flavor: gseqa             # or gseqap
//   signature {
//     in: relation 2 membership
//     In: relation 1 in
//     Out: relation 1 out
//     h: constant
//     f: function 1
//   }
//   params {
//     h = 4                   # parameter constant
//     R = {1, 2}              # fixed set (rejected by the validator)
//   }
//   default {
//     h(x): x = 0;
//   }
//   tau {
//     Out(x): In(x);
//   }
//
// Default bodies use the membership symbol only; tau bodies use copy-0
// symbols, written with or without @0. '#' starts a comment outside
// formulas. Throws ParseError with a byte offset.
MachineSpec parse_spec(std::string_view text);
std::string print_spec(const MachineSpec& spec);

MachineSpec read_spec_file(const std::string& path);
void write_spec_file(const std::string& path, const MachineSpec& spec);

}  // namespace gseq
