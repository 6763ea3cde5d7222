#pragma once

#include "gseq/formula.hpp"
#include "gseq/machine.hpp"
#include "gseq/ordinal.hpp"

namespace gseq {

// Closed copy-0 sentence that holds in s exactly when the successor of s
// equals s on every symbol of m.
Formula stall_sentence(const MachineSpec& m);

// Runs m1, and once m1 stalls moves its output to the input tape, clears the
// output and runs m2. Non-role symbols get the suffixes _1 and _2 and a
// phase constant ph is added. Throws KappaMismatch.
MachineSpec compose(const MachineSpec& m1, const MachineSpec& m2);

// Runs m and, once it stalls, complements Out in one extra step guarded by a
// fresh flag constant f.
MachineSpec flip(const MachineSpec& m);

// GSeqAP over kappa2 simulating m below the parameter c = kappa(m). The first
// step installs m's defaults (gated by d = 0); cells at or above c stay 0.
// Throws BadLift unless kappa(m) < kappa2.
MachineSpec lift(const MachineSpec& m, const Ordinal& kappa2);

// Machine whose run on I outputs {b : m halts on <{b}, I>} as far as the
// dovetailing reaches before the limit. m's symbols get the suffix _m; the
// control symbols are c0, c1, c2, d, q, o, sq, k, wq (constants) and R, E
// (unary). The input must be finite: its code is built by a walker that
// computes squares one step at a time.
MachineSpec dovetail(const MachineSpec& m);

}  // namespace gseq
