#pragma once

#include <string_view>

#include "gseq/formula.hpp"
#include "gseq/signature.hpp"

namespace gseq {

// ASCII grammar, loosest first:  a <-> b,  a -> b,  a | b,  a & b,  ~a,
// forall x. a,  exists x. a,  s = t,  s < t,  R(t, ...).  Quantifier bodies
// extend as far right as possible.  In doubled mode a symbol may carry @0 or
// @1 and unannotated symbols mean copy 0.
//
// Throws ParseError with code Syntax, UnknownSymbol or ArityMismatch.
Formula parse_formula(std::string_view text, const Signature& sigma, bool doubled = false);
BinaryFormula parse_binary_formula(std::string_view text, const Signature& sigma);

}  // namespace gseq
