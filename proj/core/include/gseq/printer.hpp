#pragma once

#include <string>

#include "gseq/formula.hpp"

namespace gseq {

struct PrintOptions {
  // Atoms of this relation (copy None or 0) print infix as x < y.
  std::string membership = "in";
  // Print copy-0 symbols without "@0"; only valid where the parser defaults
  // unannotated symbols to copy 0.
  bool omit_copy0 = false;
};

// Re-sugars |, ->, <-> and forall. parse_formula(to_text(f)) == f.
std::string to_text(const Formula& f, const PrintOptions& options = {});
std::string to_text(const Term& t, const PrintOptions& options = {});

}  // namespace gseq
