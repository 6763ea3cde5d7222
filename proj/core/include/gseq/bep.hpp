#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gseq/state.hpp"
#include "gseq/tci.hpp"
#include "gseq/validator.hpp"

namespace gseq {

// Diagnostic for the bounded exploration postulate on a finite sample. The
// candidate set D is every ground term up to the depth bound (relations read
// as 0/1 valued terms); if two sampled states agree on all of D but their
// transition deltas differ, no finite D within the bound works.
struct BepReport {
  enum class Verdict { Vacuous, Satisfied, NotFoundWithinBound };

  Verdict verdict = Verdict::Vacuous;
  std::size_t depth = 3;
  std::size_t term_count = 0;
  std::size_t states = 0;
  bool constant_delta = false;  // every sampled state has the same delta
  std::vector<std::string> terms;

  struct Witness {
    State s0;
    State s1;
    Delta delta0;
    Delta delta1;
  };
  std::optional<Witness> witness;

  std::string to_string() const;
};

// Ground terms over the machine's constants, functions and relations, with
// nesting depth at most `depth`. Exposed for tests.
std::vector<Term> ground_terms(const Signature& sigma, std::size_t depth);

BepReport diagnose_bep(const ValidatedMachine& m, const std::vector<State>& sample, std::size_t depth = 3);

}  // namespace gseq
