#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gseq/formula.hpp"
#include "gseq/ordinal_set.hpp"
#include "gseq/state.hpp"

namespace gseq {

struct EvalDomain {
  enum class Mode { SurrogateFinite, Omega };

  Mode mode = Mode::Omega;
  std::uint64_t n = 0;  // SurrogateFinite only

  static EvalDomain surrogate(std::uint64_t n) { return {Mode::SurrogateFinite, n}; }
  static EvalDomain omega() { return {Mode::Omega, 0}; }
  // Omega for kappa = w, surrogate(kappa) for finite kappa.
  static EvalDomain for_kappa(const Ordinal& kappa);
};

struct EvalOptions {
  // Relation name read as the ordinal order.
  std::string membership = "in";
  // Multiplies every probe radius in Omega mode. Used to check that enlarging
  // the probe set does not change verdicts.
  std::uint64_t probe_scale = 1;
};

// Evaluates formulas in one state, or in a pair of states for formulas over
// the doubled signature (copy 1 reads the second state, everything else the
// first). Results of closed subformulas are cached for the evaluator's
// lifetime, keyed by node identity.
class Evaluator {
 public:
  Evaluator(const State& s, const EvalDomain& dom, EvalOptions options = {});
  Evaluator(const State& s0, const State& s1, const EvalDomain& dom, EvalOptions options = {});
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  // Throws NotClosed if f has free variables.
  bool sat(const Formula& f);
  // {a : f[var := a]}. Throws NotClosed if another variable is free.
  OrdinalSet defined_set(const Formula& f, const std::string& var);
  OrdinalSet defined_set(const Formula& f);
  // Tuples over `vars` in order. Throws Unrepresentable (naming `symbol`) if
  // the relation is infinite.
  TupleSet defined_relation(const Formula& f, const std::vector<std::string>& vars, const std::string& symbol = {});
  TupleSet defined_relation(const Formula& f, const std::string& symbol = {});

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool sat(const State& s, const Formula& f, const EvalDomain& dom, const EvalOptions& options = {});
bool sat2(const State& s0, const State& s1, const BinaryFormula& f, const EvalDomain& dom,
          const EvalOptions& options = {});
OrdinalSet defined_set(const State& s, const Formula& f, const EvalDomain& dom, const EvalOptions& options = {});
TupleSet defined_relation(const State& s, const Formula& f, const EvalDomain& dom, const EvalOptions& options = {});

// max(support points of s, constants of s, literals of f, 0) + 2^(qr(f)+1) + 1
std::uint64_t threshold(const State& s, const Formula& f);

}  // namespace gseq
