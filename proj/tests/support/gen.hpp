#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gseq/formula.hpp"
#include "gseq/state.hpp"
#include "gseq/tm.hpp"

namespace gseq::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Signature used by the random formula and state generators:
// in (order), U and V (unary), B (binary, finite), c (constant).
inline Signature gen_signature() {
  Signature s;
  s.add({"in", SymbolKind::Relation, 2, Role::Membership});
  s.add({"U", SymbolKind::Relation, 1, Role::None});
  s.add({"V", SymbolKind::Relation, 1, Role::None});
  s.add({"B", SymbolKind::Relation, 2, Role::None});
  s.add({"c", SymbolKind::Constant, 0, Role::None});
  return s;
}

struct FormulaGen {
  Rng& rng;
  int max_rank = 3;
  std::uint64_t literal_bound = 12;
  bool doubled = false;   // random copy 0/1 on non-order symbols
  int max_size = 9;       // rough bound on connectives

  Formula sentence() {
    std::vector<std::string> bound;
    int budget = max_size;
    return gen(max_rank, bound, budget);
  }

 private:
  Copy copy() { return doubled ? (rng.coin() ? Copy::One : Copy::Zero) : Copy::None; }

  Term term(const std::vector<std::string>& bound) {
    std::uint64_t pick = rng.below(10);
    if (!bound.empty() && pick < 7) return Term::variable(bound[rng.below(bound.size())]);
    if (pick < 8) return Term::constant("c", copy());
    return Term::lit(rng.below(literal_bound));
  }

  Formula atom(const std::vector<std::string>& bound) {
    switch (rng.below(4)) {
      case 0: return Formula::apply("in", doubled ? Copy::Zero : Copy::None, {term(bound), term(bound)});
      case 1: return Formula::equal(term(bound), term(bound));
      case 2: return Formula::apply(rng.coin() ? "U" : "V", copy(), {term(bound)});
      default: return Formula::apply("B", copy(), {term(bound), term(bound)});
    }
  }

  Formula gen(int rank, std::vector<std::string>& bound, int& budget) {
    if (budget <= 0) return atom(bound);
    --budget;
    std::uint64_t choice = rng.below(rank > 0 ? 6 : 4);
    switch (choice) {
      case 0: return atom(bound);
      case 1: return Formula::negate(gen(rank, bound, budget));
      case 2: {
        Formula a = gen(rank, bound, budget);
        return Formula::conj(a, gen(rank, bound, budget));
      }
      case 3: {
        Formula a = gen(rank, bound, budget);
        return Formula::disj(a, gen(rank, bound, budget));
      }
      default: {
        std::string v = "v" + std::to_string(rng.below(3));
        bound.push_back(v);
        Formula body = gen(rank - 1, bound, budget);
        bound.pop_back();
        return choice == 4 ? Formula::exists(v, body) : Formula::forall(v, body);
      }
    }
  }
};

// Random state of gen_signature() at kappa = w (support below `bound`).
inline State gen_state(Rng& rng, std::uint64_t bound = 12) {
  State s(Ordinal::omega());
  auto some = [&]() {
    std::vector<std::uint64_t> v;
    for (std::uint64_t a = 0; a < bound; ++a) {
      if (rng.coin(0.3)) v.push_back(a);
    }
    return v;
  };
  for (const char* u : {"U", "V"}) {
    OrdinalSet set = OrdinalSet::of_naturals(some());
    if (rng.coin(0.25)) set = set.complement();
    s.set_unary(u, set);
  }
  TupleSet b;
  std::uint64_t pairs = rng.below(5);
  for (std::uint64_t i = 0; i < pairs; ++i) {
    b.insert({Ordinal::finite(rng.below(bound)), Ordinal::finite(rng.below(bound))});
  }
  s.set_nary("B", b);
  s.set_constant("c", Ordinal::finite(rng.below(bound)));
  return s;
}

// The same interpretation over a different kappa.
inline State with_kappa(const State& s, const Ordinal& kappa) {
  State out(kappa);
  for (const auto& [k, v] : s.constants()) out.set_constant(k, v);
  for (const auto& [k, v] : s.unaries()) out.set_unary(k, v.normalized(kappa));
  for (const auto& [k, v] : s.naries()) out.set_nary(k, v);
  return out;
}

// Random TM with `states` states; every non-final row is drawn uniformly.
inline TmSpec gen_tm(Rng& rng, std::size_t states, const std::string& name = "gen") {
  TmSpec t;
  t.name = name;
  t.states = states;
  for (std::size_t j = 0; j + 1 < states; ++j) {
    for (int b = 0; b < 2; ++b) {
      TmAction a;
      a.next = rng.below(states);
      a.write = static_cast<int>(rng.below(2));
      a.move = rng.coin() ? Move::Left : Move::Right;
      t.delta[{j, b}] = a;
    }
  }
  return t;
}

}  // namespace gseq::testing
