#include <gtest/gtest.h>

#include "gen.hpp"
#include "gseq/error.hpp"
#include "gseq/eval.hpp"
#include "gseq/parser.hpp"
#include "gseq/printer.hpp"
#include "naive_eval.hpp"

namespace gseq {
namespace {

Signature tape_sigma() {
  Signature s;
  s.add({"in", SymbolKind::Relation, 2, Role::Membership});
  s.add({"In", SymbolKind::Relation, 1, Role::In});
  s.add({"Out", SymbolKind::Relation, 1, Role::Out});
  s.add({"c", SymbolKind::Constant, 0, Role::None});
  return s;
}

State tape_state(const char* in, const char* out = "{}", std::uint64_t c = 0) {
  State s(Ordinal::omega());
  s.set_unary("In", OrdinalSet::parse(in));
  s.set_unary("Out", OrdinalSet::parse(out));
  s.set_constant("c", Ordinal::finite(c));
  return s;
}

TEST(Sat, Examples) {
  Signature sigma = tape_sigma();
  State s = tape_state("{2}");
  EXPECT_TRUE(sat(s, parse_formula("exists x. In(x)", sigma), EvalDomain::omega()));
  Formula unbounded = parse_formula("forall x. exists y. x < y", sigma);
  EXPECT_TRUE(sat(s, unbounded, EvalDomain::omega()));
  EXPECT_FALSE(sat(s, unbounded, EvalDomain::surrogate(5)));
  EXPECT_THROW(sat(s, parse_formula("In(x)", sigma), EvalDomain::omega()), Error);
}

TEST(Sat, InfiniteFacts) {
  Signature sigma = tape_sigma();
  State s = tape_state("co{0,4}", "{1,3}");
  auto omega = [&](const char* t) { return sat(s, parse_formula(t, sigma), EvalDomain::omega()); };
  EXPECT_TRUE(omega("exists x. forall y. x < y -> In(y)"));
  EXPECT_FALSE(omega("exists x. forall y. x < y -> Out(y)"));
  EXPECT_TRUE(omega("forall x. exists y. x < y & In(y) & ~Out(y)"));
  EXPECT_FALSE(omega("exists x. forall y. y < x | y = x"));
  EXPECT_TRUE(omega("exists x. ~In(x) & exists y. ~In(y) & x < y"));
  EXPECT_FALSE(omega("exists x. exists y. exists z. ~In(x) & ~In(y) & ~In(z) & x < y & y < z"));
}

TEST(Sat2, BitFlipSentence) {
  Signature sigma = tape_sigma();
  BinaryFormula flip = parse_binary_formula("forall x. (In@1(x) <-> ~In@0(x)) & (Out@1(x) <-> ~Out@0(x))", sigma);
  State s0 = tape_state("{1,5}", "{2}");
  State s1 = tape_state("co{1,5}", "co{2}");
  EXPECT_TRUE(sat2(s0, s1, flip, EvalDomain::omega()));
  EXPECT_FALSE(sat2(s0, s0, flip, EvalDomain::omega()));
  EXPECT_TRUE(sat2(s1, s0, flip, EvalDomain::omega()));
}

TEST(DefinedSet, Examples) {
  Signature sigma = tape_sigma();
  auto ds = [&](const State& s, const char* t) { return defined_set(s, parse_formula(t, sigma), EvalDomain::omega()); };
  EXPECT_EQ(ds(tape_state("{}"), "x = x"), OrdinalSet::full());
  EXPECT_EQ(ds(tape_state("{0}"), "~In(x)"), OrdinalSet::parse("co{0}"));
  EXPECT_EQ(ds(tape_state("{1,2}", "{}", 2), "In(x) & ~(x = c)"), OrdinalSet::of_naturals({1}));
  EXPECT_EQ(ds(tape_state("{}"), "exists y. y < x & x < 5"), OrdinalSet::of_naturals({1, 2, 3, 4}));
}

TEST(DefinedRelation, Examples) {
  Signature sigma = tape_sigma();
  State s = tape_state("{3,7}");
  TupleSet r = defined_relation(s, parse_formula("x = y & In(x)", sigma), EvalDomain::omega());
  TupleSet expect{{Ordinal::finite(3), Ordinal::finite(3)}, {Ordinal::finite(7), Ordinal::finite(7)}};
  EXPECT_EQ(r, expect);
  try {
    Evaluator ev(s, EvalDomain::omega());
    ev.defined_relation(parse_formula("x < y", sigma), {"x", "y"}, "G");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unrepresentable);
    EXPECT_EQ(e.symbol(), "G");
  }
  EXPECT_TRUE(defined_relation(s, parse_formula("~(x = x) & y = y", sigma), EvalDomain::omega()).empty());
}

TEST(Threshold, Formula) {
  Signature sigma = tape_sigma();
  State s = tape_state("{3,9}", "{}", 4);
  // max(9, 4, 11) + 2^(2+1) + 1
  EXPECT_EQ(threshold(s, parse_formula("exists x. forall y. In(y) | y = 11", sigma)), 11u + 8 + 1);
  EXPECT_EQ(threshold(tape_state("{}"), parse_formula("0 = 0", sigma)), 0u + 2 + 1);
}

// Random sentence with every quantifier bounded by the literal `bound`. Its
// truth value does not depend on the domain once the domain contains [0, bound].
Formula bounded_sentence(testing::FormulaGen& gen, std::uint64_t bound) {
  Formula f = gen.sentence();
  Copy copy = gen.doubled ? Copy::Zero : Copy::None;
  return relativize(f, [bound, copy](const std::string& v) {
    return Formula::apply("in", copy, {Term::variable(v), Term::lit(bound)});
  });
}

TEST(EvalDifferential, BoundedSentencesAgreeEverywhere) {
  testing::Rng rng(41);
  constexpr std::uint64_t kBound = 13;
  for (int i = 0; i < 3000; ++i) {
    testing::FormulaGen gen{rng, 3, 12, false, 9};
    Formula f = bounded_sentence(gen, kBound);
    State s = testing::gen_state(rng);
    bool naive = testing::NaiveEval(s, nullptr, kBound + 1).sat(f);
    ASSERT_EQ(sat(s, f, EvalDomain::omega()), naive) << to_text(f) << "\n" << s.to_string();
    std::uint64_t b = threshold(s, f);
    for (std::uint64_t n = b; n <= b + 8; n += 4) {
      ASSERT_EQ(sat(s, f, EvalDomain::surrogate(n)), naive) << to_text(f) << " n=" << n;
    }
  }
}

TEST(EvalDifferential, SurrogateMatchesNaive) {
  testing::Rng rng(42);
  for (int i = 0; i < 3000; ++i) {
    testing::FormulaGen gen{rng, 3, 12, false, 9};
    Formula f = gen.sentence();
    State s = testing::gen_state(rng);
    for (std::uint64_t n : {12u, 17u, 23u}) {
      State sn = testing::with_kappa(s, Ordinal::finite(n));
      ASSERT_EQ(sat(sn, f, EvalDomain::surrogate(n)), testing::NaiveEval(sn, nullptr, n).sat(f))
          << to_text(f) << " n=" << n;
    }
  }
}

TEST(EvalDifferential, BinaryBoundedSentences) {
  testing::Rng rng(43);
  constexpr std::uint64_t kBound = 13;
  for (int i = 0; i < 1500; ++i) {
    testing::FormulaGen gen{rng, 3, 12, true, 9};
    Formula f = bounded_sentence(gen, kBound);
    State s0 = testing::gen_state(rng);
    State s1 = testing::gen_state(rng);
    bool naive = testing::NaiveEval(s0, &s1, kBound + 1).sat(f);
    ASSERT_EQ(sat2(s0, s1, BinaryFormula{f}, EvalDomain::omega()), naive) << to_text(f);
  }
}

TEST(EvalProperty, ProbeScaleDoesNotChangeVerdicts) {
  testing::Rng rng(44);
  for (int i = 0; i < 2000; ++i) {
    testing::FormulaGen gen{rng, 3, 12, false, 9};
    Formula f = gen.sentence();
    State s = testing::gen_state(rng);
    bool base = sat(s, f, EvalDomain::omega());
    for (std::uint64_t scale : {2u, 5u}) {
      EvalOptions o;
      o.probe_scale = scale;
      ASSERT_EQ(sat(s, f, EvalDomain::omega(), o), base) << to_text(f) << " scale " << scale;
    }
  }
}

TEST(EvalProperty, LogicalAxioms) {
  testing::Rng rng(45);
  for (int i = 0; i < 1500; ++i) {
    testing::FormulaGen gen{rng, 2, 12, false, 6};
    Formula a = gen.sentence();
    Formula b = gen.sentence();
    State s = testing::gen_state(rng);
    Evaluator ev(s, EvalDomain::omega());
    EXPECT_FALSE(ev.sat(Formula::conj(a, Formula::negate(a))));
    EXPECT_EQ(ev.sat(Formula::negate(Formula::negate(a))), ev.sat(a));
    EXPECT_EQ(ev.sat(Formula::negate(Formula::conj(a, b))),
              ev.sat(Formula::disj(Formula::negate(a), Formula::negate(b))));
    EXPECT_EQ(ev.sat(Formula::negate(Formula::disj(a, b))),
              ev.sat(Formula::conj(Formula::negate(a), Formula::negate(b))));
    // exists-introduction: a witness below the support proves the existential.
    Formula open = Formula::conj(Formula::apply("U", {Term::variable("w")}), a);
    for (std::uint64_t k = 0; k < 14; ++k) {
      if (ev.sat(substitute(open, "w", Ordinal::finite(k)))) {
        EXPECT_TRUE(ev.sat(Formula::exists("w", open)));
        break;
      }
    }
  }
}

Formula to_copy(const Formula& f, Copy c) {
  return map_symbols(f, [c](const SymbolRef& r) {
    if (r.name == "in") return SymbolRef{r.name, Copy::Zero};
    return SymbolRef{r.name, c};
  });
}

TEST(EvalProperty, Sat2WithOneCopyIsSat) {
  testing::Rng rng(46);
  for (int i = 0; i < 1500; ++i) {
    testing::FormulaGen gen{rng, 3, 12, false, 8};
    Formula f = gen.sentence();
    State s0 = testing::gen_state(rng);
    State s1 = testing::gen_state(rng);
    EXPECT_EQ(sat2(s0, s1, BinaryFormula{to_copy(f, Copy::Zero)}, EvalDomain::omega()), sat(s0, f, EvalDomain::omega()));
    EXPECT_EQ(sat2(s0, s1, BinaryFormula{to_copy(f, Copy::One)}, EvalDomain::omega()), sat(s1, f, EvalDomain::omega()));
  }
}

TEST(EvalProperty, DefinedSetMatchesPointwise) {
  testing::Rng rng(47);
  for (int i = 0; i < 500; ++i) {
    testing::FormulaGen gen{rng, 2, 12, false, 6};
    Formula f = Formula::disj(Formula::apply(rng.coin() ? "U" : "V", {Term::variable("x")}),
                              Formula::conj(gen.sentence(), Formula::apply("B", {Term::variable("x"), Term::constant("c")})));
    State s = testing::gen_state(rng);
    OrdinalSet d = defined_set(s, f, EvalDomain::omega());
    for (std::uint64_t k = 0; k < 30; ++k) {
      EXPECT_EQ(d.contains(Ordinal::finite(k)), sat(s, substitute(f, "x", Ordinal::finite(k)), EvalDomain::omega()));
    }
  }
}

}  // namespace
}  // namespace gseq
