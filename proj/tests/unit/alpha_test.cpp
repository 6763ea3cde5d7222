#include <gtest/gtest.h>

#include "gen.hpp"
#include "gseq/alpha.hpp"
#include "gseq/error.hpp"
#include "gseq/validator.hpp"
#include "paths.hpp"
#include "tm_sim.hpp"

namespace gseq {
namespace {

AlphaMachineSpec program(const char* file) { return parse_alpha_program(testing::read_data(file)); }

OrdinalSet code(std::uint64_t k, const OrdinalSet& oracle = OrdinalSet::empty()) {
  return encode_pair_of_sets(OrdinalSet::of_naturals({k}), oracle);
}

TEST(PairCoding, Values) {
  EXPECT_EQ(code(4), OrdinalSet::of_naturals({16}));
  EXPECT_EQ(code(0, OrdinalSet::of_naturals({0, 1, 3})), OrdinalSet::of_naturals({0, 2, 3, 10}));
  auto [x, o] = decode_pair_of_sets(OrdinalSet::of_naturals({0, 2, 3, 10}));
  EXPECT_EQ(x, OrdinalSet::of_naturals({0}));
  EXPECT_EQ(o, OrdinalSet::of_naturals({0, 1, 3}));
  EXPECT_THROW(encode_pair_of_sets(OrdinalSet::full(), OrdinalSet::empty()), Error);
}

TEST(PairCodingProperty, RoundTrip) {
  testing::Rng rng(81);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::uint64_t> xs, os;
    for (std::uint64_t a = 0; a < 20; ++a) {
      if (rng.coin(0.2)) xs.push_back(a);
      if (rng.coin(0.2)) os.push_back(a);
    }
    auto back = decode_pair_of_sets(encode_pair_of_sets(OrdinalSet::of_naturals(xs), OrdinalSet::of_naturals(os)));
    EXPECT_EQ(back.first, OrdinalSet::of_naturals(xs));
    EXPECT_EQ(back.second, OrdinalSet::of_naturals(os));
  }
}

TEST(AlphaMachine, ParityMarksEvenPositions) {
  AlphaMachineSpec p = program("parity.alpha");
  AlphaResult r = run_alpha_machine(p, code(4));
  ASSERT_EQ(r.kind, AlphaResult::Kind::Halted);
  EXPECT_EQ(r.output, OrdinalSet::of_naturals({16, 17}));
  AlphaResult odd = run_alpha_machine(p, code(3));
  ASSERT_EQ(odd.kind, AlphaResult::Kind::Halted);
  EXPECT_EQ(odd.output, OrdinalSet::of_naturals({9}));
}

TEST(AlphaMachine, RightForeverDoesNotHalt) {
  AlphaMachineSpec s;
  s.program = parse_tm("tm right\nstates: 2\n(0, 0) -> (0, 0, R)\n(0, 1) -> (0, 1, R)\n");
  AlphaBudget b;
  b.max_steps = 500;
  AlphaResult r = run_alpha_machine(s, OrdinalSet::empty(), b);
  EXPECT_EQ(r.kind, AlphaResult::Kind::NotHalted);
  EXPECT_EQ(r.steps, 500u);
  b.follow_limit = true;
  AlphaResult c = run_alpha_machine(s, OrdinalSet::empty(), b);
  EXPECT_EQ(c.kind, AlphaResult::Kind::Crashed);
}

TEST(AlphaMachine, BounceHasALimitConfiguration) {
  AlphaMachineSpec s;
  s.program = parse_tm("tm bounce\nstates: 3\n(0, 0) -> (1, 0, R)\n(0, 1) -> (1, 1, R)\n(1, 0) -> (0, 0, L)\n(1, 1) -> (0, 1, L)\n");
  AlphaBudget b;
  b.max_steps = 200;
  b.follow_limit = true;
  AlphaResult r = run_alpha_machine(s, OrdinalSet::empty(), b);
  EXPECT_EQ(r.kind, AlphaResult::Kind::NotHalted);
  ASSERT_TRUE(r.limit.has_value());
  EXPECT_EQ(r.limit->head, Ordinal::finite(0));
  EXPECT_EQ(r.limit->state, 0u);
  EXPECT_EQ(r.limit->clock, Ordinal::omega());
}

TEST(AlphaMachine, OracleRead) {
  AlphaMachineSpec s;
  // Walks to cell 3 and halts with a mark there only if 3 is in the oracle.
  s.program = parse_tm(
      "tm probe\nstates: 6\n"
      "(0, 0) -> (1, 0, R)\n(0, 1) -> (1, 1, R)\n"
      "(1, 0) -> (2, 0, R)\n(1, 1) -> (2, 1, R)\n"
      "(2, 0) -> (3, 0, R)\n(2, 1) -> (3, 1, R)\n"
      "(3, oracle) -> (4, 5)\n"
      "(4, 0) -> (5, 1, R)\n(4, 1) -> (5, 1, R)\n");
  AlphaResult yes = run_alpha_machine(s, OrdinalSet::of_naturals({3}));
  ASSERT_EQ(yes.kind, AlphaResult::Kind::Halted);
  EXPECT_EQ(yes.output, OrdinalSet::of_naturals({3}));
  AlphaResult no = run_alpha_machine(s, OrdinalSet::of_naturals({1}));
  ASSERT_EQ(no.kind, AlphaResult::Kind::Halted);
  EXPECT_EQ(no.output, OrdinalSet::of_naturals({1}));
}

TEST(AlphaMachine, ParameterBranch) {
  AlphaResult r = run_alpha_machine(program("mark.alpha"), OrdinalSet::empty());
  ASSERT_EQ(r.kind, AlphaResult::Kind::Halted);
  EXPECT_EQ(r.output, OrdinalSet::of_naturals({5}));
}

TEST(AlphaMachineProperty, OracleFreeAgreesWithPlainTm) {
  testing::Rng rng(82);
  int machines = 0;
  while (machines < 5) {
    TmSpec t = testing::gen_tm(rng, 2 + rng.below(3), "r");
    AlphaMachineSpec s;
    s.program = t;
    ++machines;
    for (std::uint64_t k = 0; k < 16; ++k) {
      auto direct = testing::simulate_tm(t, {k * k}, 400);
      AlphaBudget b;
      b.max_steps = 400;
      AlphaResult r = run_alpha_machine(s, code(k), b);
      EXPECT_EQ(r.kind == AlphaResult::Kind::Halted, direct.halted);
      if (direct.halted) {
        EXPECT_EQ(r.output, OrdinalSet::of_naturals({direct.tape.begin(), direct.tape.end()}));
        EXPECT_EQ(r.steps, direct.steps);
      }
    }
  }
}

TEST(Simulation, ParameterFreeIsAlsoGSeqA) {
  MachineSpec m = simulate_alpha_as_gseqap(program("parity.alpha"));
  EXPECT_TRUE(m.params.empty());
  MachineSpec as_a = m;
  as_a.flavor = Flavor::GSeqA;
  EXPECT_TRUE(validate(as_a).empty());
  MachineSpec p = simulate_alpha_as_gseqap(program("mark.alpha"));
  EXPECT_EQ(p.flavor, Flavor::GSeqAP);
  EXPECT_TRUE(validate(p).empty());
}

TEST(Crosscheck, ParityAgreesOnAllInputs) {
  AlphaMachineSpec p = program("parity.alpha");
  std::vector<OrdinalSet> inputs;
  for (std::uint64_t k = 0; k <= 12; ++k) inputs.push_back(code(k));
  AlphaBudget b;
  b.max_steps = 2000;
  for (const auto& row : crosscheck(p, inputs, b)) {
    EXPECT_TRUE(row.agree) << row.input.to_string();
    EXPECT_EQ(row.alpha.kind, AlphaResult::Kind::Halted);
    EXPECT_TRUE(row.gseq_short);
  }
}

TEST(Crosscheck, NonHaltingRowsAgreeToo) {
  AlphaMachineSpec p = program("oddhalter.alpha");
  AlphaBudget b;
  b.max_steps = 1500;
  std::vector<OrdinalSet> inputs{code(1, OrdinalSet::of_naturals({3})), code(2, OrdinalSet::of_naturals({3}))};
  auto rows = crosscheck(p, inputs, b);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].alpha.kind, AlphaResult::Kind::Halted);
  EXPECT_EQ(rows[1].alpha.kind, AlphaResult::Kind::NotHalted);
  EXPECT_FALSE(rows[1].gseq_short);
  EXPECT_TRUE(rows[0].agree && rows[1].agree);
}

}  // namespace
}  // namespace gseq
