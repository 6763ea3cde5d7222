#include <gtest/gtest.h>

#include "gen.hpp"
#include "gseq/bep.hpp"
#include "gseq/error.hpp"
#include "gseq/machine.hpp"
#include "gseq/parser.hpp"
#include "gseq/printer.hpp"
#include "gseq/specfile.hpp"
#include "gseq/tm.hpp"
#include "gseq/validator.hpp"
#include "paths.hpp"

namespace gseq {
namespace {

MachineSpec even_machine() { return compile_tm(parse_tm(testing::read_data("even.tm"))); }

TEST(CompileTm, InputWitnessPreservesInput) {
  MachineSpec m = even_machine();
  const Witness& w = m.tau.at("In");
  EXPECT_EQ(w.params, std::vector<std::string>{"x"});
  EXPECT_EQ(to_text(w.body, {"in", true}), "In(x)");
  for (const char* c : {"h", "t", "e"}) {
    EXPECT_EQ(to_text(m.defaults.at(c).body), m.defaults.at(c).params[0] + " = 0") << c;
  }
  EXPECT_EQ(m.flavor, Flavor::GSeqA);
  EXPECT_EQ(m.kappa, Ordinal::omega());
}

TEST(CompileTm, ECarriesTheOneLiteral) {
  MachineSpec m = even_machine();
  auto sc = support_constants(m.tau.at("e").body);
  EXPECT_TRUE(sc.count(Ordinal::finite(0)));
  EXPECT_TRUE(sc.count(Ordinal::finite(1)));
}

TEST(Machine, LoadState) {
  MachineSpec m = even_machine();
  State s = load_state(m, OrdinalSet::of_naturals({3}));
  EXPECT_EQ(s.unary("In"), OrdinalSet::of_naturals({3}));
  EXPECT_EQ(s.unary("Out"), OrdinalSet::empty());
  for (const char* c : {"h", "t", "e"}) EXPECT_EQ(s.constant(c), Ordinal::finite(0)) << c;
  EXPECT_EQ(load_state(m, OrdinalSet::empty()).unary("In"), OrdinalSet::empty());
}

TEST(Machine, SuccessorOfBitFlip) {
  MachineSpec m = read_spec_file(testing::data_path("bitflip.spec"));
  State s = load_state(m, OrdinalSet::of_naturals({0}));
  State t = successor(m, s);
  EXPECT_EQ(t.unary("In"), OrdinalSet::parse("co{0}"));
  EXPECT_EQ(t.unary("Out"), OrdinalSet::full());
  EXPECT_EQ(successor(m, t), s);
}

TEST(Machine, AssembleAndRecover) {
  MachineSpec m = even_machine();
  BinaryFormula tau = assemble_tau(m);
  auto back = recover_witnesses(tau.formula, m.sigma, Copy::One);
  EXPECT_EQ(back.size(), m.tau.size());
  for (const auto& [name, w] : m.tau) {
    ASSERT_TRUE(back.count(name)) << name;
    EXPECT_EQ(back.at(name).body, with_copy(w.body, Copy::Zero)) << name;
  }
  Formula d = assemble_defaults(m);
  auto dback = recover_witnesses(d, m.sigma, Copy::None);
  EXPECT_EQ(dback.size(), 3u);
  EXPECT_THROW(recover_witnesses(parse_formula("In(0)", m.sigma), m.sigma, Copy::None), Error);
}

TEST(Machine, NeedsDefault) {
  MachineSpec m = even_machine();
  EXPECT_FALSE(needs_default(m, m.sigma.at("In")));
  EXPECT_FALSE(needs_default(m, m.sigma.at("Out")));
  EXPECT_FALSE(needs_default(m, m.sigma.at("in")));
  EXPECT_TRUE(needs_default(m, m.sigma.at("h")));
  MachineSpec p = compile_program(parse_tm(testing::read_data("mark.alpha")));
  EXPECT_EQ(p.flavor, Flavor::GSeqAP);
  EXPECT_FALSE(needs_default(p, p.sigma.at("p0")));
}

TEST(Bep, CopyMachineDeltaIsConstant) {
  MachineSpec m = read_spec_file(testing::data_path("bitflip.spec"));
  ValidatedMachine vm = check_machine(m);
  std::vector<State> sample;
  for (std::uint64_t seed = 0; seed < 16; ++seed) sample.push_back(random_state(m, seed));
  BepReport r = diagnose_bep(vm, sample);
  EXPECT_EQ(r.verdict, BepReport::Verdict::Satisfied);
  EXPECT_TRUE(r.constant_delta);
  EXPECT_EQ(r.states, 16u);
}

TEST(Bep, EraseMachineHasNoBoundedWitness) {
  MachineSpec m = read_spec_file(testing::data_path("erase.spec"));
  ValidatedMachine vm = check_machine(m);
  std::vector<State> sample;
  for (const char* in : {"{}", "{3}", "{7}", "{2,9}", "co{4}"}) {
    State s(Ordinal::omega());
    s.set_unary("In", OrdinalSet::parse(in));
    s.set_unary("Out", OrdinalSet::empty());
    sample.push_back(s);
  }
  BepReport r = diagnose_bep(vm, sample);
  EXPECT_EQ(r.verdict, BepReport::Verdict::NotFoundWithinBound);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NE(r.witness->delta0, r.witness->delta1);
  EXPECT_NE(r.witness->s0.unary("In"), r.witness->s1.unary("In"));
}

TEST(Bep, EmptySampleIsVacuous) {
  ValidatedMachine vm = check_machine(even_machine());
  BepReport r = diagnose_bep(vm, {});
  EXPECT_EQ(r.verdict, BepReport::Verdict::Vacuous);
}

TEST(Bep, GroundTerms) {
  Signature s;
  s.add({"in", SymbolKind::Relation, 2, Role::Membership});
  s.add({"In", SymbolKind::Relation, 1, Role::In});
  s.add({"h", SymbolKind::Constant, 0, Role::None});
  auto depth0 = ground_terms(s, 1);
  auto depth1 = ground_terms(s, 2);
  EXPECT_FALSE(depth0.empty());
  EXPECT_GT(depth1.size(), depth0.size());
  for (const auto& t : depth0) EXPECT_TRUE(std::find(depth1.begin(), depth1.end(), t) != depth1.end());
}

}  // namespace
}  // namespace gseq
