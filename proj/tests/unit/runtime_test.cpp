#include <gtest/gtest.h>

#include <map>

#include <sstream>

#include "gen.hpp"
#include "gseq/error.hpp"
#include "gseq/eval.hpp"
#include "gseq/parser.hpp"
#include "gseq/runtime.hpp"
#include "gseq/specfile.hpp"
#include "gseq/transforms.hpp"
#include "gseq/validator.hpp"
#include "paths.hpp"
#include "tm_sim.hpp"

namespace gseq {
namespace {

ValidatedMachine compiled(const char* file) { return check_machine(compile_tm(parse_tm(testing::read_data(file)))); }

ValidatedMachine from_spec(const char* file) { return check_machine(read_spec_file(testing::data_path(file))); }

Budget small_budget() {
  Budget b;
  b.max_steps_per_segment = 400;
  b.max_limit_jumps = 3;
  return b;
}

TEST(Runtime, LoadAndUnload) {
  ValidatedMachine vm = compiled("even.tm");
  State s = load(vm, OrdinalSet::of_naturals({3}));
  EXPECT_EQ(s.unary("In"), OrdinalSet::of_naturals({3}));
  EXPECT_EQ(s.unary("Out"), OrdinalSet::empty());
  EXPECT_EQ(s.constant("h"), Ordinal::finite(0));
  s.set_unary("Out", OrdinalSet::of_naturals({0, 2}));
  EXPECT_EQ(unload(s, vm), OrdinalSet::of_naturals({0, 2}));
  s.set_unary("Out", OrdinalSet::parse("co{1}"));
  EXPECT_EQ(unload(s, vm), OrdinalSet::parse("co{1}"));
}

TEST(Runtime, StepBitFlipAndIdentity) {
  ValidatedMachine flipper = from_spec("bitflip.spec");
  State s = load(flipper, OrdinalSet::of_naturals({0}));
  EXPECT_EQ(step(flipper, s).unary("In"), OrdinalSet::parse("co{0}"));

  MachineSpec id = read_spec_file(testing::data_path("bitflip.spec"));
  id.name = "identity";
  id.tau["In"].body = parse_formula("In(x)", id.sigma, true);
  id.tau["Out"].body = parse_formula("Out(x)", id.sigma, true);
  ValidatedMachine idm = check_machine(id);
  testing::Rng rng(51);
  for (int i = 0; i < 50; ++i) {
    State r = random_state(id, rng.below(1000));
    EXPECT_EQ(step(idm, r), r);
  }
}

TEST(LimitRule, ClassifyTail) {
  TailVerdict p = classify_tail(2, {1, 2, 1, 2, 1, 2, 1, 2});
  EXPECT_EQ(p.tail, TailClass::Periodic);
  EXPECT_EQ(p.value, 1u);
  TailVerdict u = classify_tail(0, {1, 2, 3, 4, 5, 6, 7, 8});
  EXPECT_EQ(u.tail, TailClass::Unbounded);
  EXPECT_EQ(u.value, 0u);
  TailVerdict st = classify_tail(3, {7});
  EXPECT_EQ(st.tail, TailClass::Stable);
  EXPECT_EQ(st.value, 7u);
  EXPECT_EQ(classify_tail(9, {}).value, 9u);
  // changes alone cannot tell a settled cell from a wandering one
  EXPECT_EQ(classify_tail(5, {9, 7}).tail, TailClass::Unknown);
}

TEST(LimitRule, QuietCellIsStable) {
  ValidatedMachine vm = check_machine(read_spec_file(testing::data_path("settle.spec")));
  Budget b;
  b.max_steps_per_segment = 200;
  b.max_limit_jumps = 1;
  RunTrace t = run(vm, OrdinalSet::empty(), b);
  ASSERT_FALSE(t.limits.empty());
  const LimitRecord& at_w = t.limits.front();
  EXPECT_EQ(at_w.limit, Ordinal::omega());
  EXPECT_FALSE(at_w.verified);
  std::map<std::string, CellClass> cells;
  for (const auto& c : at_w.cells) cells[c.symbol] = c;
  EXPECT_EQ(cells.at("t").tail, TailClass::Stable);
  EXPECT_EQ(cells.at("t").value, 7u);
  EXPECT_EQ(cells.at("h").tail, TailClass::Unbounded);
  EXPECT_EQ(cells.at("h").value, 0u);
}

TEST(LimitRule, PointwiseMinimum) {
  Signature sigma = testing::gen_signature();
  State a = State::parse("constants: c=4; unary: U={1,2} V=co{3}; nary: B={(1,1),(2,2)}", Ordinal::omega());
  State b = State::parse("constants: c=2; unary: U={2,5} V=co{4}; nary: B={(2,2)}", Ordinal::omega());
  State m = pointwise_min({a, b}, sigma);
  EXPECT_EQ(m.constant("c"), Ordinal::finite(2));
  EXPECT_EQ(m.unary("U"), OrdinalSet::of_naturals({2}));
  EXPECT_EQ(m.unary("V"), OrdinalSet::parse("co{3,4}"));
  EXPECT_EQ(m.nary("B"), (TupleSet{{Ordinal::finite(2), Ordinal::finite(2)}}));
}

TEST(Runtime, BitFlipNeverTerminates) {
  ValidatedMachine vm = from_spec("bitflip.spec");
  Budget b = small_budget();
  RunTrace t = run(vm, OrdinalSet::of_naturals({1, 3}), b);
  EXPECT_EQ(t.outcome.kind, Outcome::Kind::OutOfBudget);
  ASSERT_GE(t.limits.size(), 2u);
  for (const auto& l : t.limits) {
    EXPECT_TRUE(l.via_cycle);
    EXPECT_EQ(l.period, 2u);
  }
  EXPECT_EQ(t.limits[0].limit, Ordinal::omega());
  EXPECT_EQ(t.limits[1].limit, Ordinal::parse("w*2"));
  EXPECT_FALSE(t.warnings.empty());
}

TEST(Runtime, CycleLimitMatchesUnrolledMinimum) {
  ValidatedMachine vm = from_spec("bitflip.spec");
  OrdinalSet input = OrdinalSet::of_naturals({1, 3});
  RunTrace t = run(vm, input, small_budget());
  std::vector<State> unrolled{load(vm, input)};
  for (int i = 0; i < 6; ++i) unrolled.push_back(step(vm, unrolled.back()));
  State brute = pointwise_min(unrolled, vm.spec.sigma);
  const Snapshot* at_omega = nullptr;
  for (const auto& s : t.snapshots) {
    if (s.stamp == Ordinal::omega()) at_omega = &s;
  }
  ASSERT_NE(at_omega, nullptr);
  EXPECT_EQ(at_omega->state, brute);
  EXPECT_EQ(brute.unary("In"), OrdinalSet::empty());
}

TEST(Runtime, ShortModeRejectsLimits) {
  ValidatedMachine vm = from_spec("bitflip.spec");
  RunTrace t = run(vm, OrdinalSet::of_naturals({0}), small_budget(), RunMode::Short);
  EXPECT_EQ(t.outcome.kind, Outcome::Kind::Failed);
  EXPECT_EQ(t.outcome.error, ErrorCode::NotShort);
}

TEST(Runtime, CompiledEvenMatchesDirectSimulation) {
  TmSpec tm = parse_tm(testing::read_data("even.tm"));
  ValidatedMachine vm = check_machine(compile_tm(tm));
  for (std::uint64_t k = 0; k < 16; k += 2) {
    auto direct = testing::simulate_tm(tm, {k}, 10000);
    ASSERT_TRUE(direct.halted);
    RunTrace t = run(vm, OrdinalSet::of_naturals({k}), {}, RunMode::Short);
    ASSERT_EQ(t.outcome.kind, Outcome::Kind::Terminated) << k;
    EXPECT_EQ(t.outcome.output, OrdinalSet::of_naturals({direct.tape.begin(), direct.tape.end()}));
    // Copy step, one step per TM move, and the final fixed point.
    EXPECT_EQ(t.outcome.length, Ordinal::finite(direct.steps + 2));
    EXPECT_TRUE(t.is_short(vm.spec.kappa));
  }
}

TEST(Runtime, StepSatisfiesTransitionSentence) {
  ValidatedMachine vm = compiled("even.tm");
  std::size_t checked = 0;
  RunHooks hooks;
  hooks.on_step = [&](const Ordinal&, const State& from, const State& to) {
    ++checked;
    EXPECT_TRUE(sat2(from, to, vm.tau, EvalDomain::omega(), vm.spec.eval_options()));
  };
  for (std::uint64_t k : {0u, 2u, 6u}) run(vm, OrdinalSet::of_naturals({k}), {}, RunMode::Full, hooks);
  EXPECT_GT(checked, 10u);
}

TEST(Runtime, TerminatedTraceClauses) {
  ValidatedMachine vm = compiled("even.tm");
  Budget b;
  b.snapshot_every_step = true;
  RunTrace t = run(vm, OrdinalSet::of_naturals({8}), b);
  ASSERT_TRUE(t.terminated());
  ASSERT_GE(t.snapshots.size(), 2u);
  EXPECT_EQ(t.snapshots.front().state, load(vm, OrdinalSet::of_naturals({8})));
  EXPECT_EQ(t.snapshots.front().stamp, Ordinal::finite(0));
  for (std::size_t i = 0; i + 1 < t.snapshots.size(); ++i) {
    EXPECT_EQ(t.snapshots[i + 1].stamp, t.snapshots[i].stamp.successor());
    EXPECT_NE(t.snapshots[i].state, t.snapshots[i + 1].state);
    EXPECT_EQ(step(vm, t.snapshots[i].state), t.snapshots[i + 1].state);
  }
  const State& last = t.snapshots.back().state;
  EXPECT_EQ(step(vm, last), last);
  EXPECT_EQ(t.outcome.length, t.snapshots.back().stamp.successor());
  EXPECT_EQ(t.outcome.output, unload(last, vm));
}

TEST(Runtime, Deterministic) {
  ValidatedMachine vm = from_spec("bitflip.spec");
  std::ostringstream a, b;
  RunHooks ha, hb;
  ha.trace = &a;
  hb.trace = &b;
  RunTrace ta = run(vm, OrdinalSet::of_naturals({2, 5}), small_budget(), RunMode::Full, ha);
  RunTrace tb = run(vm, OrdinalSet::of_naturals({2, 5}), small_budget(), RunMode::Full, hb);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_FALSE(a.str().empty());
  EXPECT_EQ(ta.steps, tb.steps);
  EXPECT_EQ(ta.outcome.kind, tb.outcome.kind);
  EXPECT_EQ(ta.warnings, tb.warnings);
  ASSERT_EQ(ta.snapshots.size(), tb.snapshots.size());
  for (std::size_t i = 0; i < ta.snapshots.size(); ++i) EXPECT_EQ(ta.snapshots[i].state, tb.snapshots[i].state);
}

TEST(Certify, IdentityFlipAndRefusal) {
  ValidatedMachine id = compiled("copy.tm");
  OrdinalSet b = OrdinalSet::of_naturals({1, 4});
  ReductionResult r = certify_reduction(id, b, b);
  EXPECT_TRUE(r.certified);
  EXPECT_TRUE(r.short_run);

  ValidatedMachine fl = check_machine(flip(compile_tm(parse_tm(testing::read_data("copy.tm")))));
  ReductionResult c = certify_reduction(fl, b, b.complement());
  EXPECT_TRUE(c.certified) << c.reason;

  ReductionResult wrong = certify_reduction(id, b, OrdinalSet::of_naturals({1}));
  EXPECT_FALSE(wrong.certified);
  EXPECT_EQ(wrong.actual, b);
  EXPECT_FALSE(wrong.reason.empty());
}

}  // namespace
}  // namespace gseq
