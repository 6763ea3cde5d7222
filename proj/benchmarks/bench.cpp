#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "gseq/eval.hpp"
#include "gseq/parser.hpp"
#include "gseq/runtime.hpp"
#include "gseq/specfile.hpp"
#include "gseq/tm.hpp"
#include "gseq/transforms.hpp"
#include "gseq/validator.hpp"

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(GSEQ_BENCH_DATA) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

gseq::MachineSpec even() { return gseq::compile_tm(gseq::parse_tm(slurp("even.tm"))); }

void BM_EvalRankThree(benchmark::State& st) {
  gseq::MachineSpec m = even();
  gseq::State s = gseq::State::parse("constants: h=0 t=0 e=0; unary: In={1,5,9} Out=co{2,3}", m.kappa);
  gseq::Formula f = gseq::parse_formula("forall x. exists y. forall z. (In(x) & x < y) | Out(z) | y = z", m.sigma, false);
  for (auto _ : st) {
    benchmark::DoNotOptimize(gseq::sat(s, f, gseq::EvalDomain::omega(), m.eval_options()));
  }
}
BENCHMARK(BM_EvalRankThree);

void BM_RunEven(benchmark::State& st) {
  gseq::ValidatedMachine vm = gseq::check_machine(even());
  auto k = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) {
    benchmark::DoNotOptimize(gseq::run(vm, gseq::OrdinalSet::of_naturals({k})));
  }
}
BENCHMARK(BM_RunEven)->Arg(4)->Arg(16)->Arg(64);

void BM_Dovetail(benchmark::State& st) {
  gseq::ValidatedMachine vm = gseq::check_machine(gseq::dovetail(even()));
  gseq::Budget b;
  b.max_steps_per_segment = static_cast<std::uint64_t>(st.range(0));
  b.window = 1 << 16;
  for (auto _ : st) {
    benchmark::DoNotOptimize(gseq::run(vm, gseq::OrdinalSet::empty(), b));
  }
}
BENCHMARK(BM_Dovetail)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
