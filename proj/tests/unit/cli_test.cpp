#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gseq/specfile.hpp"
#include "paths.hpp"

namespace gseq {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return testing::data_path(name); }

std::string temp(const std::string& name) { return ::testing::TempDir() + "gseq_cli_" + name; }

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

TEST(Cli, ValidateCompiledTm) {
  Result r = cli({"validate", data("even.spec")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(has(r.out, "valid"));
}

TEST(Cli, ValidateMissingOut) {
  Result r = cli({"validate", data("missing_out.spec")});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_TRUE(has(r.out + r.err, "MissingDistinguished"));
  Result j = cli({"validate", data("missing_out.spec"), "--json"});
  EXPECT_EQ(j.code, cli::kError);
  EXPECT_TRUE(has(j.out, "\"valid\": false"));
}

TEST(Cli, ValidateMalformed) {
  Result r = cli({"validate", data("malformed.spec")});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_TRUE(has(r.err, "position"));
}

TEST(Cli, RunCompiledTm) {
  Result r = cli({"run", data("even.spec"), "--input", "{4}"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(has(r.out, "Terminated"));
  EXPECT_TRUE(has(r.out, "output: {4}"));
  EXPECT_TRUE(has(r.out, "length: 7"));
}

TEST(Cli, RunBudgetAndShortMode) {
  Result b = cli({"run", data("bitflip.spec"), "--input", "{1}", "--budget", "50", "--limit-jumps", "2"});
  EXPECT_EQ(b.code, cli::kBudget);
  EXPECT_TRUE(has(b.out, "OutOfBudget"));
  Result s = cli({"run", data("bitflip.spec"), "--input", "{1}", "--budget", "50", "--mode", "short"});
  EXPECT_EQ(s.code, cli::kError);
  EXPECT_TRUE(has(s.out + s.err, "NotShort"));
}

TEST(Cli, RunWritesTrace) {
  std::string path = temp("trace.ndjson");
  Result r = cli({"run", data("even.spec"), "--input", "{2}", "--trace", path});
  ASSERT_EQ(r.code, cli::kOk);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::string line;
  std::size_t lines = 0;
  bool snapshot = false;
  while (std::getline(in, line)) {
    ++lines;
    snapshot = snapshot || has(line, "snapshot");
  }
  EXPECT_GT(lines, 3u);
  EXPECT_TRUE(snapshot);
  std::remove(path.c_str());
}

TEST(Cli, Deterministic) {
  auto a = cli({"run", data("bitflip.spec"), "--input", "{0,3}", "--budget", "40", "--limit-jumps", "2", "--json"});
  auto b = cli({"run", data("bitflip.spec"), "--input", "{0,3}", "--budget", "40", "--limit-jumps", "2", "--json"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
}

TEST(Cli, TransformsProduceValidSpecs) {
  std::string even = temp("even.spec"), copy = temp("copy.spec"), flipped = temp("flip.spec"),
              composed = temp("compose.spec");
  ASSERT_EQ(cli({"transform", "compile-tm", data("even.tm"), "-o", even}).code, cli::kOk);
  ASSERT_EQ(cli({"transform", "compile-tm", data("copy.tm"), "-o", copy}).code, cli::kOk);
  ASSERT_EQ(cli({"transform", "flip", copy, "-o", flipped}).code, cli::kOk);
  ASSERT_EQ(cli({"transform", "compose", even, flipped, "-o", composed}).code, cli::kOk);
  for (const auto& p : {even, copy, flipped, composed}) {
    EXPECT_EQ(cli({"validate", p}).code, cli::kOk) << p;
    MachineSpec m = read_spec_file(p);
    EXPECT_EQ(parse_spec(print_spec(m)), m) << p;
  }
  Result r = cli({"run", composed, "--input", "{2}"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(has(r.out, "output: co{2}"));
}

TEST(Cli, ComposeKappaMismatch) {
  std::string a = temp("k6.spec"), b = temp("kw.spec");
  ASSERT_EQ(cli({"transform", "compile-tm", data("copy.tm"), "--kappa", "finite:6", "-o", a}).code, cli::kOk);
  ASSERT_EQ(cli({"transform", "compile-tm", data("copy.tm"), "-o", b}).code, cli::kOk);
  Result r = cli({"transform", "compose", a, b});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_TRUE(has(r.err, "KappaMismatch"));
}

TEST(Cli, LiftRunsInSurrogateMode) {
  std::string six = temp("even6.spec"), twelve = temp("even12.spec");
  ASSERT_EQ(cli({"transform", "compile-tm", data("even.tm"), "--kappa", "finite:6", "-o", six}).code, cli::kOk);
  ASSERT_EQ(cli({"transform", "lift", six, "--kappa", "finite:12", "-o", twelve}).code, cli::kOk);
  EXPECT_EQ(cli({"validate", twelve}).code, cli::kError);
  EXPECT_EQ(cli({"--allow-finite-kappa", "validate", twelve}).code, cli::kOk);
  Result r = cli({"--allow-finite-kappa", "run", twelve, "--input", "{4}"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(has(r.out, "output: {4}"));
}

TEST(Cli, DovetailRunLength) {
  std::string dv = temp("dovetail.spec");
  ASSERT_EQ(cli({"transform", "dovetail", data("even.spec"), "-o", dv}).code, cli::kOk);
  Result r = cli({"run", dv, "--input", "{}", "--budget", "600", "--window", "65536"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(has(r.out, "length: w+2"));
}

TEST(Cli, Crosscheck) {
  Result ok = cli({"crosscheck", data("parity.alpha"), "--inputs", "0..12"});
  EXPECT_EQ(ok.code, cli::kOk) << ok.err;
  EXPECT_TRUE(has(ok.out, "agree 13/13"));
  Result bad = cli({"crosscheck", data("parity.alpha"), "--inputs", "0..12", "--simulation", data("parity_corrupted.spec")});
  EXPECT_EQ(bad.code, cli::kDisagree);
  EXPECT_TRUE(has(bad.err, "disagreement on input"));
  Result empty = cli({"crosscheck", data("parity.alpha"), "--inputs", "5..4"});
  EXPECT_EQ(empty.code, cli::kOk);
  EXPECT_TRUE(has(empty.out, "agree 0/0"));
}

TEST(Cli, Eval) {
  Result t = cli({"eval", data("bitflip.spec"), "exists x. In(x) & ~Out(x)", "--state", "unary: In={3} Out={}"});
  EXPECT_EQ(t.code, cli::kOk) << t.err;
  EXPECT_TRUE(has(t.out, "true"));
  Result f = cli({"eval", data("bitflip.spec"), "forall x. In(x)", "--state", "unary: In={3} Out={}"});
  EXPECT_TRUE(has(f.out, "false"));
  EXPECT_EQ(cli({"eval", data("bitflip.spec"), "Foo(x)", "--state", "unary: In={} Out={}"}).code, cli::kError);
}

TEST(Cli, BadArguments) {
  EXPECT_NE(cli({"nosuch"}).code, cli::kOk);
  EXPECT_EQ(cli({"validate", "/nonexistent/file.spec"}).code, cli::kError);
}

}  // namespace
}  // namespace gseq
