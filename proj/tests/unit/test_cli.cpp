#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "qlopt/instance_io.hpp"
#include "qlopt/solution_io.hpp"
#include "qlopt_cli/cli.hpp"
#include "reference.hpp"

namespace qlopt::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qlopt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_text_file(path("example.txt"), testing::worked_example_text());
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, EnumerateWorkedExample) {
  const auto r = run({"enumerate", path("example.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find("found:")),
            "{\"bits\":\"001\",\"objective\":9}\n{\"bits\":\"110\",\"objective\":0}\n"
            "solutions: 2\nmu_d: 3.000000\nmu_obj: 4.500000\n");
  EXPECT_NE(r.out.find("exhausted: yes"), std::string::npos);
}

TEST_F(CliTest, EnumerateZeroInstanceAndSingleton) {
  write_text_file(path("zero.txt"), "1\n3 0\n");
  const auto r = run({"enumerate", path("zero.txt"), "--out", path("zero.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("solutions: 8\n"), std::string::npos);
  EXPECT_NE(r.out.find("mu_obj: 0.000000\n"), std::string::npos);
  EXPECT_EQ(parse_solutions(read_text_file(path("zero.jsonl"))).size(), 8U);

  write_text_file(path("one.txt"), "1\n1 1\n1 1 5\n");
  const auto s = run({"enumerate", path("one.txt")});
  EXPECT_NE(s.out.find("mu_d: n/a\n"), std::string::npos);
  EXPECT_NE(s.out.find("mu_obj: 5.000000\n"), std::string::npos);
}

TEST_F(CliTest, EnumerateMatchesOracleByteForByte) {
  ASSERT_EQ(run({"generate", "--n", "12", "--m", "30", "--seed", "5", "--out", path("g12.txt")}).code, 0);
  const auto q = read_instance_file(path("g12.txt"))[0];
  ASSERT_EQ(run({"enumerate", path("g12.txt"), "--out", path("cp.jsonl")}).code, 0);
  ASSERT_EQ(run({"oracle", path("g12.txt"), "--out", path("oracle.jsonl")}).code, 0);
  const auto cp = read_text_file(path("cp.jsonl"));
  EXPECT_EQ(cp, read_text_file(path("oracle.jsonl")));
  EXPECT_FALSE(parse_solutions(cp, &q).empty());
}

TEST_F(CliTest, OracleWorkedExampleAndZero) {
  const auto r = run({"oracle", path("example.txt")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '{'), 2);
  EXPECT_NE(r.out.find("global: 001 9\n"), std::string::npos);
  write_text_file(path("zero.txt"), "1\n3 0\n");
  const auto zero = run({"oracle", path("zero.txt")});
  EXPECT_EQ(std::count(zero.out.begin(), zero.out.end(), '{'), 8);
}

TEST_F(CliTest, ModelExport) {
  ASSERT_EQ(run({"enumerate", path("example.txt"), "--model-out", path("model.lp")}).code, 0);
  EXPECT_NE(read_text_file(path("model.lp")).find("Binary"), std::string::npos);
}

TEST_F(CliTest, SampleGreedyAndCompare) {
  ASSERT_EQ(run({"generate", "--n", "100", "--m", "500", "--out", path("g.txt")}).code, 0);
  const auto q = read_instance_file(path("g.txt"))[0];
  const auto g = run({"sample-greedy", path("g.txt"), "--iters", "2000", "--out", path("greedy.jsonl")});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_FALSE(parse_solutions(read_text_file(path("greedy.jsonl")), &q).empty());
  EXPECT_EQ(run({"sample-greedy", path("g.txt")}).code, kExitInvalidArgument);

  const auto c = run({"compare", path("g.txt"), "--iters", "2000", "--runs", "2", "--out", path("cmp.jsonl")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("mu_d ratio (cp/greedy): "), std::string::npos);
  EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 4);
}

TEST_F(CliTest, TransformWritesMirroredMatrices) {
  write_text_file(path("sols.jsonl"), "{\"bits\":\"001\",\"objective\":9}\n{\"bits\":\"101\",\"objective\":-7}\n");
  const auto r = run({"transform", path("example.txt"), "--solutions", path("sols.jsonl"), "--delta", "2",
                      "--out-q1", path("q1.txt"), "--out-q2", path("q2.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "samples: 2\ndelta: 2\nadjusted: 2\n");
  const auto q1 = read_instance_file(path("q1.txt"))[0];
  const auto q2 = read_instance_file(path("q2.txt"))[0];
  EXPECT_EQ(std::vector<Coef>(q1.linear().begin(), q1.linear().end()), (std::vector<Coef>{-4, -10, 11}));
  EXPECT_EQ(std::vector<Coef>(q2.linear().begin(), q2.linear().end()), (std::vector<Coef>{-4, -6, 7}));

  EXPECT_EQ(run({"transform", path("example.txt"), "--solutions", path("sols.jsonl"), "--delta-pct", "2"}).code,
            kExitInvalidArgument);
  EXPECT_EQ(run({"transform", path("example.txt"), "--solutions", path("sols.jsonl")}).code, kExitInvalidArgument);
  write_text_file(path("bad.jsonl"), "{\"bits\":\"001\",\"objective\":8}\n");
  EXPECT_EQ(run({"transform", path("example.txt"), "--solutions", path("bad.jsonl"), "--delta", "2"}).code,
            kExitVerification);
}

TEST_F(CliTest, TTest) {
  write_text_file(path("r.jsonl"),
                  "{\"improv_q1\":1,\"improv_q2\":0}\n{\"improv_q1\":-1,\"improv_q2\":0}\n"
                  "{\"improv_q1\":2,\"improv_q2\":0}\n{\"improv_q1\":0,\"improv_q2\":0}\n");
  const auto r = run({"ttest", path("r.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("t: 0.774596669241\n"), std::string::npos);
  EXPECT_NE(r.out.find("df: 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("not significant"), std::string::npos);

  write_text_file(path("same.jsonl"), "{\"improv_q1\":0.5,\"improv_q2\":0.5}\n{\"improv_q1\":1,\"improv_q2\":1}\n");
  const auto s = run({"ttest", path("same.jsonl")});
  ASSERT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("t: 0.000000000000\n"), std::string::npos);
  EXPECT_NE(s.out.find("verdict: not significant"), std::string::npos);

  write_text_file(path("one.jsonl"), "{\"improv_q1\":1,\"improv_q2\":0}\n");
  EXPECT_EQ(run({"ttest", path("one.jsonl")}).code, kExitInvalidArgument);
  write_text_file(path("broken.jsonl"), "{\"improv_q1\":1,\n");
  EXPECT_EQ(run({"ttest", path("broken.jsonl")}).code, kExitParse);
}

TEST_F(CliTest, GridEndToEnd) {
  ASSERT_EQ(run({"generate", "--n", "60", "--m", "300", "--count", "2", "--out", path("b.txt")}).code, 0);
  const std::vector<std::string> base{"grid", path("b.txt"), "--iters", "200", "--enum-iters", "3000"};
  auto a_args = base;
  a_args.insert(a_args.end(), {"--out", path("a.jsonl")});
  auto b_args = base;
  b_args.insert(b_args.end(), {"--out", path("b.jsonl"), "--jobs", "3"});
  const auto a = run(a_args);
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(run(b_args).code, 0);
  EXPECT_EQ(read_text_file(path("a.jsonl")), read_text_file(path("b.jsonl")));
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 3);
}

TEST_F(CliTest, GenerateIsDeterministic) {
  const auto a = run({"generate", "--n", "20", "--m", "40", "--seed", "9"});
  const auto b = run({"generate", "--n", "20", "--m", "40", "--seed", "9"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto q = parse_instances(a.out)[0];
  EXPECT_EQ(q.pairs().size(), 40U);
  EXPECT_EQ(run({"generate", "--n", "3", "--m", "4"}).code, kExitInvalidArgument);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"enumerate", path("missing.txt")}).code, kExitIo);
  write_text_file(path("broken.txt"), "1\n3 2\n1 1 -4\n");
  const auto parse = run({"enumerate", path("broken.txt")});
  EXPECT_EQ(parse.code, kExitParse);
  EXPECT_NE(parse.err.find("line 4"), std::string::npos);
  ASSERT_EQ(run({"generate", "--n", "30", "--m", "10", "--out", path("big.txt")}).code, 0);
  EXPECT_EQ(run({"oracle", path("big.txt")}).code, kExitCap);
  EXPECT_EQ(run({"enumerate", path("example.txt"), "--iters", "0"}).code, kExitInvalidArgument);
  EXPECT_EQ(run({"enumerate", path("example.txt"), "--index", "1"}).code, kExitInvalidArgument);
  EXPECT_EQ(run({"bogus"}).code, kExitInvalidArgument);
  EXPECT_EQ(run({}).code, kExitInvalidArgument);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, NegateAndStrictFlags) {
  const auto r = run({"oracle", path("example.txt"), "--negate"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("global: 111 11\n"), std::string::npos);
  write_text_file(path("zero.txt"), "1\n3 0\n");
  EXPECT_NE(run({"enumerate", path("zero.txt"), "--strict"}).out.find("solutions: 0\n"), std::string::npos);
}

TEST(DecimalRatio, Parsing) {
  EXPECT_EQ(parse_decimal_ratio("0.975"), (Ratio{39, 40}));
  EXPECT_EQ(parse_decimal_ratio(".5"), (Ratio{1, 2}));
  EXPECT_EQ(parse_decimal_ratio("1"), (Ratio{1, 1}));
  EXPECT_EQ(parse_decimal_ratio("-0.25"), (Ratio{-1, 4}));
  EXPECT_THROW(parse_decimal_ratio("abc"), std::invalid_argument);
  EXPECT_THROW(parse_decimal_ratio("."), std::invalid_argument);
  EXPECT_THROW(parse_decimal_ratio("1.2.3"), std::invalid_argument);
}

}  // namespace
}  // namespace qlopt::cli
