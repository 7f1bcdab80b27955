#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <stdexcept>

#include "qlopt/errors.hpp"
#include "qlopt/instance_io.hpp"
#include "reference.hpp"

namespace qlopt {
namespace {

TEST(ParseInstances, DoublesOffDiagonalEntries) {
  const auto list = parse_instances("1\n3 2\n1 1 -4\n1 2 6\n");
  ASSERT_EQ(list.size(), 1U);
  const auto& q = list[0];
  EXPECT_EQ(q.size(), 3U);
  EXPECT_EQ(std::vector<Coef>(q.linear().begin(), q.linear().end()), (std::vector<Coef>{-4, 0, 0}));
  EXPECT_EQ(q.pair(0, 1), 12);
}

TEST(ParseInstances, EmptyInstance) {
  const auto list = parse_instances("1\n3 0\n");
  ASSERT_EQ(list.size(), 1U);
  EXPECT_EQ(list[0], QuboInstance::zero(3));
}

TEST(ParseInstances, WorkedExampleFile) {
  const auto list = parse_instances(testing::worked_example_text());
  ASSERT_EQ(list.size(), 1U);
  EXPECT_EQ(list[0], testing::worked_example());
  EXPECT_EQ(objective_value(list[0], testing::bits_of("001")), 9);
}

TEST(ParseInstances, FoldsLowerTriangleAndAccumulates) {
  const auto q = parse_instances("1\n2 3\n2 1 3\n1 2 1\n1 1 5\n")[0];
  EXPECT_EQ(q.pair(0, 1), 8);
  EXPECT_EQ(q.linear(0), 5);
}

TEST(ParseInstances, CancellingEntriesLeaveNoPair) {
  const auto q = parse_instances("1\n2 2\n1 2 3\n2 1 -3\n")[0];
  EXPECT_TRUE(q.pairs().empty());
}

TEST(ParseInstances, Negate) {
  const auto q = parse_instances(testing::worked_example_text(), ParseOptions{true})[0];
  EXPECT_EQ(q.linear(2), -9);
  EXPECT_EQ(q.pair(0, 1), -12);
}

TEST(ParseInstances, MultipleInstancesInFileOrder) {
  const auto list = parse_instances("2\n2 1\n1 1 1\n3 1\n3 3 -2\n");
  ASSERT_EQ(list.size(), 2U);
  EXPECT_EQ(list[0].size(), 2U);
  EXPECT_EQ(list[1].linear(2), -2);
}

int error_line(const std::string& text) {
  try {
    parse_instances(text);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

TEST(ParseInstances, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("x\n"), 1);
  EXPECT_EQ(error_line("1\n3 2\n1 1 -4\n"), 4);            // input ends before the declared triplets
  EXPECT_EQ(error_line("1\n3 1\n1 4 2\n"), 3);             // index out of range
  EXPECT_EQ(error_line("1\n3 1\n1 1 2\n2 2 2\n"), 4);      // trailing data
  EXPECT_EQ(error_line("1\n3 1\n0 1 2\n"), 3);
  EXPECT_EQ(error_line("1\n3\n"), 3);
  EXPECT_EQ(error_line("1\n3 1\n1 1 1.5\n"), 3);
}

TEST(WriteInstance, WorkedExampleRoundTrip) {
  const auto q = testing::worked_example();
  EXPECT_EQ(parse_instances(write_instance(q))[0], q);
}

TEST(WriteInstance, RejectsEmptyAndOddPairs) {
  EXPECT_THROW(write_instance(QuboInstance::zero(0)), std::invalid_argument);
  EXPECT_THROW(write_instance(QuboInstance(2, {0, 0}, {{0, 1, 3}})), std::invalid_argument);
}

TEST(WriteInstance, RandomRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto q = testing::random_instance(40, 0.3, seed);
    const auto text = write_instance(q);
    const auto back = parse_instances(text)[0];
    ASSERT_EQ(back, q);
    ASSERT_EQ(write_instance(back), text);
  }
}

TEST(GenerateInstance, ZeroConfig) {
  GeneratorConfig c;
  c.n = 3;
  c.pair_count = 0;
  c.diagonal_density = 0.0;
  c.seed = 42;
  EXPECT_EQ(generate_instance(c), QuboInstance::zero(3));
}

TEST(GenerateInstance, DeterministicInSeed) {
  GeneratorConfig c;
  c.n = 50;
  c.pair_count = 200;
  c.seed = 3;
  EXPECT_EQ(generate_instance(c), generate_instance(c));
  EXPECT_EQ(generate_instance(c).name(), "gen_50_200_3");
}

TEST(GenerateInstance, SeedsGiveDifferentPairSets) {
  GeneratorConfig c;
  c.n = 10;
  c.pair_count = 20;
  c.seed = 1;
  const auto a = generate_instance(c);
  c.seed = 2;
  const auto b = generate_instance(c);
  std::set<std::pair<std::size_t, std::size_t>> ka, kb;
  for (const auto& p : a.pairs()) ka.insert({p.i, p.j});
  for (const auto& p : b.pairs()) kb.insert({p.i, p.j});
  EXPECT_NE(ka, kb);
}

TEST(GenerateInstance, CountsAndRanges) {
  for (double density : {0.0, 0.5, 1.0}) {
    GeneratorConfig c;
    c.n = 60;
    c.pair_count = 300;
    c.lo = -7;
    c.hi = 5;
    c.diagonal_density = density;
    c.seed = 17;
    const auto q = generate_instance(c);
    EXPECT_EQ(q.pairs().size(), 300U);
    std::size_t diagonal = 0;
    for (const auto v : q.linear()) {
      if (v == 0) continue;
      ++diagonal;
      EXPECT_GE(v, -7);
      EXPECT_LE(v, 5);
    }
    EXPECT_EQ(diagonal, static_cast<std::size_t>(density * 60));
    for (const auto& p : q.pairs()) {
      EXPECT_NE(p.value, 0);
      EXPECT_EQ(p.value % 2, 0);
      EXPECT_GE(p.value, -14);
      EXPECT_LE(p.value, 10);
    }
    EXPECT_EQ(parse_instances(write_instance(q))[0], q);
  }
}

TEST(GenerateInstance, RejectsInfeasible) {
  GeneratorConfig c;
  c.n = 4;
  c.pair_count = 7;
  EXPECT_THROW(generate_instance(c), std::invalid_argument);
  c.pair_count = 6;
  c.lo = 5;
  c.hi = 1;
  EXPECT_THROW(generate_instance(c), std::invalid_argument);
  c.lo = 0;
  c.hi = 0;
  EXPECT_THROW(generate_instance(c), std::invalid_argument);
}

TEST(InstanceFiles, ReadNamesFromStemAndReportsMissingFile) {
  const auto dir = std::filesystem::temp_directory_path() / "qlopt_io_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "example.txt", testing::worked_example_text());
  const auto list = read_instance_file(dir / "example.txt");
  ASSERT_EQ(list.size(), 1U);
  EXPECT_EQ(list[0].name(), "example");
  EXPECT_THROW(read_instance_file(dir / "missing.txt"), IoError);
}

}  // namespace
}  // namespace qlopt
