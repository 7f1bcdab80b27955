#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "qlopt/gain_state.hpp"
#include "qlopt/qubo.hpp"
#include "reference.hpp"

namespace qlopt {
namespace {

using testing::bits_of;
using testing::worked_example;

TEST(ObjectiveValue, WorkedExampleOptimum) {
  EXPECT_EQ(objective_value(worked_example(), bits_of("001")), 9);
}

TEST(ObjectiveValue, WorkedExampleNeighbours) {
  const auto q = worked_example();
  EXPECT_EQ(objective_value(q, bits_of("101")), -7);
  EXPECT_EQ(objective_value(q, bits_of("011")), -7);
  EXPECT_EQ(objective_value(q, bits_of("000")), 0);
}

TEST(ObjectiveValue, ZeroMatrix) {
  const auto q = QuboInstance::zero(3);
  for (const char* s : {"000", "101", "111"}) EXPECT_EQ(objective_value(q, bits_of(s)), 0);
}

TEST(ObjectiveValue, RejectsLengthMismatchAndNonBinary) {
  const auto q = worked_example();
  EXPECT_THROW(objective_value(q, bits_of("01")), std::invalid_argument);
  EXPECT_THROW(objective_value(q, std::vector<std::uint8_t>{0, 2, 1}), std::invalid_argument);
}

TEST(ObjectiveValue, MatchesDenseReference) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto q = testing::random_instance(30, 0.3, seed);
    const testing::DenseMatrix dense(q);
    for (int k = 0; k < 20; ++k) {
      const auto x = testing::random_bits(q.size(), rng);
      ASSERT_EQ(objective_value(q, x), dense.objective(x));
    }
  }
}

TEST(QuboInstance, FoldsMergesAndDropsZeros) {
  const QuboInstance q(4, {1, 0, 0, 0}, {{2, 0, 5}, {0, 2, 3}, {1, 3, 4}, {3, 1, -4}});
  ASSERT_EQ(q.pairs().size(), 1U);
  EXPECT_EQ(q.pairs()[0], (PairTerm{0, 2, 8}));
  EXPECT_EQ(q.pair(2, 0), 8);
  EXPECT_EQ(q.pair(1, 3), 0);
  EXPECT_TRUE(q.neighbors(1).empty());
}

TEST(QuboInstance, RejectsDiagonalPairAndOutOfRange) {
  EXPECT_THROW(QuboInstance(2, {0, 0}, {{1, 1, 3}}), std::invalid_argument);
  EXPECT_THROW(QuboInstance(2, {0, 0}, {{0, 2, 3}}), std::out_of_range);
  EXPECT_THROW(QuboInstance(2, {0}, {}), std::invalid_argument);
}

TEST(QuboInstance, AdjacencyIsSymmetric) {
  const auto q = testing::random_instance(40, 0.2, 3);
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (const auto& nb : q.neighbors(i)) EXPECT_EQ(q.pair(nb.index, i), nb.coef);
  }
}

TEST(QuboInstance, EqualityIgnoresName) {
  auto a = worked_example();
  auto b = worked_example();
  b.set_name("other");
  EXPECT_EQ(a, b);
  EXPECT_NE(a, a.with_linear({0, 0, 0}));
}

TEST(LocalOptimum, WorkedExample) {
  const auto q = worked_example();
  EXPECT_TRUE(is_one_flip_local_optimum(q, bits_of("001")));
  EXPECT_FALSE(is_one_flip_local_optimum(q, bits_of("000")));
  EXPECT_TRUE(is_one_flip_local_optimum(q, bits_of("110")));
}

TEST(LocalOptimum, ZeroMatrixAcceptsEverythingUnlessStrict) {
  const auto q = QuboInstance::zero(3);
  EXPECT_TRUE(is_one_flip_local_optimum(q, bits_of("010")));
  EXPECT_FALSE(is_one_flip_local_optimum(q, bits_of("010"), Optimality::Strict));
}

TEST(LocalOptimum, PredicateEqualsNeighbourEnumeration) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 2 + seed % 63;
    const auto q = testing::random_instance(n, 0.5, seed, 3);
    const testing::DenseMatrix dense(q);
    for (int k = 0; k < 50; ++k) {
      auto x = testing::random_bits(n, rng);
      // Bias toward optima so both outcomes are exercised.
      GainState s(q, x);
      if (k % 2) {
        for (std::size_t i = 0; i < n; ++i) {
          if (s.flip_delta(i) > 0) s.apply_flip(i);
        }
        x = s.bits();
      }
      ASSERT_EQ(is_one_flip_local_optimum(q, x), dense.is_local_optimum(x));
      ASSERT_EQ(is_one_flip_local_optimum(q, x, Optimality::Strict), dense.is_local_optimum(x, true));
    }
  }
}

TEST(Solution, CanonicalOrder) {
  const Solution a{bits_of("01"), 5};
  const Solution b{bits_of("10"), 5};
  const Solution c{bits_of("00"), 7};
  EXPECT_TRUE(canonical_less(c, a));
  EXPECT_TRUE(canonical_less(a, b));
  EXPECT_FALSE(canonical_less(b, a));
  EXPECT_EQ(to_bit_string(bits_of("0110")), "0110");
}

}  // namespace
}  // namespace qlopt
