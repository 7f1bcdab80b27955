#include <gtest/gtest.h>

#include "qlopt/big_m.hpp"
#include "qlopt/gain_state.hpp"
#include "reference.hpp"

namespace qlopt {
namespace {

TEST(BigM, TightRowBound) {
  const auto q = testing::worked_example();
  EXPECT_EQ(big_m(q, 0), 4 + 12 + 12 + 1);
  EXPECT_EQ(big_m(q, 1), 8 + 12 + 8 + 1);
  EXPECT_EQ(big_m(q, 2), 9 + 12 + 8 + 1);
}

TEST(BigM, ModelAgreesWithPredicate) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 6 + seed % 5;
    const auto q = testing::random_instance(n, 0.5, seed);
    const auto model = build_big_m_model(q);
    EXPECT_EQ(model.rows.size(), 2 * n);
    for (std::uint64_t code = 0; code < (1ULL << n); ++code) {
      std::vector<std::uint8_t> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((code >> i) & 1U);
      ASSERT_EQ(model.is_satisfied_by(x), is_one_flip_local_optimum(q, x));
    }
  }
}

TEST(BigM, LpText) {
  const auto text = to_lp_format(build_big_m_model(testing::worked_example()));
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("Binary"), std::string::npos);
  EXPECT_NE(text.find("x3"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace qlopt
