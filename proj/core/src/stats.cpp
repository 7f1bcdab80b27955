#include "qlopt/stats.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qlopt {

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired t-test: columns differ in length");
  const std::size_t k = a.size();
  if (k < 2) throw std::invalid_argument("paired t-test: need at least two pairs");
  double mean = 0.0;
  for (std::size_t i = 0; i < k; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(k);
  double ss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(k - 1));
  if (sd == 0.0) {
    if (mean == 0.0) return {0.0, k - 1};
    throw std::invalid_argument("paired t-test: zero variance in the differences");
  }
  return {mean / (sd / std::sqrt(static_cast<double>(k))), k - 1};
}

double t_critical_two_sided_05(std::size_t df) {
  static constexpr std::array<double, 30> kSmall = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  static constexpr std::array<std::pair<std::size_t, double>, 3> kLarge = {{{40, 2.021}, {60, 2.000}, {120, 1.980}}};
  if (df == 0) throw std::invalid_argument("t critical value needs df >= 1");
  if (df <= kSmall.size()) return kSmall[df - 1];
  double value = kSmall.back();
  for (const auto& [row_df, row_value] : kLarge) {
    if (df >= row_df) value = row_value;
  }
  return value;
}

}  // namespace qlopt
