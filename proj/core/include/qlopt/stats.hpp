#ifndef QLOPT_STATS_HPP
#define QLOPT_STATS_HPP

#include <cstddef>
#include <span>

namespace qlopt {

struct TTestResult {
  double t = 0.0;
  std::size_t df = 0;
};

/// Paired two-sample t statistic over d = a - b. Equal, all-zero
/// differences give t = 0. Throws std::invalid_argument for unequal or short
/// inputs, and for zero variance with nonzero mean.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// Two-sided 5% critical value of Student's t, from a fixed table. Degrees
/// of freedom between table rows use the next lower row.
double t_critical_two_sided_05(std::size_t df);

inline bool significant_at_05(const TTestResult& r) {
  return (r.t < 0 ? -r.t : r.t) > t_critical_two_sided_05(r.df);
}

}  // namespace qlopt

#endif  // QLOPT_STATS_HPP
