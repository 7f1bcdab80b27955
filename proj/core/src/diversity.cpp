#include "qlopt/diversity.hpp"

#include <stdexcept>
#include <vector>

namespace qlopt {

std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

double mean_pairwise_distance(const LocalOptimaSet& set) {
  const std::size_t count = set.size();
  if (count < 2) throw std::invalid_argument("mean pairwise distance needs at least two solutions");
  // Column-wise: variable i separates ones_i * (count - ones_i) pairs.
  std::vector<std::size_t> ones(set.variable_count(), 0);
  for (const auto& s : set) {
    for (std::size_t i = 0; i < ones.size(); ++i) ones[i] += s.bits[i];
  }
  long double total = 0;
  for (const std::size_t c : ones) total += static_cast<long double>(c) * static_cast<long double>(count - c);
  const long double pairs = static_cast<long double>(count) * static_cast<long double>(count - 1) / 2;
  return static_cast<double>(total / pairs);
}

double mean_objective(const LocalOptimaSet& set) {
  if (set.empty()) throw std::invalid_argument("mean objective of an empty set");
  long double total = 0;
  for (const auto& s : set) total += static_cast<long double>(s.objective);
  return static_cast<double>(total / static_cast<long double>(set.size()));
}

DiversityReport diversity_report(const LocalOptimaSet& set) {
  DiversityReport report;
  report.count = set.size();
  report.mean_objective = mean_objective(set);
  if (set.size() >= 2) report.mean_distance = mean_pairwise_distance(set);
  return report;
}

}  // namespace qlopt
