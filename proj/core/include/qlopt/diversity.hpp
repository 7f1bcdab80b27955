#ifndef QLOPT_DIVERSITY_HPP
#define QLOPT_DIVERSITY_HPP

#include <cstddef>
#include <optional>
#include <span>

#include "qlopt/solution_set.hpp"

namespace qlopt {

std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Mean Hamming distance over the C(|L|, 2) unordered pairs.
/// Throws std::invalid_argument for fewer than two members.
double mean_pairwise_distance(const LocalOptimaSet& set);

/// Throws std::invalid_argument for an empty set.
double mean_objective(const LocalOptimaSet& set);

struct DiversityReport {
  std::size_t count = 0;
  std::optional<double> mean_distance;  // absent for a singleton
  double mean_objective = 0.0;
};

/// Throws std::invalid_argument for an empty set.
DiversityReport diversity_report(const LocalOptimaSet& set);

}  // namespace qlopt

#endif  // QLOPT_DIVERSITY_HPP
