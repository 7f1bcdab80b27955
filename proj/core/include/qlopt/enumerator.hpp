#ifndef QLOPT_ENUMERATOR_HPP
#define QLOPT_ENUMERATOR_HPP

#include <cstddef>
#include <cstdint>

#include "qlopt/budget.hpp"
#include "qlopt/solution_set.hpp"

namespace qlopt {

enum class BranchingRule {
  /// Free variable with the largest |lo_i + hi_i|, lowest index on ties.
  MostCommitted,
  /// Lowest-index free variable.
  FirstFree,
};

struct RestartPolicy {
  bool enabled = true;
  /// Conflicts before the first restart; 0 means 10 * n.
  std::uint64_t base_fail_limit = 0;
  /// Limit multiplier after each conflict-triggered restart. Must exceed 1 so
  /// an unlimited run still terminates.
  double growth = 1.5;
  /// Also restart from the root after every solution found.
  bool on_solution = false;
};

struct EnumerationConfig {
  /// Iterations count search nodes (branching decisions).
  Budget budget;
  std::size_t top_k = 500;
  std::uint64_t seed = 1;
  Optimality optimality = Optimality::NonStrict;
  BranchingRule branching = BranchingRule::MostCommitted;
  /// Probability of trying the value favoured by sign(lo_i + hi_i) first.
  double value_bias = 0.8;
  RestartPolicy restarts;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct EnumerationStats {
  std::uint64_t nodes = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t solutions_found = 0;
  /// True when the whole space was searched, so the output (before top-K
  /// truncation) is every local optimum.
  bool exhausted = false;
  double seconds = 0.0;
};

struct EnumerationResult {
  LocalOptimaSet solutions;  // canonical order, at most top_k
  EnumerationStats stats;
};

/**
 * Enumerates one-flip local optima by depth-first search over SearchState.
 *
 * Each complete consistent assignment is re-verified with
 * is_one_flip_local_optimum (VerificationError on failure), recorded, and
 * blocked with a no-good before the search continues. Restarts keep the
 * no-good store, so every solution is reported once and an unlimited run is
 * complete.
 */
EnumerationResult enumerate_local_optima(const QuboInstance& instance, const EnumerationConfig& config);

}  // namespace qlopt

#endif  // QLOPT_ENUMERATOR_HPP
