#ifndef QLOPT_TABU_HPP
#define QLOPT_TABU_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qlopt/budget.hpp"
#include "qlopt/gain_state.hpp"
#include "qlopt/solution_set.hpp"

namespace qlopt {

/// Bounded set of distinct solutions, best first.
class EliteSet {
 public:
  explicit EliteSet(std::size_t capacity);

  /// The best `capacity` members of `set` in canonical order.
  static EliteSet from(const LocalOptimaSet& set, std::size_t capacity);

  /// Rejects duplicates, and newcomers no better than the worst of a full set.
  bool try_insert(Solution solution);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t capacity() const noexcept { return capacity_; }
  const Solution& operator[](std::size_t k) const { return members_[k]; }
  std::span<const Solution> members() const noexcept { return members_; }

 private:
  std::size_t capacity_;
  std::vector<Solution> members_;
};

/// Best-improvement hill climb (ties to the lowest index) until no flip
/// strictly improves. Returns the number of flips made.
std::size_t greedy_descent(GainState& state);
Solution greedy_descent(const QuboInstance& instance, const Solution& start);

struct GreedySampleResult {
  LocalOptimaSet solutions;  // canonical order, at most top_k
  std::uint64_t descents = 0;
  std::uint64_t iterations = 0;
};

/// Uniform random start, greedy_descent, collect; repeated until the budget
/// runs out. One iteration unit is charged per descent plus one per flip.
GreedySampleResult sample_greedy_restarts(const QuboInstance& instance, const Budget& budget,
                                          std::size_t top_k, std::uint64_t seed);

struct PathRelinkResult {
  Solution best;
  std::vector<std::size_t> flips;  // order in which the difference bits flipped
};

/// Walks from `from` to `to`, each step flipping the not-yet-flipped
/// difference bit with the largest objective gain (lowest index on ties).
/// Returns the best point seen, endpoints included; the earliest wins ties.
PathRelinkResult path_relink(const QuboInstance& instance, const Solution& from, const Solution& to);

struct TabuParams {
  std::uint64_t seed = 1;
  /// Tenure is tenure_base + uniform{0..tenure_span}; span defaults to
  /// ceil(n / 50).
  std::size_t tenure_base = 10;
  std::optional<std::size_t> tenure_span;
  /// Flips undone per backtrack (fewer if the history is shorter).
  std::size_t backtrack_depth = 20;
  /// Tabu flips are admissible when they beat the best search objective.
  bool aspiration = true;
  /// Recompute state from scratch after every backtrack and throw
  /// VerificationError on drift. Slow; for tests.
  bool self_check = false;

  std::function<void(const Solution&)> on_local_optimum;
  std::function<void(const Solution&)> on_new_best;
};

struct TabuResult {
  Solution best;   // scored on the base instance
  Solution start;  // after path relinking
  std::uint64_t iterations = 0;
  std::uint64_t local_optima = 0;
  std::uint64_t backtracks = 0;
};

/**
 * One-flip tabu search seeded by path relinking over the elite set.
 *
 * Each iteration makes the best admissible improving flip. With no
 * admissible improvement it undoes up to backtrack_depth flips from the
 * history stack, making the undone variables tabu; when no flip at all
 * improves, the current point is also reported as a local optimum. With an
 * empty history the best non-tabu flip is taken even if it worsens.
 */
TabuResult tabu_search(const QuboInstance& instance, const EliteSet& elite, const Budget& budget,
                       const TabuParams& params);

/// tabu_search driven by `search` (e.g. a transformed matrix) while every
/// visited point is scored on `base`; returns the best base objective.
/// Throws std::invalid_argument on a size mismatch or empty elite set.
TabuResult run_variant(const QuboInstance& base, const QuboInstance& search, const EliteSet& elite,
                       const Budget& budget, const TabuParams& params);

}  // namespace qlopt

#endif  // QLOPT_TABU_HPP
