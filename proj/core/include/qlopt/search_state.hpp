#ifndef QLOPT_SEARCH_STATE_HPP
#define QLOPT_SEARCH_STATE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qlopt/qubo.hpp"

namespace qlopt {

enum class Propagation { Consistent, Conflict };

/**
 * Partial assignment plus interval bounds on every expr_i.
 *
 * For each variable i the state keeps
 *
 *   lo_i = q_i + sum_{j assigned} q_ij x_j + sum_{j free, q_ij < 0} q_ij
 *   hi_i = q_i + sum_{j assigned} q_ij x_j + sum_{j free, q_ij > 0} q_ij
 *
 * so lo_i <= expr_i <= hi_i for every completion, with equality once all
 * neighbours are fixed. A local optimum needs expr_i >= t when x_i = 1 and
 * expr_i <= -t when x_i = 0 (t = 0, or 1 in strict mode); propagate() fixes
 * variables whose interval excludes one value and fails when it excludes
 * both. Once x_i is fixed, a free neighbour whose unfavourable value would
 * push expr_i past the threshold is fixed as well; together these make each
 * big-M row bound consistent. Blocking clauses ("differ from this solution somewhere") are
 * propagated with two watched literals.
 *
 * Assignments are recorded on a trail split into decision levels and are
 * undone chronologically by backtrack().
 */
class SearchState {
 public:
  static constexpr std::int8_t kFree = -1;

  explicit SearchState(const QuboInstance& instance, Optimality mode = Optimality::NonStrict);
  /// The instance is referenced, not copied.
  SearchState(QuboInstance&&, Optimality = Optimality::NonStrict) = delete;

  std::size_t size() const noexcept { return value_.size(); }
  std::int8_t value(std::size_t i) const { return value_.at(i); }
  bool is_assigned(std::size_t i) const { return value_.at(i) != kFree; }
  Coef expr_lo(std::size_t i) const { return lo_.at(i); }
  Coef expr_hi(std::size_t i) const { return hi_.at(i); }

  std::size_t decision_level() const noexcept { return level_start_.size(); }
  std::size_t assigned_count() const noexcept { return trail_.size(); }
  bool is_complete() const noexcept { return trail_.size() == value_.size(); }
  std::span<const std::uint32_t> trail() const noexcept { return trail_; }

  /// Opens a decision level that starts with var := value. The assignment
  /// takes effect in the next propagate(). var must be free.
  void decide(std::size_t var, std::uint8_t value);

  /// Runs to fixpoint. Deductions join the current decision level.
  Propagation propagate();

  /// Undoes every assignment above decision level `level`.
  void backtrack(std::size_t level);

  /// Adds the clause "the assignment differs from `bits` somewhere". Returns
  /// true if the current partial assignment already violates it.
  bool add_nogood(std::span<const std::uint8_t> bits);
  std::size_t nogood_count() const noexcept { return watches_.size(); }

  /// The full assignment. Throws std::logic_error if incomplete.
  BitVector assignment() const;

 private:
  void apply(std::uint32_t var, std::uint8_t val);
  void undo(std::uint32_t var);
  void enqueue_check(std::uint32_t var);
  void check(std::uint32_t var);
  void visit_watchers(std::uint32_t var, std::uint8_t val);
  std::uint8_t clause_bit(std::size_t clause, std::size_t var) const noexcept {
    return static_cast<std::uint8_t>((nogood_words_[clause * words_per_clause_ + var / 64] >> (var % 64)) & 1U);
  }
  bool literal_false(std::size_t clause, std::uint32_t var) const noexcept {
    return value_[var] != kFree && static_cast<std::uint8_t>(value_[var]) == clause_bit(clause, var);
  }

  const QuboInstance* instance_;
  Coef threshold_;
  std::vector<std::int8_t> value_;
  std::vector<Coef> lo_;
  std::vector<Coef> hi_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::size_t> trail_pos_;
  std::vector<std::size_t> level_start_;

  struct Pending {
    std::uint32_t var;
    std::uint8_t val;
  };
  std::vector<Pending> pending_;
  std::size_t pending_head_ = 0;
  std::vector<std::uint32_t> check_queue_;
  std::size_t check_head_ = 0;
  std::vector<std::uint8_t> queued_;
  bool conflict_ = false;

  std::size_t words_per_clause_;
  std::vector<std::uint64_t> nogood_words_;
  std::vector<std::array<std::uint32_t, 2>> watches_;
  std::vector<std::vector<std::uint32_t>> watchers_;
};

}  // namespace qlopt

#endif  // QLOPT_SEARCH_STATE_HPP
