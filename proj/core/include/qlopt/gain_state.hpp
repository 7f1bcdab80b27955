#ifndef QLOPT_GAIN_STATE_HPP
#define QLOPT_GAIN_STATE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "qlopt/qubo.hpp"

namespace qlopt {

/// expr_i = q_i + sum_{j != i} q_ij x_j for every i, from scratch.
std::vector<Coef> compute_expr(const QuboInstance& instance, std::span<const std::uint8_t> bits);

/// True iff (2 x_i - 1) * expr_i >= 0 for all i (>= 1 in strict mode).
bool is_one_flip_local_optimum(const QuboInstance& instance, std::span<const std::uint8_t> bits,
                               Optimality mode = Optimality::NonStrict);

/**
 * Incremental one-flip state for a single solution.
 *
 * Keeps expr_i so that the objective change of flipping bit i is
 * (1 - 2 x_i) * expr_i in O(1), and a flip costs O(degree). The instance must
 * outlive the state.
 */
class GainState {
 public:
  GainState(const QuboInstance& instance, BitVector bits);

  /// Throws std::invalid_argument if solution.objective is inconsistent.
  GainState(const QuboInstance& instance, const Solution& solution);
  /// The instance is referenced, not copied.
  GainState(QuboInstance&&, BitVector) = delete;
  GainState(QuboInstance&&, const Solution&) = delete;

  std::size_t size() const noexcept { return bits_.size(); }
  const QuboInstance& instance() const noexcept { return *instance_; }
  const BitVector& bits() const noexcept { return bits_; }
  Coef objective() const noexcept { return objective_; }
  std::span<const Coef> expr() const noexcept { return expr_; }
  Solution solution() const { return {bits_, objective_}; }

  /// Objective change of flipping bit i. Throws std::out_of_range.
  Coef flip_delta(std::size_t i) const;

  /// Flips bit i. Throws std::out_of_range.
  void apply_flip(std::size_t i);

  bool is_local_optimum(Optimality mode = Optimality::NonStrict) const;

  // Unchecked variants for inner loops.
  Coef delta_unchecked(std::size_t i) const noexcept {
    return bits_[i] ? -expr_[i] : expr_[i];
  }
  void flip_unchecked(std::size_t i) noexcept;

 private:
  const QuboInstance* instance_;
  BitVector bits_;
  Coef objective_ = 0;
  std::vector<Coef> expr_;
};

}  // namespace qlopt

#endif  // QLOPT_GAIN_STATE_HPP
