#ifndef QLOPT_QUBO_HPP
#define QLOPT_QUBO_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qlopt {

/// Exact integer coefficient / objective type.
using Coef = std::int64_t;

/// A binary assignment, one byte (0 or 1) per variable.
using BitVector = std::vector<std::uint8_t>;

/// Non-strict: no one-flip neighbour is better. Strict: every neighbour is
/// worse by at least one unit (integer coefficients).
enum class Optimality { NonStrict, Strict };

/// Combined coefficient of the product term x_i * x_j, with i < j.
struct PairTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  Coef value = 0;

  friend auto operator<=>(const PairTerm&, const PairTerm&) = default;
};

/// One entry of a variable's adjacency row.
struct Neighbor {
  std::uint32_t index = 0;
  Coef coef = 0;
};

/**
 * Canonical maximisation QUBO: f(x) = sum_i q_i x_i + sum_{i<j} q_ij x_i x_j.
 *
 * Pair coefficients are stored once per unordered pair and hold the full
 * weight of the product term (a symmetric matrix entry counted twice). The
 * constructor folds (j, i) onto (i, j), merges duplicates and drops zeros, so
 * two instances with the same polynomial compare equal. Immutable once built.
 */
class QuboInstance {
 public:
  QuboInstance() = default;

  /// Throws std::invalid_argument on a diagonal pair, a size mismatch or
  /// coefficients large enough to overflow objective arithmetic, and
  /// std::out_of_range on a pair index >= n.
  QuboInstance(std::size_t n, std::vector<Coef> linear, std::vector<PairTerm> pairs,
               std::string name = {});

  static QuboInstance zero(std::size_t n);

  std::size_t size() const noexcept { return linear_.size(); }
  std::span<const Coef> linear() const noexcept { return linear_; }
  Coef linear(std::size_t i) const { return linear_.at(i); }

  /// Sorted by (i, j); i < j; no zero values.
  std::span<const PairTerm> pairs() const noexcept { return pairs_; }

  /// Adjacency row of variable i, sorted by neighbour index.
  std::span<const Neighbor> neighbors(std::size_t i) const noexcept {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }

  /// Combined coefficient of x_i x_j (either order); zero when absent.
  Coef pair(std::size_t i, std::size_t j) const;

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Same pair structure with replaced linear coefficients.
  QuboInstance with_linear(std::vector<Coef> linear) const;

  /// Largest |q_i| or |q_ij| in canonical form.
  Coef max_abs_coefficient() const noexcept;

  /// Largest |q_i| or |q_ij| / 2, i.e. the largest magnitude in the symmetric
  /// matrix the instance was read from. Returned doubled to stay integral.
  Coef max_abs_matrix_entry_x2() const noexcept;

  /// Name is not part of equality.
  friend bool operator==(const QuboInstance& a, const QuboInstance& b) {
    return a.linear_ == b.linear_ && a.pairs_ == b.pairs_;
  }

 private:
  void build_adjacency();

  std::vector<Coef> linear_;
  std::vector<PairTerm> pairs_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  std::string name_;
};

/// Objective x'Qx. Throws std::invalid_argument if bits has the wrong length
/// or holds a value other than 0/1.
Coef objective_value(const QuboInstance& instance, std::span<const std::uint8_t> bits);

/// A binary assignment with its objective.
struct Solution {
  BitVector bits;
  Coef objective = 0;

  static Solution evaluate(const QuboInstance& instance, BitVector bits);

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Descending objective, then lexicographically smaller bits first.
bool canonical_less(const Solution& a, const Solution& b);

/// "0101..." rendering of a bit vector.
std::string to_bit_string(std::span<const std::uint8_t> bits);

}  // namespace qlopt

#endif  // QLOPT_QUBO_HPP
