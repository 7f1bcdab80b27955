#ifndef QLOPT_SOLUTION_SET_HPP
#define QLOPT_SOLUTION_SET_HPP

#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "qlopt/qubo.hpp"

namespace qlopt {

/**
 * Ordered collection of distinct solutions of one instance (a set L of local
 * optima). Insertion order is kept until sort_canonical() is called.
 */
class LocalOptimaSet {
 public:
  LocalOptimaSet() = default;

  /// Throws std::invalid_argument on duplicate bit vectors or mixed lengths.
  explicit LocalOptimaSet(std::vector<Solution> solutions);

  /// Returns false (and leaves the set unchanged) for a duplicate.
  bool insert(Solution solution);
  bool contains(std::span<const std::uint8_t> bits) const;

  /// Descending objective, ties by lexicographically smaller bits.
  void sort_canonical();
  void truncate(std::size_t k);

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  /// Bit length of the members; 0 for an empty set.
  std::size_t variable_count() const noexcept { return items_.empty() ? 0 : items_.front().bits.size(); }

  const Solution& operator[](std::size_t k) const { return items_[k]; }
  std::span<const Solution> solutions() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  /// Same members in the same order.
  friend bool operator==(const LocalOptimaSet& a, const LocalOptimaSet& b) {
    return a.items_ == b.items_;
  }

 private:
  std::vector<Solution> items_;
  std::unordered_set<std::string> keys_;
};

}  // namespace qlopt

#endif  // QLOPT_SOLUTION_SET_HPP
