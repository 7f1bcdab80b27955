#include "qlopt/solution_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace qlopt {

namespace {

std::string key_of(std::span<const std::uint8_t> bits) { return {bits.begin(), bits.end()}; }

}  // namespace

LocalOptimaSet::LocalOptimaSet(std::vector<Solution> solutions) {
  items_.reserve(solutions.size());
  for (auto& s : solutions) {
    if (!insert(std::move(s))) throw std::invalid_argument("duplicate solution in set");
  }
}

bool LocalOptimaSet::insert(Solution solution) {
  if (!items_.empty() && solution.bits.size() != items_.front().bits.size()) {
    throw std::invalid_argument("solution length " + std::to_string(solution.bits.size()) +
                                " differs from set length " + std::to_string(items_.front().bits.size()));
  }
  if (!keys_.insert(key_of(solution.bits)).second) return false;
  items_.push_back(std::move(solution));
  return true;
}

bool LocalOptimaSet::contains(std::span<const std::uint8_t> bits) const {
  return keys_.contains(key_of(bits));
}

void LocalOptimaSet::sort_canonical() { std::sort(items_.begin(), items_.end(), canonical_less); }

void LocalOptimaSet::truncate(std::size_t k) {
  if (items_.size() <= k) return;
  for (std::size_t idx = k; idx < items_.size(); ++idx) keys_.erase(key_of(items_[idx].bits));
  items_.resize(k);
}

}  // namespace qlopt
