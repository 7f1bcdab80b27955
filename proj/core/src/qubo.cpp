#include "qlopt/qubo.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace qlopt {

namespace {

// Objectives and expr sums stay well inside int64 if the total coefficient
// mass does.
constexpr Coef kMaxCoefficientMass = std::numeric_limits<Coef>::max() / 4;

void add_mass(Coef& mass, Coef value) {
  const Coef magnitude = value < 0 ? -value : value;
  if (value == std::numeric_limits<Coef>::min() || magnitude > kMaxCoefficientMass - mass) {
    throw std::invalid_argument("coefficient magnitudes too large for exact 64-bit arithmetic");
  }
  mass += magnitude;
}

}  // namespace

QuboInstance::QuboInstance(std::size_t n, std::vector<Coef> linear, std::vector<PairTerm> pairs,
                           std::string name)
    : linear_(std::move(linear)), name_(std::move(name)) {
  if (linear_.size() != n) {
    throw std::invalid_argument("linear coefficient count " + std::to_string(linear_.size()) +
                                " does not match n = " + std::to_string(n));
  }
  if (n > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("too many variables");

  for (auto& p : pairs) {
    if (p.i >= n || p.j >= n) {
      throw std::out_of_range("pair (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                              ") out of range for n = " + std::to_string(n));
    }
    if (p.i == p.j) throw std::invalid_argument("pair term on the diagonal; use the linear vector");
    if (p.i > p.j) std::swap(p.i, p.j);
  }
  std::sort(pairs.begin(), pairs.end());

  Coef mass = 0;
  for (const Coef q : linear_) add_mass(mass, q);
  for (std::size_t k = 0; k < pairs.size();) {
    PairTerm merged = pairs[k];
    Coef sum_mass = 0;
    add_mass(sum_mass, merged.value);
    std::size_t next = k + 1;
    for (; next < pairs.size() && pairs[next].i == merged.i && pairs[next].j == merged.j; ++next) {
      add_mass(sum_mass, pairs[next].value);
      merged.value += pairs[next].value;
    }
    if (merged.value != 0) {
      add_mass(mass, merged.value);
      pairs_.push_back(merged);
    }
    k = next;
  }
  build_adjacency();
}

QuboInstance QuboInstance::zero(std::size_t n) { return QuboInstance(n, std::vector<Coef>(n, 0), {}); }

void QuboInstance::build_adjacency() {
  const std::size_t n = linear_.size();
  std::vector<std::size_t> degree(n, 0);
  for (const auto& p : pairs_) {
    ++degree[p.i];
    ++degree[p.j];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  neighbors_.assign(offsets_[n], Neighbor{});
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& p : pairs_) {
    neighbors_[cursor[p.i]++] = {static_cast<std::uint32_t>(p.j), p.value};
    neighbors_[cursor[p.j]++] = {static_cast<std::uint32_t>(p.i), p.value};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
  }
}

Coef QuboInstance::pair(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("pair index out of range");
  const auto row = neighbors(i);
  const auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const Neighbor& nb, std::size_t idx) { return nb.index < idx; });
  return (it != row.end() && it->index == j) ? it->coef : 0;
}

QuboInstance QuboInstance::with_linear(std::vector<Coef> linear) const {
  if (linear.size() != size()) throw std::invalid_argument("linear size mismatch");
  QuboInstance copy = *this;
  Coef mass = 0;
  for (const Coef q : linear) add_mass(mass, q);
  for (const auto& p : pairs_) add_mass(mass, p.value);
  copy.linear_ = std::move(linear);
  return copy;
}

Coef QuboInstance::max_abs_coefficient() const noexcept {
  Coef best = 0;
  for (const Coef q : linear_) best = std::max(best, std::abs(q));
  for (const auto& p : pairs_) best = std::max(best, std::abs(p.value));
  return best;
}

Coef QuboInstance::max_abs_matrix_entry_x2() const noexcept {
  Coef best = 0;
  for (const Coef q : linear_) best = std::max(best, 2 * std::abs(q));
  for (const auto& p : pairs_) best = std::max(best, std::abs(p.value));
  return best;
}

Coef objective_value(const QuboInstance& instance, std::span<const std::uint8_t> bits) {
  if (bits.size() != instance.size()) {
    throw std::invalid_argument("bit vector length " + std::to_string(bits.size()) +
                                " does not match n = " + std::to_string(instance.size()));
  }
  Coef total = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw std::invalid_argument("bit vector holds a value other than 0/1");
    if (bits[i]) total += instance.linear()[i];
  }
  for (const auto& p : instance.pairs()) {
    if (bits[p.i] && bits[p.j]) total += p.value;
  }
  return total;
}

Solution Solution::evaluate(const QuboInstance& instance, BitVector bits) {
  const Coef objective = objective_value(instance, bits);
  return {std::move(bits), objective};
}

bool canonical_less(const Solution& a, const Solution& b) {
  if (a.objective != b.objective) return a.objective > b.objective;
  return a.bits < b.bits;
}

std::string to_bit_string(std::span<const std::uint8_t> bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i] = '1';
  }
  return out;
}

}  // namespace qlopt
