#include "qlopt/oracle.hpp"

#include <bit>
#include <string>

#include "qlopt/errors.hpp"

namespace qlopt {

namespace {

void check_cap(const QuboInstance& instance) {
  if (instance.size() > kOracleMaxVariables) {
    throw CapExceededError("brute force is limited to " + std::to_string(kOracleMaxVariables) +
                           " variables, instance has " + std::to_string(instance.size()));
  }
}

/**
 * Reflected Gray-code walk over {0,1}^n. Step k flips bit ctz(k), so each
 * vector costs O(degree) to update. Tracks how many variables currently
 * have an improving (or, in strict mode, non-worsening) flip.
 */
class GrayWalk {
 public:
  GrayWalk(const QuboInstance& instance, Optimality mode)
      : instance_(instance),
        margin_(mode == Optimality::Strict ? 1 : 0),
        bits_(instance.size(), 0),
        expr_(instance.linear().begin(), instance.linear().end()),
        bad_(instance.size(), 0) {
    for (std::size_t i = 0; i < bits_.size(); ++i) refresh(i);
  }

  std::uint64_t steps() const noexcept { return std::uint64_t{1} << bits_.size(); }
  bool at_local_optimum() const noexcept { return violations_ == 0; }
  const BitVector& bits() const noexcept { return bits_; }
  Coef objective() const noexcept { return objective_; }

  void step(std::uint64_t k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    // Gain of flipping i: the neighbour's objective minus ours.
    objective_ += bits_[i] ? -expr_[i] : expr_[i];
    bits_[i] ^= 1U;
    for (const auto& nb : instance_.neighbors(i)) {
      expr_[nb.index] += bits_[i] ? nb.coef : -nb.coef;
      refresh(nb.index);
    }
    refresh(i);
  }

 private:
  void refresh(std::size_t i) {
    const Coef gain = bits_[i] ? -expr_[i] : expr_[i];
    // Neighbour no worse than us by at least `margin` violates optimality.
    const std::uint8_t bad = gain > -margin_ ? 1 : 0;
    violations_ += static_cast<std::int64_t>(bad) - static_cast<std::int64_t>(bad_[i]);
    bad_[i] = bad;
  }

  const QuboInstance& instance_;
  Coef margin_;
  BitVector bits_;
  std::vector<Coef> expr_;
  std::vector<std::uint8_t> bad_;
  std::int64_t violations_ = 0;
  Coef objective_ = 0;
};

}  // namespace

LocalOptimaSet brute_force_local_optima(const QuboInstance& instance, Optimality mode) {
  check_cap(instance);
  LocalOptimaSet result;
  GrayWalk walk(instance, mode);
  for (std::uint64_t k = 0; k < walk.steps(); ++k) {
    if (k > 0) walk.step(k);
    if (walk.at_local_optimum()) result.insert({walk.bits(), walk.objective()});
  }
  result.sort_canonical();
  return result;
}

Solution brute_force_global_optimum(const QuboInstance& instance) {
  check_cap(instance);
  GrayWalk walk(instance, Optimality::NonStrict);
  Solution best{walk.bits(), walk.objective()};
  for (std::uint64_t k = 1; k < walk.steps(); ++k) {
    walk.step(k);
    if (walk.objective() > best.objective || (walk.objective() == best.objective && walk.bits() < best.bits)) {
      best = {walk.bits(), walk.objective()};
    }
  }
  return best;
}

}  // namespace qlopt
