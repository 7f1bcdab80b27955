#include "qlopt/gain_state.hpp"

#include <stdexcept>
#include <string>

namespace qlopt {

namespace {

Coef required_margin(Optimality mode) { return mode == Optimality::Strict ? 1 : 0; }

void check_index(std::size_t i, std::size_t n) {
  if (i >= n) {
    throw std::out_of_range("variable index " + std::to_string(i) + " out of range for n = " +
                            std::to_string(n));
  }
}

}  // namespace

std::vector<Coef> compute_expr(const QuboInstance& instance, std::span<const std::uint8_t> bits) {
  if (bits.size() != instance.size()) throw std::invalid_argument("bit vector length mismatch");
  std::vector<Coef> expr(instance.linear().begin(), instance.linear().end());
  for (const auto& p : instance.pairs()) {
    if (bits[p.j]) expr[p.i] += p.value;
    if (bits[p.i]) expr[p.j] += p.value;
  }
  return expr;
}

bool is_one_flip_local_optimum(const QuboInstance& instance, std::span<const std::uint8_t> bits,
                               Optimality mode) {
  const auto expr = compute_expr(instance, bits);
  const Coef margin = required_margin(mode);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const Coef signed_expr = bits[i] ? expr[i] : -expr[i];
    if (signed_expr < margin) return false;
  }
  return true;
}

GainState::GainState(const QuboInstance& instance, BitVector bits)
    : instance_(&instance),
      bits_(std::move(bits)),
      objective_(objective_value(instance, bits_)),
      expr_(compute_expr(instance, bits_)) {}

GainState::GainState(const QuboInstance& instance, const Solution& solution)
    : GainState(instance, solution.bits) {
  if (objective_ != solution.objective) {
    throw std::invalid_argument("solution objective " + std::to_string(solution.objective) +
                                " disagrees with evaluation " + std::to_string(objective_));
  }
}

Coef GainState::flip_delta(std::size_t i) const {
  check_index(i, bits_.size());
  return delta_unchecked(i);
}

void GainState::apply_flip(std::size_t i) {
  check_index(i, bits_.size());
  flip_unchecked(i);
}

void GainState::flip_unchecked(std::size_t i) noexcept {
  objective_ += delta_unchecked(i);
  bits_[i] ^= 1U;
  const bool now_set = bits_[i] != 0;
  for (const auto& nb : instance_->neighbors(i)) {
    expr_[nb.index] += now_set ? nb.coef : -nb.coef;
  }
}

bool GainState::is_local_optimum(Optimality mode) const {
  const Coef margin = required_margin(mode);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (-delta_unchecked(i) < margin) return false;
  }
  return true;
}

}  // namespace qlopt
