#include "qlopt/search_state.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qlopt {

SearchState::SearchState(const QuboInstance& instance, Optimality mode)
    : instance_(&instance),
      threshold_(mode == Optimality::Strict ? 1 : 0),
      value_(instance.size(), kFree),
      lo_(instance.linear().begin(), instance.linear().end()),
      hi_(instance.linear().begin(), instance.linear().end()),
      trail_pos_(instance.size(), 0),
      queued_(instance.size(), 0),
      words_per_clause_((instance.size() + 63) / 64),
      watchers_(instance.size()) {
  for (const auto& p : instance.pairs()) {
    auto& bound = p.value < 0 ? lo_ : hi_;
    bound[p.i] += p.value;
    bound[p.j] += p.value;
  }
  trail_.reserve(instance.size());
  for (std::uint32_t i = 0; i < instance.size(); ++i) enqueue_check(i);
}

void SearchState::decide(std::size_t var, std::uint8_t value) {
  if (var >= size()) throw std::out_of_range("decision variable out of range");
  if (value_[var] != kFree) throw std::logic_error("decision on an assigned variable");
  level_start_.push_back(trail_.size());
  pending_.push_back({static_cast<std::uint32_t>(var), static_cast<std::uint8_t>(value & 1U)});
}

void SearchState::enqueue_check(std::uint32_t var) {
  if (!queued_[var]) {
    queued_[var] = 1;
    check_queue_.push_back(var);
  }
}

void SearchState::apply(std::uint32_t var, std::uint8_t val) {
  value_[var] = static_cast<std::int8_t>(val);
  trail_pos_[var] = trail_.size();
  trail_.push_back(var);
  for (const auto& nb : instance_->neighbors(var)) {
    // Replace the free-variable contribution (c in lo if c < 0, else in hi)
    // by the fixed one, c * val.
    if (nb.coef < 0) {
      if (val) hi_[nb.index] += nb.coef; else lo_[nb.index] -= nb.coef;
    } else {
      if (val) lo_[nb.index] += nb.coef; else hi_[nb.index] -= nb.coef;
    }
    enqueue_check(nb.index);
  }
  enqueue_check(var);
  visit_watchers(var, val);
}

void SearchState::undo(std::uint32_t var) {
  const bool val = value_[var] == 1;
  for (const auto& nb : instance_->neighbors(var)) {
    if (nb.coef < 0) {
      if (val) hi_[nb.index] -= nb.coef; else lo_[nb.index] += nb.coef;
    } else {
      if (val) lo_[nb.index] -= nb.coef; else hi_[nb.index] += nb.coef;
    }
  }
  value_[var] = kFree;
}

void SearchState::check(std::uint32_t var) {
  // x = 1 needs expr >= t; x = 0 needs expr <= -t.
  const bool one_ok = hi_[var] >= threshold_;
  const bool zero_ok = lo_[var] <= -threshold_;
  const std::int8_t v = value_[var];
  if (v != kFree) {
    if (v == 1 ? !one_ok : !zero_ok) {
      conflict_ = true;
      return;
    }
    // Row support: a free neighbour whose unfavourable value alone would
    // exhaust the slack is fixed to its favourable value (q_ij > 0 favours 1
    // when x = 1 needs a large expr, and 0 when x = 0 needs a small one).
    const Coef slack = v == 1 ? hi_[var] - threshold_ : -threshold_ - lo_[var];
    for (const auto& nb : instance_->neighbors(var)) {
      if (value_[nb.index] != kFree) continue;
      const Coef magnitude = nb.coef < 0 ? -nb.coef : nb.coef;
      if (magnitude > slack) {
        const bool positive = nb.coef > 0;
        pending_.push_back({nb.index, static_cast<std::uint8_t>(positive == (v == 1) ? 1 : 0)});
      }
    }
  } else if (!one_ok && !zero_ok) {
    conflict_ = true;
  } else if (!zero_ok) {
    pending_.push_back({var, 1});
  } else if (!one_ok) {
    pending_.push_back({var, 0});
  }
}

void SearchState::visit_watchers(std::uint32_t var, std::uint8_t val) {
  auto& list = watchers_[var];
  std::size_t keep = 0;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::uint32_t clause = list[k];
    if (conflict_ || clause_bit(clause, var) != val) {
      list[keep++] = clause;  // literal true, or already failing
      continue;
    }
    auto& w = watches_[clause];
    const std::uint32_t other = w[0] == var ? w[1] : w[0];
    if (value_[other] != kFree && !literal_false(clause, other)) {
      list[keep++] = clause;
      continue;
    }
    std::uint32_t replacement = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t m = 0; m < size(); ++m) {
      if (m != var && m != other && !literal_false(clause, m)) {
        replacement = m;
        break;
      }
    }
    if (replacement != std::numeric_limits<std::uint32_t>::max()) {
      (w[0] == var ? w[0] : w[1]) = replacement;
      watchers_[replacement].push_back(clause);
      continue;
    }
    list[keep++] = clause;
    if (value_[other] == kFree) {
      pending_.push_back({other, static_cast<std::uint8_t>(1U - clause_bit(clause, other))});
    } else {
      conflict_ = true;
    }
  }
  list.resize(keep);
}

Propagation SearchState::propagate() {
  while (!conflict_) {
    if (pending_head_ < pending_.size()) {
      const Pending p = pending_[pending_head_++];
      if (value_[p.var] == kFree) {
        apply(p.var, p.val);
      } else if (static_cast<std::uint8_t>(value_[p.var]) != p.val) {
        conflict_ = true;
      }
    } else if (check_head_ < check_queue_.size()) {
      const std::uint32_t var = check_queue_[check_head_++];
      queued_[var] = 0;
      check(var);
    } else {
      break;
    }
  }
  for (std::size_t k = check_head_; k < check_queue_.size(); ++k) queued_[check_queue_[k]] = 0;
  pending_.clear();
  pending_head_ = 0;
  check_queue_.clear();
  check_head_ = 0;
  if (conflict_) {
    conflict_ = false;
    return Propagation::Conflict;
  }
  return Propagation::Consistent;
}

void SearchState::backtrack(std::size_t level) {
  while (level_start_.size() > level) {
    const std::size_t start = level_start_.back();
    level_start_.pop_back();
    while (trail_.size() > start) {
      undo(trail_.back());
      trail_.pop_back();
    }
  }
  for (std::size_t k = check_head_; k < check_queue_.size(); ++k) queued_[check_queue_[k]] = 0;
  pending_.clear();
  pending_head_ = 0;
  check_queue_.clear();
  check_head_ = 0;
  conflict_ = false;
}

bool SearchState::add_nogood(std::span<const std::uint8_t> bits) {
  if (bits.size() != size()) throw std::invalid_argument("no-good length mismatch");
  if (size() == 0) return true;
  const auto clause = static_cast<std::uint32_t>(watches_.size());
  nogood_words_.resize(nogood_words_.size() + words_per_clause_, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) nogood_words_[clause * words_per_clause_ + i / 64] |= std::uint64_t{1} << (i % 64);
  }

  // Watch the two literals that will be freed or satisfied first: non-false
  // literals, then false ones assigned latest.
  auto rank = [&](std::uint32_t var) -> std::size_t {
    return literal_false(clause, var) ? trail_pos_[var] : std::numeric_limits<std::size_t>::max();
  };
  std::uint32_t first = 0;
  std::uint32_t second = size() > 1 ? 1 : 0;
  if (size() > 1) {
    if (rank(second) > rank(first)) std::swap(first, second);
    for (std::uint32_t m = 2; m < size(); ++m) {
      if (rank(m) > rank(first)) {
        second = first;
        first = m;
      } else if (rank(m) > rank(second)) {
        second = m;
      }
    }
  }
  watches_.push_back({first, second});
  watchers_[first].push_back(clause);
  if (second != first) watchers_[second].push_back(clause);

  return literal_false(clause, first) && literal_false(clause, second);
}

BitVector SearchState::assignment() const {
  if (!is_complete()) throw std::logic_error("assignment requested before all variables are fixed");
  BitVector bits(size());
  for (std::size_t i = 0; i < size(); ++i) bits[i] = static_cast<std::uint8_t>(value_[i]);
  return bits;
}

}  // namespace qlopt
