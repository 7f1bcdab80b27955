#include "qlopt/tabu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qlopt/errors.hpp"
#include "qlopt/random.hpp"

namespace qlopt {

EliteSet::EliteSet(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("elite set capacity must be positive");
  members_.reserve(capacity_);
}

EliteSet EliteSet::from(const LocalOptimaSet& set, std::size_t capacity) {
  EliteSet elite(capacity);
  std::vector<Solution> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  for (auto& s : sorted) {
    if (elite.size() == capacity) break;
    elite.try_insert(std::move(s));
  }
  return elite;
}

bool EliteSet::try_insert(Solution solution) {
  if (!members_.empty() && solution.bits.size() != members_.front().bits.size()) {
    throw std::invalid_argument("elite set: solution length mismatch");
  }
  for (const auto& m : members_) {
    if (m.bits == solution.bits) return false;
  }
  if (members_.size() == capacity_ && !canonical_less(solution, members_.back())) return false;
  const auto pos = std::upper_bound(members_.begin(), members_.end(), solution, canonical_less);
  members_.insert(pos, std::move(solution));
  if (members_.size() > capacity_) members_.pop_back();
  return true;
}

std::size_t greedy_descent(GainState& state) {
  std::size_t steps = 0;
  while (true) {
    std::size_t best = state.size();
    Coef best_gain = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
      const Coef gain = state.delta_unchecked(i);
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == state.size()) return steps;
    state.flip_unchecked(best);
    ++steps;
  }
}

Solution greedy_descent(const QuboInstance& instance, const Solution& start) {
  GainState state(instance, start.bits);
  greedy_descent(state);
  return state.solution();
}

namespace {

void require_finite(const Budget& budget) {
  budget.validate();
  if (budget.is_unlimited()) throw std::invalid_argument("this search needs an iteration or time budget");
}

BitVector random_bits(Rng& rng, std::size_t n) {
  BitVector bits(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>(word & 1U);
    word >>= 1;
  }
  return bits;
}

}  // namespace

GreedySampleResult sample_greedy_restarts(const QuboInstance& instance, const Budget& budget,
                                          std::size_t top_k, std::uint64_t seed) {
  require_finite(budget);
  if (top_k == 0) throw std::invalid_argument("top-K must be at least 1");
  GreedySampleResult result;
  Rng rng(seed);
  BudgetTracker tracker(budget);
  while (!tracker.exhausted()) {
    GainState state(instance, random_bits(rng, instance.size()));
    const std::size_t steps = greedy_descent(state);
    tracker.consume(1 + steps);
    ++result.descents;
    Solution s = state.solution();
    if (!is_one_flip_local_optimum(instance, s.bits) || objective_value(instance, s.bits) != s.objective) {
      throw VerificationError("greedy descent ended at " + to_bit_string(s.bits) + ", which is not a local optimum");
    }
    result.solutions.insert(std::move(s));
    if (result.solutions.size() >= 2 * top_k + 1024) {
      result.solutions.sort_canonical();
      result.solutions.truncate(top_k);
    }
  }
  result.iterations = tracker.used();
  result.solutions.sort_canonical();
  result.solutions.truncate(top_k);
  return result;
}

PathRelinkResult path_relink(const QuboInstance& instance, const Solution& from, const Solution& to) {
  if (from.bits.size() != instance.size() || to.bits.size() != instance.size()) {
    throw std::invalid_argument("path relinking: solution length mismatch");
  }
  GainState state(instance, from.bits);
  PathRelinkResult result{state.solution(), {}};
  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (from.bits[i] != to.bits[i]) remaining.push_back(i);
  }
  while (!remaining.empty()) {
    std::size_t pick = 0;
    for (std::size_t k = 1; k < remaining.size(); ++k) {
      if (state.delta_unchecked(remaining[k]) > state.delta_unchecked(remaining[pick])) pick = k;
    }
    const std::size_t var = remaining[pick];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    state.flip_unchecked(var);
    result.flips.push_back(var);
    if (state.objective() > result.best.objective) result.best = state.solution();
  }
  return result;
}

namespace {

class TabuRun {
 public:
  TabuRun(const QuboInstance& base, const QuboInstance& search, const TabuParams& params)
      : base_(base),
        search_(search),
        params_(params),
        rng_(params.seed),
        expiry_(search.size(), 0) {
    tenure_span_ = params.tenure_span.value_or(
        static_cast<std::size_t>(std::ceil(static_cast<double>(search.size()) / 50.0)));
  }

  TabuResult run(const EliteSet& elite, const Budget& budget) {
    start_ = choose_start(elite);
    current_.emplace(search_, start_);
    if (&base_ != &search_) score_.emplace(base_, start_);

    TabuResult result;
    result.start = {start_, base_objective()};
    best_ = result.start;
    for (const auto& member : elite.members()) {
      const Coef obj = objective_value(base_, member.bits);
      if (obj > best_.objective) best_ = {member.bits, obj};
    }
    if (params_.on_new_best) params_.on_new_best(best_);
    best_search_ = current_->objective();

    BudgetTracker tracker(budget);
    while (!tracker.exhausted()) {
      tracker.consume();
      ++iteration_;
      step(result);
    }
    result.best = best_;
    result.iterations = iteration_;
    return result;
  }

 private:
  BitVector choose_start(const EliteSet& elite) {
    if (elite.size() == 1) return elite[0].bits;
    const auto a = uniform_below(rng_, elite.size());
    auto b = uniform_below(rng_, elite.size() - 1);
    if (b >= a) ++b;
    const Solution from = Solution::evaluate(search_, elite[a].bits);
    const Solution to = Solution::evaluate(search_, elite[b].bits);
    return path_relink(search_, from, to).best.bits;
  }

  Coef base_objective() const { return score_ ? score_->objective() : current_->objective(); }

  std::uint64_t draw_tenure() { return params_.tenure_base + uniform_below(rng_, tenure_span_ + 1); }

  void flip(std::size_t var) {
    current_->flip_unchecked(var);
    if (score_) score_->flip_unchecked(var);
  }

  void note_point() {
    best_search_ = std::max(best_search_, current_->objective());
    const Coef obj = base_objective();
    if (obj > best_.objective) {
      best_ = {current_->bits(), obj};
      if (params_.on_new_best) params_.on_new_best(best_);
    }
  }

  void step(TabuResult& result) {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::size_t move = kNone;
    Coef move_gain = std::numeric_limits<Coef>::min();
    bool any_improving = false;
    const Coef objective = current_->objective();
    for (std::size_t i = 0; i < current_->size(); ++i) {
      const Coef gain = current_->delta_unchecked(i);
      if (gain > 0) any_improving = true;
      const bool tabu = expiry_[i] > iteration_;
      const bool admissible = !tabu || (params_.aspiration && objective + gain > best_search_);
      if (admissible && gain > move_gain) {
        move_gain = gain;
        move = i;
      }
    }

    if (move != kNone && move_gain > 0) {
      make_move(move);
      return;
    }
    if (!any_improving) record_local_optimum(result);
    if (!history_.empty()) {
      backtrack(result);
    } else if (move != kNone) {
      make_move(move);  // least-worsening non-tabu flip
    }
  }

  void make_move(std::size_t var) {
    flip(var);
    history_.push_back(static_cast<std::uint32_t>(var));
    expiry_[var] = iteration_ + draw_tenure();
    note_point();
  }

  void record_local_optimum(TabuResult& result) {
    ++result.local_optima;
    if (!is_one_flip_local_optimum(search_, current_->bits())) {
      throw VerificationError("tabu checkpoint " + to_bit_string(current_->bits()) + " is not a local optimum");
    }
    if (params_.on_local_optimum) params_.on_local_optimum(current_->solution());
  }

  void backtrack(TabuResult& result) {
    ++result.backtracks;
    const std::size_t depth = std::min(params_.backtrack_depth, history_.size());
    for (std::size_t k = 0; k < depth; ++k) {
      const std::uint32_t var = history_.back();
      history_.pop_back();
      flip(var);
      expiry_[var] = iteration_ + draw_tenure();
    }
    if (params_.self_check) verify_state();
  }

  void verify_state() const {
    BitVector replay = start_;
    for (const auto var : history_) replay[var] ^= 1U;
    if (replay != current_->bits()) throw VerificationError("tabu history does not replay to the current point");
    const GainState fresh(search_, current_->bits());
    if (fresh.objective() != current_->objective() || !std::ranges::equal(fresh.expr(), current_->expr())) {
      throw VerificationError("tabu incremental state drifted from recomputation");
    }
    if (score_ && objective_value(base_, score_->bits()) != score_->objective()) {
      throw VerificationError("tabu base score drifted from recomputation");
    }
  }

  const QuboInstance& base_;
  const QuboInstance& search_;
  const TabuParams& params_;
  Rng rng_;
  std::size_t tenure_span_ = 0;
  std::vector<std::uint64_t> expiry_;
  std::vector<std::uint32_t> history_;
  BitVector start_;
  std::optional<GainState> current_;
  std::optional<GainState> score_;
  Solution best_;
  Coef best_search_ = 0;
  std::uint64_t iteration_ = 0;
};

}  // namespace

TabuResult tabu_search(const QuboInstance& instance, const EliteSet& elite, const Budget& budget,
                       const TabuParams& params) {
  return run_variant(instance, instance, elite, budget, params);
}

TabuResult run_variant(const QuboInstance& base, const QuboInstance& search, const EliteSet& elite,
                       const Budget& budget, const TabuParams& params) {
  if (base.size() != search.size()) {
    throw std::invalid_argument("base and search instances differ in size (" + std::to_string(base.size()) +
                                " vs " + std::to_string(search.size()) + ")");
  }
  if (elite.empty()) throw std::invalid_argument("tabu search needs a non-empty elite set");
  if (elite[0].bits.size() != base.size()) throw std::invalid_argument("elite solutions do not match instance size");
  require_finite(budget);
  return TabuRun(base, search, params).run(elite, budget);
}

}  // namespace qlopt
