#include "qlopt/enumerator.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlopt/errors.hpp"
#include "qlopt/gain_state.hpp"
#include "qlopt/random.hpp"
#include "qlopt/search_state.hpp"

namespace qlopt {

void EnumerationConfig::validate() const {
  budget.validate();
  if (top_k < 1) throw std::invalid_argument("top-K must be at least 1");
  if (!(value_bias >= 0.0 && value_bias <= 1.0)) throw std::invalid_argument("value bias must lie in [0, 1]");
  if (restarts.enabled && !(restarts.growth > 1.0)) {
    throw std::invalid_argument("restart growth factor must exceed 1");
  }
}

namespace {

struct Decision {
  std::size_t var;
  std::uint8_t value;
  bool second_branch;
};

class Enumerator {
 public:
  Enumerator(const QuboInstance& instance, const EnumerationConfig& config)
      : instance_(instance),
        config_(config),
        state_(instance, config.optimality),
        tracker_(config.budget),
        rng_(config.seed) {
    fail_limit_ = config.restarts.base_fail_limit ? config.restarts.base_fail_limit
                                                  : std::max<std::uint64_t>(1, 10 * instance.size());
  }

  EnumerationResult run() {
    EnumerationResult result;
    if (state_.propagate() == Propagation::Conflict) {
      stats_.exhausted = true;  // the root deductions already contradict
    }
    bool conflict = false;
    bool blocked = false;
    while (!stats_.exhausted) {
      if (conflict || blocked) {
        const bool counts_as_failure = conflict;
        conflict = blocked = false;
        if (!backtrack(counts_as_failure)) break;
        continue;
      }
      if (state_.is_complete()) {
        record_solution();
        if (state_.decision_level() == 0) {
          stats_.exhausted = true;
          break;
        }
        if (config_.restarts.enabled && config_.restarts.on_solution) {
          restart();
        } else {
          blocked = true;  // the new no-good rejects this leaf
        }
        continue;
      }
      if (tracker_.exhausted()) break;
      const std::size_t var = pick_variable();
      const std::uint8_t value = pick_value(var);
      open(var, value, false);
      conflict = state_.propagate() == Propagation::Conflict;
    }
    finish(result);
    return result;
  }

 private:
  void open(std::size_t var, std::uint8_t value, bool second_branch) {
    tracker_.consume();
    ++stats_.nodes;
    decisions_.push_back({var, value, second_branch});
    state_.decide(var, value);
  }

  // Chronological backtracking to the most recent untried branch. Returns
  // false when the space or the budget is exhausted.
  bool backtrack(bool after_failure) {
    if (after_failure) {
      ++stats_.conflicts;
      ++fails_;
    }
    if (config_.restarts.enabled && fails_ >= fail_limit_) {
      fail_limit_ = static_cast<std::uint64_t>(std::ceil(static_cast<double>(fail_limit_) * config_.restarts.growth));
      restart();
      return true;
    }
    while (!decisions_.empty()) {
      Decision d = decisions_.back();
      decisions_.pop_back();
      state_.backtrack(decisions_.size());
      if (d.second_branch) continue;
      if (tracker_.exhausted()) return false;
      open(d.var, static_cast<std::uint8_t>(1U - d.value), true);
      if (state_.propagate() == Propagation::Consistent) return true;
      ++stats_.conflicts;
      ++fails_;
    }
    stats_.exhausted = true;
    return false;
  }

  void restart() {
    state_.backtrack(0);
    decisions_.clear();
    fails_ = 0;
    ++stats_.restarts;
  }

  std::size_t pick_variable() const {
    std::size_t best = state_.size();
    Coef best_score = -1;
    for (std::size_t i = 0; i < state_.size(); ++i) {
      if (state_.is_assigned(i)) continue;
      if (config_.branching == BranchingRule::FirstFree) return i;
      const Coef score = std::abs(state_.expr_lo(i) + state_.expr_hi(i));
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }

  std::uint8_t pick_value(std::size_t var) {
    const Coef centre = state_.expr_lo(var) + state_.expr_hi(var);
    std::uint8_t preferred;
    if (centre > 0) {
      preferred = 1;
    } else if (centre < 0) {
      preferred = 0;
    } else {
      preferred = static_cast<std::uint8_t>(rng_() & 1U);
    }
    return bernoulli(rng_, config_.value_bias) ? preferred : static_cast<std::uint8_t>(1U - preferred);
  }

  void record_solution() {
    BitVector bits = state_.assignment();
    if (!is_one_flip_local_optimum(instance_, bits, config_.optimality)) {
      throw VerificationError("enumerator produced " + to_bit_string(bits) + ", which is not a local optimum");
    }
    state_.add_nogood(bits);
    Solution s = Solution::evaluate(instance_, std::move(bits));
    if (!found_.insert(std::move(s))) {
      throw VerificationError("enumerator reported a blocked solution twice");
    }
    ++stats_.solutions_found;
    // Keep memory bounded on long runs; no-goods already prevent repeats.
    if (found_.size() >= 2 * config_.top_k + 1024) {
      found_.sort_canonical();
      found_.truncate(config_.top_k);
    }
  }

  void finish(EnumerationResult& result) {
    found_.sort_canonical();
    found_.truncate(config_.top_k);
    stats_.seconds = tracker_.elapsed_seconds();
    result.solutions = std::move(found_);
    result.stats = stats_;
  }

  const QuboInstance& instance_;
  const EnumerationConfig& config_;
  SearchState state_;
  BudgetTracker tracker_;
  Rng rng_;
  std::vector<Decision> decisions_;
  LocalOptimaSet found_;
  EnumerationStats stats_;
  std::uint64_t fails_ = 0;
  std::uint64_t fail_limit_ = 0;
};

}  // namespace

EnumerationResult enumerate_local_optima(const QuboInstance& instance, const EnumerationConfig& config) {
  config.validate();
  return Enumerator(instance, config).run();
}

}  // namespace qlopt
