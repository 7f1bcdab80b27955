#ifndef QLOPT_BUDGET_HPP
#define QLOPT_BUDGET_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace qlopt {

/// Work limit in deterministic iteration units, wall-clock seconds, or both
/// (whichever runs out first). Neither set means unlimited.
struct Budget {
  std::optional<std::uint64_t> iterations;
  std::optional<double> seconds;

  static Budget unlimited() { return {}; }
  static Budget of_iterations(std::uint64_t n) { return {n, std::nullopt}; }
  static Budget of_seconds(double s) { return {std::nullopt, s}; }

  bool is_unlimited() const noexcept { return !iterations && !seconds; }

  void validate() const {
    if (iterations && *iterations == 0) throw std::invalid_argument("iteration budget must be positive");
    if (seconds && !(*seconds > 0.0)) throw std::invalid_argument("time budget must be positive");
  }
};

/// Tracks consumption against a Budget. The clock is sampled every 64 checks.
class BudgetTracker {
 public:
  explicit BudgetTracker(const Budget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  void consume(std::uint64_t units = 1) noexcept { used_ += units; }
  std::uint64_t used() const noexcept { return used_; }

  bool exhausted() {
    if (budget_.iterations && used_ >= *budget_.iterations) return true;
    if (budget_.seconds && (++checks_ & 63U) == 0) timed_out_ = elapsed_seconds() >= *budget_.seconds;
    return timed_out_;
  }

  double elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t used_ = 0;
  std::uint64_t checks_ = 0;
  bool timed_out_ = false;
};

}  // namespace qlopt

#endif  // QLOPT_BUDGET_HPP
