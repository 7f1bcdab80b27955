#ifndef QLOPT_ANALYSIS_HPP
#define QLOPT_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qlopt/rational.hpp"
#include "qlopt/solution_set.hpp"

namespace qlopt {

/// Per-variable share of solutions with x_i = 0 / x_i = 1. Counts are kept as
/// integers so every frequency is an exact multiple of 1/|L|.
class FrequencyProfile {
 public:
  FrequencyProfile() = default;
  FrequencyProfile(std::vector<std::size_t> ones, std::size_t samples);

  std::size_t size() const noexcept { return ones_.size(); }
  std::size_t sample_count() const noexcept { return samples_; }
  std::size_t ones(std::size_t i) const { return ones_.at(i); }
  std::size_t zeros(std::size_t i) const { return samples_ - ones_.at(i); }

  Ratio freq0(std::size_t i) const;
  Ratio freq1(std::size_t i) const;

 private:
  std::vector<std::size_t> ones_;
  std::size_t samples_ = 0;
};

/// Throws std::invalid_argument for an empty set.
FrequencyProfile frequency(const LocalOptimaSet& set);

enum class DeltaMode {
  Absolute,
  /// delta is a percentage of the largest coefficient magnitude.
  Percent,
};

enum class DeltaBasis {
  /// Largest |entry| of the symmetric matrix the file held
  /// (max of |q_i| and |q_ij| / 2); ORLIB's [-100, 100] gives 100.
  MatrixEntry,
  /// Largest |q_i| or |q_ij| of the canonical (doubled) form.
  Canonical,
};

struct TransformConfig {
  Ratio alpha{19, 20};
  double delta = 2.0;
  DeltaMode mode = DeltaMode::Absolute;
  DeltaBasis basis = DeltaBasis::MatrixEntry;
};

/// Thrown when delta is or rounds to zero, so an identity transform is never
/// produced silently.
class ZeroDeltaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Resolved integer delta; may be 0. Throws std::invalid_argument for a
/// negative delta, or a non-integral absolute one.
Coef resolve_delta(const QuboInstance& instance, const TransformConfig& config);

struct TransformResult {
  QuboInstance favor;   // Q1: reward the frequent value
  QuboInstance escape;  // Q2: penalise it
  Coef delta = 0;
  std::size_t adjusted = 0;  // variables meeting the threshold
};

/**
 * Soft-constraint transformation of the linear terms:
 *   freq0[i] >= alpha:  Q1.q_i -= delta,  Q2.q_i += delta
 *   freq1[i] >= alpha:  Q1.q_i += delta,  Q2.q_i -= delta
 * Both rules apply (and cancel) when alpha <= 1/2 lets a variable meet both.
 * Pair terms are copied unchanged.
 */
TransformResult transform(const QuboInstance& instance, const FrequencyProfile& profile,
                          const TransformConfig& config);

/// 100 * (candidate - baseline) / |baseline|. Throws on zero baseline.
double improvement_pct(Coef baseline, Coef candidate);

}  // namespace qlopt

#endif  // QLOPT_ANALYSIS_HPP
