#include "qlopt/analysis.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace qlopt {

FrequencyProfile::FrequencyProfile(std::vector<std::size_t> ones, std::size_t samples)
    : ones_(std::move(ones)), samples_(samples) {
  if (samples_ == 0) throw std::invalid_argument("frequency profile needs at least one sample");
  for (const std::size_t c : ones_) {
    if (c > samples_) throw std::invalid_argument("frequency count exceeds sample count");
  }
}

Ratio FrequencyProfile::freq0(std::size_t i) const {
  return {static_cast<std::int64_t>(zeros(i)), static_cast<std::int64_t>(samples_)};
}

Ratio FrequencyProfile::freq1(std::size_t i) const {
  return {static_cast<std::int64_t>(ones(i)), static_cast<std::int64_t>(samples_)};
}

FrequencyProfile frequency(const LocalOptimaSet& set) {
  if (set.empty()) throw std::invalid_argument("frequency of an empty solution set");
  std::vector<std::size_t> ones(set.variable_count(), 0);
  for (const auto& s : set) {
    for (std::size_t i = 0; i < ones.size(); ++i) ones[i] += s.bits[i];
  }
  return {std::move(ones), set.size()};
}

Coef resolve_delta(const QuboInstance& instance, const TransformConfig& config) {
  if (!(config.delta >= 0.0) || !std::isfinite(config.delta)) {
    throw std::invalid_argument("delta must be a non-negative finite number");
  }
  if (config.mode == DeltaMode::Absolute) {
    if (config.delta != std::floor(config.delta)) throw std::invalid_argument("absolute delta must be an integer");
    return static_cast<Coef>(config.delta);
  }
  const double basis = config.basis == DeltaBasis::MatrixEntry
                           ? static_cast<double>(instance.max_abs_matrix_entry_x2()) / 2.0
                           : static_cast<double>(instance.max_abs_coefficient());
  return static_cast<Coef>(std::llround(config.delta / 100.0 * basis));
}

TransformResult transform(const QuboInstance& instance, const FrequencyProfile& profile,
                          const TransformConfig& config) {
  if (profile.size() != instance.size()) throw std::invalid_argument("profile length does not match instance");
  if (config.alpha < Ratio{0, 1} || config.alpha > Ratio{1, 1}) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  const Coef delta = resolve_delta(instance, config);
  if (delta == 0) throw ZeroDeltaError("delta resolves to 0; the transformation would be the identity");

  std::vector<Coef> favor(instance.linear().begin(), instance.linear().end());
  std::vector<Coef> escape = favor;
  std::size_t adjusted = 0;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const bool zero_frequent = profile.freq0(i) >= config.alpha;
    const bool one_frequent = profile.freq1(i) >= config.alpha;
    if (zero_frequent) {
      favor[i] -= delta;
      escape[i] += delta;
    }
    if (one_frequent) {
      favor[i] += delta;
      escape[i] -= delta;
    }
    if (zero_frequent || one_frequent) ++adjusted;
  }
  TransformResult result{instance.with_linear(std::move(favor)), instance.with_linear(std::move(escape)), delta,
                         adjusted};
  result.favor.set_name(instance.name() + "_Q1");
  result.escape.set_name(instance.name() + "_Q2");
  return result;
}

double improvement_pct(Coef baseline, Coef candidate) {
  if (baseline == 0) throw std::invalid_argument("improvement relative to a zero baseline is undefined");
  return 100.0 * static_cast<double>(candidate - baseline) / std::abs(static_cast<double>(baseline));
}

}  // namespace qlopt
