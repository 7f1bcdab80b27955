#ifndef QLOPT_CLI_EXPERIMENT_HPP
#define QLOPT_CLI_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlopt/analysis.hpp"
#include "qlopt/budget.hpp"
#include "qlopt/diversity.hpp"
#include "qlopt/enumerator.hpp"
#include "qlopt/qubo.hpp"

namespace qlopt::cli {

enum class EliteSource { Enumerated, Random };

struct ExperimentPlan {
  std::vector<QuboInstance> instances;
  std::vector<Ratio> alphas{Ratio{99, 100}, Ratio{39, 40}, Ratio{19, 20}};
  std::vector<double> delta_pcts{2.0, 5.0, 10.0};
  DeltaBasis delta_basis = DeltaBasis::MatrixEntry;

  Budget cell_budget = Budget::of_iterations(2000);
  /// Defaults to (cell count) x cell_budget.
  std::optional<Budget> baseline_budget;
  Budget enumeration_budget = Budget::of_iterations(50000);
  std::size_t top_k = 500;
  std::size_t elite_size = 10;
  EliteSource elite_source = EliteSource::Enumerated;
  bool enumerate_per_cell = false;
  Optimality optimality = Optimality::NonStrict;

  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  bool record_timings = false;

  std::size_t cell_count() const noexcept { return alphas.size() * delta_pcts.size(); }
  Budget resolved_baseline_budget() const;
  void validate() const;
};

struct CellResult {
  Ratio alpha;
  double delta_pct = 0.0;
  Coef delta = 0;
  std::size_t adjusted = 0;
  std::optional<Coef> q1_objective;
  std::optional<Coef> q2_objective;
  std::optional<double> improv_q1;
  std::optional<double> improv_q2;
  std::string note;
  std::string error;
  double seconds = 0.0;
};

struct ResultRow {
  std::string instance;
  std::size_t n = 0;
  std::size_t elite = 0;
  std::size_t enumerated = 0;
  std::optional<Coef> obj_q;
  std::optional<Coef> best_q1;
  std::optional<Coef> best_q2;
  std::optional<double> improv_q1;
  std::optional<double> improv_q2;
  std::optional<std::size_t> best_cell_q1;  // index into cells
  std::optional<std::size_t> best_cell_q2;
  std::vector<CellResult> cells;
  std::string error;
  double seconds = 0.0;
};

/// Runs the plan. Rows come back in instance order and are identical for
/// any jobs value.
std::vector<ResultRow> run_grid(const ExperimentPlan& plan);

/// One "cell" record per grid cell then one "instance" record, per row.
std::string rows_to_jsonl(const ExperimentPlan& plan, const std::vector<ResultRow>& rows);
std::string rows_to_table(const std::vector<ResultRow>& rows);

struct SamplerComparison {
  std::uint64_t seed = 0;
  std::optional<DiversityReport> cp;  // absent when nothing was found
  std::optional<DiversityReport> greedy;
  EnumerationStats cp_stats;
  std::uint64_t greedy_descents = 0;
};

/// Enumerator and greedy sampler under the same iteration budget.
SamplerComparison compare_samplers(const QuboInstance& instance, std::uint64_t iterations,
                                   std::size_t top_k, std::uint64_t seed, Optimality optimality);

/// "0.975" for ratios with a terminating decimal expansion, "p/q" otherwise.
std::string decimal_text(const Ratio& value);

/// Fixed-precision rendering used in every report, so outputs are
/// byte-stable.
std::string format_fixed(double value, int digits = 6);

}  // namespace qlopt::cli

#endif  // QLOPT_CLI_EXPERIMENT_HPP
