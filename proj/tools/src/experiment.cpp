#include "qlopt_cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qlopt/random.hpp"
#include "qlopt/tabu.hpp"

namespace qlopt::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void run_parallel(std::size_t tasks, std::size_t jobs, const std::function<void(std::size_t)>& task) {
  jobs = std::max<std::size_t>(1, std::min(jobs, tasks));
  if (jobs == 1) {
    for (std::size_t t = 0; t < tasks; ++t) task(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t t = next++; t < tasks; t = next++) task(t);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

struct Prepared {
  std::optional<FrequencyProfile> profile;
  std::optional<EliteSet> elite;
  std::size_t enumerated = 0;
  std::string error;
};

EnumerationConfig enumeration_config(const ExperimentPlan& plan, std::uint64_t seed) {
  EnumerationConfig config;
  config.budget = plan.enumeration_budget;
  config.top_k = plan.top_k;
  config.seed = seed;
  config.optimality = plan.optimality;
  return config;
}

EliteSet random_elite(const QuboInstance& instance, std::size_t size, std::uint64_t seed) {
  EliteSet elite(size);
  Rng rng(seed);
  // Bounded attempts: tiny instances may have fewer than `size` points.
  for (std::size_t attempt = 0; elite.size() < size && attempt < 64 * size; ++attempt) {
    BitVector bits(instance.size());
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1U);
    elite.try_insert(Solution::evaluate(instance, std::move(bits)));
  }
  return elite;
}

Prepared prepare(const ExperimentPlan& plan, const QuboInstance& instance, std::uint64_t seed) {
  Prepared out;
  try {
    auto result = enumerate_local_optima(instance, enumeration_config(plan, seed));
    out.enumerated = result.solutions.size();
    if (result.solutions.empty()) {
      out.error = "enumeration found no local optimum within the budget";
      return out;
    }
    out.profile = frequency(result.solutions);
    if (plan.elite_source == EliteSource::Enumerated) {
      out.elite = EliteSet::from(result.solutions, plan.elite_size);
    } else {
      out.elite = random_elite(instance, plan.elite_size, seed);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::optional<double> improvement(std::optional<Coef> base, std::optional<Coef> candidate, std::string& note) {
  if (!base || !candidate) return std::nullopt;
  if (*base == 0) {
    note = "baseline objective is 0; improvement undefined";
    return std::nullopt;
  }
  return improvement_pct(*base, *candidate);
}

std::optional<std::size_t> best_cell(const std::vector<CellResult>& cells,
                                     std::optional<Coef> CellResult::*objective) {
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& value = cells[c].*objective;
    if (value && (!best || *value > *(cells[*best].*objective))) best = c;
  }
  return best;
}

nlohmann::ordered_json optional_json(const std::optional<Coef>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string budget_text(const Budget& budget) {
  std::string out;
  if (budget.iterations) out += std::to_string(*budget.iterations) + " iters";
  if (budget.seconds) out += (out.empty() ? "" : " / ") + format_fixed(*budget.seconds, 3) + " s";
  return out.empty() ? "unlimited" : out;
}

}  // namespace

std::string decimal_text(const Ratio& value) {
  std::int64_t den = value.den();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  const int digits = std::max(twos, fives);
  if (den != 1 || digits > 18) return value.to_string();
  std::int64_t scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  const std::int64_t scaled = value.num() * (scale / value.den());
  const std::int64_t magnitude = scaled < 0 ? -scaled : scaled;
  std::string out = std::to_string(magnitude / scale);
  if (digits > 0) {
    std::string frac = std::to_string(magnitude % scale);
    out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  }
  return scaled < 0 ? "-" + out : out;
}

std::string format_fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  std::string out = buffer;
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

Budget ExperimentPlan::resolved_baseline_budget() const {
  if (baseline_budget) return *baseline_budget;
  Budget total;
  const auto cells = static_cast<std::uint64_t>(cell_count());
  if (cell_budget.iterations) total.iterations = *cell_budget.iterations * cells;
  if (cell_budget.seconds) total.seconds = *cell_budget.seconds * static_cast<double>(cells);
  return total;
}

void ExperimentPlan::validate() const {
  if (alphas.empty()) throw std::invalid_argument("alpha grid is empty");
  if (delta_pcts.empty()) throw std::invalid_argument("delta grid is empty");
  for (const auto& a : alphas) {
    if (a < Ratio{0, 1} || Ratio{1, 1} < a) throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  for (double d : delta_pcts) {
    if (!(d >= 0.0)) throw std::invalid_argument("delta percentages must be non-negative");
  }
  if (cell_budget.is_unlimited()) throw std::invalid_argument("the per-cell budget must be finite");
  cell_budget.validate();
  resolved_baseline_budget().validate();
  enumeration_budget.validate();
  if (top_k == 0) throw std::invalid_argument("top-k must be at least 1");
  if (elite_size == 0) throw std::invalid_argument("elite size must be at least 1");
}

std::vector<ResultRow> run_grid(const ExperimentPlan& plan) {
  plan.validate();
  const std::size_t count = plan.instances.size();
  const std::size_t cells = plan.cell_count();

  std::vector<ResultRow> rows(count);
  std::vector<Prepared> shared(count);
  std::vector<std::vector<Prepared>> per_cell(count);
  run_parallel(count, plan.jobs, [&](std::size_t k) {
    const auto& instance = plan.instances[k];
    rows[k].instance = instance.name();
    rows[k].n = instance.size();
    rows[k].cells.resize(cells);
    shared[k] = prepare(plan, instance, plan.seed);
    rows[k].enumerated = shared[k].enumerated;
    rows[k].elite = shared[k].elite ? shared[k].elite->size() : 0;
    rows[k].error = shared[k].error;
  });
  if (plan.enumerate_per_cell) {
    for (auto& p : per_cell) p.resize(cells);
    run_parallel(count * cells, plan.jobs, [&](std::size_t t) {
      const std::size_t k = t / cells;
      const std::size_t c = t % cells;
      if (rows[k].error.empty()) per_cell[k][c] = prepare(plan, plan.instances[k], plan.seed + 1 + c);
    });
  }

  TabuParams params;
  params.seed = plan.seed;

  // Task 0 of each instance is the baseline, tasks 1..cells the grid cells.
  run_parallel(count * (cells + 1), plan.jobs, [&](std::size_t t) {
    const std::size_t k = t / (cells + 1);
    const std::size_t slot = t % (cells + 1);
    auto& row = rows[k];
    if (!shared[k].error.empty()) return;
    const auto& instance = plan.instances[k];
    const auto start = Clock::now();
    if (slot == 0) {
      try {
        row.obj_q = run_variant(instance, instance, *shared[k].elite, plan.resolved_baseline_budget(), params)
                        .best.objective;
      } catch (const std::exception& e) {
        row.error = std::string("baseline: ") + e.what();
      }
      row.seconds = seconds_since(start);
      return;
    }
    const std::size_t c = slot - 1;
    auto& cell = row.cells[c];
    cell.alpha = plan.alphas[c / plan.delta_pcts.size()];
    cell.delta_pct = plan.delta_pcts[c % plan.delta_pcts.size()];
    const Prepared& prep = plan.enumerate_per_cell ? per_cell[k][c] : shared[k];
    if (!prep.error.empty()) {
      cell.error = prep.error;
      return;
    }
    try {
      TransformConfig config;
      config.alpha = cell.alpha;
      config.delta = cell.delta_pct;
      config.mode = DeltaMode::Percent;
      config.basis = plan.delta_basis;
      std::optional<TransformResult> transformed;
      try {
        transformed = transform(instance, *prep.profile, config);
        cell.delta = transformed->delta;
        cell.adjusted = transformed->adjusted;
      } catch (const ZeroDeltaError&) {
        cell.note = "delta resolves to 0; identity transform";
      }
      const QuboInstance& q1 = transformed ? transformed->favor : instance;
      const QuboInstance& q2 = transformed ? transformed->escape : instance;
      cell.q1_objective = run_variant(instance, q1, *prep.elite, plan.cell_budget, params).best.objective;
      cell.q2_objective = run_variant(instance, q2, *prep.elite, plan.cell_budget, params).best.objective;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    cell.seconds = seconds_since(start);
  });

  for (auto& row : rows) {
    if (!row.error.empty()) continue;
    for (auto& cell : row.cells) {
      cell.improv_q1 = improvement(row.obj_q, cell.q1_objective, cell.note);
      cell.improv_q2 = improvement(row.obj_q, cell.q2_objective, cell.note);
    }
    row.best_cell_q1 = best_cell(row.cells, &CellResult::q1_objective);
    row.best_cell_q2 = best_cell(row.cells, &CellResult::q2_objective);
    std::string ignored;
    if (row.best_cell_q1) {
      row.best_q1 = row.cells[*row.best_cell_q1].q1_objective;
      row.improv_q1 = improvement(row.obj_q, row.best_q1, ignored);
    }
    if (row.best_cell_q2) {
      row.best_q2 = row.cells[*row.best_cell_q2].q2_objective;
      row.improv_q2 = improvement(row.obj_q, row.best_q2, ignored);
    }
    for (const auto& cell : row.cells) row.seconds += cell.seconds;
  }
  return rows;
}

std::string rows_to_jsonl(const ExperimentPlan& plan, const std::vector<ResultRow>& rows) {
  using Json = nlohmann::ordered_json;
  const std::string cell_budget = budget_text(plan.cell_budget);
  std::ostringstream out;
  for (const auto& row : rows) {
    for (const auto& cell : row.cells) {
      Json j;
      j["record"] = "cell";
      j["instance"] = row.instance;
      j["alpha"] = decimal_text(cell.alpha);
      j["delta_pct"] = cell.delta_pct;
      j["delta"] = cell.delta;
      j["adjusted"] = cell.adjusted;
      j["q1_objective"] = optional_json(cell.q1_objective);
      j["q2_objective"] = optional_json(cell.q2_objective);
      j["q1_improvement"] = optional_json(cell.improv_q1);
      j["q2_improvement"] = optional_json(cell.improv_q2);
      j["seed"] = plan.seed;
      j["budget"] = cell_budget;
      if (!cell.note.empty()) j["note"] = cell.note;
      if (!cell.error.empty()) j["error"] = cell.error;
      if (plan.record_timings) j["seconds"] = cell.seconds;
      out << j.dump() << '\n';
    }
    Json j;
    j["record"] = "instance";
    j["instance"] = row.instance;
    j["n"] = row.n;
    j["enumerated"] = row.enumerated;
    j["elite"] = row.elite;
    j["obj_q"] = optional_json(row.obj_q);
    j["best_q1"] = optional_json(row.best_q1);
    j["improv_q1"] = optional_json(row.improv_q1);
    j["best_q2"] = optional_json(row.best_q2);
    j["improv_q2"] = optional_json(row.improv_q2);
    auto winner = [&](const std::optional<std::size_t>& c) {
      if (!c) return Json(nullptr);
      return Json{{"alpha", decimal_text(row.cells[*c].alpha)}, {"delta_pct", row.cells[*c].delta_pct}};
    };
    j["winner_q1"] = winner(row.best_cell_q1);
    j["winner_q2"] = winner(row.best_cell_q2);
    j["seed"] = plan.seed;
    j["cell_budget"] = cell_budget;
    j["baseline_budget"] = budget_text(plan.resolved_baseline_budget());
    j["enumeration_budget"] = budget_text(plan.enumeration_budget);
    if (!row.error.empty()) j["error"] = row.error;
    if (plan.record_timings) j["seconds"] = row.seconds;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string rows_to_table(const std::vector<ResultRow>& rows) {
  const std::vector<std::string> header{"instance", "n", "Obj_Q", "Best_Q1", "Improv_Q1", "Best_Q2", "Improv_Q2",
                                        "cell_Q1", "cell_Q2"};
  std::vector<std::vector<std::string>> table{header};
  auto num = [](const auto& v) { return v ? std::to_string(*v) : std::string("-"); };
  auto pct = [](const std::optional<double>& v) { return v ? format_fixed(*v, 4) : std::string("-"); };
  auto cell = [](const ResultRow& row, const std::optional<std::size_t>& c) {
    if (!c) return std::string("-");
    return decimal_text(row.cells[*c].alpha) + "/" + format_fixed(row.cells[*c].delta_pct, 1) + "%";
  };
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      table.push_back({row.instance, std::to_string(row.n), "error: " + row.error});
      continue;
    }
    table.push_back({row.instance, std::to_string(row.n), num(row.obj_q), num(row.best_q1), pct(row.improv_q1),
                     num(row.best_q2), pct(row.improv_q2), cell(row, row.best_cell_q1), cell(row, row.best_cell_q2)});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t c = 0; c + 1 < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << "  ";
      if (c + 1 == line.size()) {
        out << line[c];
      } else {
        out << line[c] << std::string(width[c] - line[c].size(), ' ');
      }
    }
    out << '\n';
  }
  return out.str();
}

SamplerComparison compare_samplers(const QuboInstance& instance, std::uint64_t iterations, std::size_t top_k,
                                   std::uint64_t seed, Optimality optimality) {
  EnumerationConfig config;
  config.budget = Budget::of_iterations(iterations);
  config.top_k = top_k;
  config.seed = seed;
  config.optimality = optimality;
  auto cp = enumerate_local_optima(instance, config);
  auto greedy = sample_greedy_restarts(instance, Budget::of_iterations(iterations), top_k, seed);
  SamplerComparison out;
  out.seed = seed;
  if (!cp.solutions.empty()) out.cp = diversity_report(cp.solutions);
  if (!greedy.solutions.empty()) out.greedy = diversity_report(greedy.solutions);
  out.cp_stats = cp.stats;
  out.greedy_descents = greedy.descents;
  return out;
}

}  // namespace qlopt::cli
