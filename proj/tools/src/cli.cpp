#include "qlopt_cli/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qlopt/analysis.hpp"
#include "qlopt/big_m.hpp"
#include "qlopt/diversity.hpp"
#include "qlopt/enumerator.hpp"
#include "qlopt/errors.hpp"
#include "qlopt/instance_io.hpp"
#include "qlopt/oracle.hpp"
#include "qlopt/solution_io.hpp"
#include "qlopt/stats.hpp"
#include "qlopt/tabu.hpp"
#include "qlopt_cli/experiment.hpp"

namespace qlopt::cli {

namespace {

struct InstanceArgs {
  std::string path;
  std::size_t index = 0;
  bool negate = false;
  bool strict = false;

  void add_to(CLI::App& app, bool with_index = true) {
    app.add_option("instance", path, "Instance file (ORLIB sparse text)")->required();
    if (with_index) app.add_option("--index", index, "Position of the instance in the file, from 0");
    app.add_flag("--negate", negate, "Negate all coefficients on input (minimisation files)");
    app.add_flag("--strict", strict, "Require strict one-flip optimality");
  }

  Optimality optimality() const { return strict ? Optimality::Strict : Optimality::NonStrict; }

  QuboInstance load() const {
    auto instances = read_instance_file(path, ParseOptions{negate});
    if (index >= instances.size()) {
      throw std::invalid_argument("file holds " + std::to_string(instances.size()) + " instance(s); --index " +
                                  std::to_string(index) + " is out of range");
    }
    return std::move(instances[index]);
  }
};

struct BudgetArgs {
  std::optional<std::uint64_t> iters;
  std::optional<double> seconds;

  void add_to(CLI::App& app, const std::string& what) {
    app.add_option("--iters", iters, what + " budget in iterations");
    app.add_option("--time", seconds, what + " budget in seconds");
  }

  Budget get() const {
    Budget budget{iters, seconds};
    budget.validate();
    return budget;
  }

  Budget finite(const std::string& command) const {
    if (!iters && !seconds) throw std::invalid_argument(command + " needs --iters or --time");
    return get();
  }
};

std::string mu_text(const std::optional<double>& v) { return v ? format_fixed(*v) : std::string("n/a"); }

void print_report(std::ostream& out, const LocalOptimaSet& set) {
  out << "solutions: " << set.size() << '\n';
  if (set.empty()) {
    out << "mu_d: n/a\nmu_obj: n/a\n";
    return;
  }
  const auto report = diversity_report(set);
  out << "mu_d: " << mu_text(report.mean_distance) << '\n';
  out << "mu_obj: " << format_fixed(report.mean_objective) << '\n';
}

void emit_solutions(std::ostream& out, const std::string& path, const LocalOptimaSet& set) {
  if (path.empty()) {
    out << write_solutions(set);
  } else {
    write_text_file(path, write_solutions(set));
  }
}

DeltaBasis parse_basis(const std::string& text) {
  if (text == "entry") return DeltaBasis::MatrixEntry;
  if (text == "canonical") return DeltaBasis::Canonical;
  throw std::invalid_argument("unknown delta basis '" + text + "' (entry or canonical)");
}

std::vector<Ratio> parse_alphas(const std::vector<std::string>& texts) {
  std::vector<Ratio> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_decimal_ratio(t));
  return out;
}

void cmd_enumerate(std::ostream& out, const InstanceArgs& in, const BudgetArgs& budget,
                   std::size_t top_k, std::uint64_t seed, const std::string& branching, double bias,
                   const std::string& out_path, const std::string& model_out) {
  const auto instance = in.load();
  EnumerationConfig config;
  config.budget = budget.get();
  config.top_k = top_k;
  config.seed = seed;
  config.optimality = in.optimality();
  config.value_bias = bias;
  if (branching == "first-free") {
    config.branching = BranchingRule::FirstFree;
  } else if (branching != "most-committed") {
    throw std::invalid_argument("unknown branching rule '" + branching + "'");
  }
  if (!model_out.empty()) write_text_file(model_out, to_lp_format(build_big_m_model(instance)));
  const auto result = enumerate_local_optima(instance, config);
  emit_solutions(out, out_path, result.solutions);
  print_report(out, result.solutions);
  const auto& s = result.stats;
  out << "found: " << s.solutions_found << "  nodes: " << s.nodes << "  conflicts: " << s.conflicts
      << "  restarts: " << s.restarts << "  exhausted: " << (s.exhausted ? "yes" : "no") << '\n';
}

void cmd_oracle(std::ostream& out, const InstanceArgs& in, const std::string& out_path) {
  const auto instance = in.load();
  const auto set = brute_force_local_optima(instance, in.optimality());
  emit_solutions(out, out_path, set);
  print_report(out, set);
  const auto best = brute_force_global_optimum(instance);
  out << "global: " << to_bit_string(best.bits) << ' ' << best.objective << '\n';
}

void cmd_sample_greedy(std::ostream& out, const InstanceArgs& in, const BudgetArgs& budget, std::size_t top_k,
                       std::uint64_t seed, const std::string& out_path) {
  const auto instance = in.load();
  const auto result = sample_greedy_restarts(instance, budget.finite("sample-greedy"), top_k, seed);
  emit_solutions(out, out_path, result.solutions);
  print_report(out, result.solutions);
  out << "descents: " << result.descents << "  iterations: " << result.iterations << '\n';
}

struct Accumulator {
  double distance = 0, objective = 0;
  std::size_t distance_count = 0, objective_count = 0;

  void add(const std::optional<DiversityReport>& r) {
    if (!r) return;
    objective += r->mean_objective;
    ++objective_count;
    if (r->mean_distance) distance += *r->mean_distance, ++distance_count;
  }
  static std::optional<double> mean(double sum, std::size_t k) {
    return k ? std::optional<double>(sum / static_cast<double>(k)) : std::nullopt;
  }
  std::optional<double> mean_distance() const { return mean(distance, distance_count); }
  std::optional<double> mean_objective() const { return mean(objective, objective_count); }
};

std::string summary_text(const std::optional<DiversityReport>& r) {
  if (!r) return "0 mu_d n/a mu_obj n/a";
  return std::to_string(r->count) + " mu_d " + mu_text(r->mean_distance) + " mu_obj " +
         format_fixed(r->mean_objective);
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

void put_report(nlohmann::ordered_json& j, const std::string& prefix, const std::optional<DiversityReport>& r) {
  j[prefix + "_count"] = r ? r->count : 0;
  j[prefix + "_mu_d"] = optional_json(r ? r->mean_distance : std::nullopt);
  j[prefix + "_mu_obj"] = optional_json(r ? std::optional<double>(r->mean_objective) : std::nullopt);
}

void cmd_compare(std::ostream& out, const InstanceArgs& in, std::uint64_t iters, std::size_t top_k,
                 std::uint64_t seed, std::size_t runs, const std::string& out_path) {
  if (runs == 0) throw std::invalid_argument("--runs must be at least 1");
  if (iters == 0) throw std::invalid_argument("--iters must be positive");
  const auto instance = in.load();
  std::ostringstream jsonl;
  Accumulator cp_acc, g_acc;
  for (std::size_t r = 0; r < runs; ++r) {
    const auto c = compare_samplers(instance, iters, top_k, seed + r, in.optimality());
    out << "seed " << c.seed << "  cp: " << summary_text(c.cp) << "  greedy: " << summary_text(c.greedy) << '\n';
    nlohmann::ordered_json j;
    j["instance"] = instance.name();
    j["seed"] = c.seed;
    j["iterations"] = iters;
    put_report(j, "cp", c.cp);
    put_report(j, "greedy", c.greedy);
    jsonl << j.dump() << '\n';
    cp_acc.add(c.cp);
    g_acc.add(c.greedy);
  }
  const auto cp_mean_d = cp_acc.mean_distance();
  const auto g_mean_d = g_acc.mean_distance();
  out << "mean  cp: mu_d " << mu_text(cp_mean_d) << " mu_obj " << mu_text(cp_acc.mean_objective())
      << "  greedy: mu_d " << mu_text(g_mean_d) << " mu_obj " << mu_text(g_acc.mean_objective()) << '\n';
  out << "mu_d ratio (cp/greedy): "
      << (cp_mean_d && g_mean_d && *g_mean_d > 0 ? format_fixed(*cp_mean_d / *g_mean_d) : std::string("n/a"))
      << '\n';
  if (!out_path.empty()) write_text_file(out_path, jsonl.str());
}

void cmd_transform(std::ostream& out, const InstanceArgs& in, const std::string& solutions_path,
                   const std::string& alpha, std::optional<double> delta, std::optional<double> delta_pct,
                   const std::string& basis, const std::string& out_q1, const std::string& out_q2) {
  if (delta.has_value() == delta_pct.has_value()) {
    throw std::invalid_argument("give exactly one of --delta and --delta-pct");
  }
  const auto instance = in.load();
  const auto set = parse_solutions(read_text_file(solutions_path), &instance);
  TransformConfig config;
  config.alpha = parse_decimal_ratio(alpha);
  config.delta = delta ? *delta : *delta_pct;
  config.mode = delta ? DeltaMode::Absolute : DeltaMode::Percent;
  config.basis = parse_basis(basis);
  const auto result = transform(instance, frequency(set), config);
  if (!out_q1.empty()) write_text_file(out_q1, write_instance(result.favor));
  if (!out_q2.empty()) write_text_file(out_q2, write_instance(result.escape));
  out << "samples: " << set.size() << '\n';
  out << "delta: " << result.delta << '\n';
  out << "adjusted: " << result.adjusted << '\n';
}

void cmd_ttest(std::ostream& out, const std::string& path) {
  const auto text = read_text_file(path);
  std::vector<double> a;
  std::vector<double> b;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(number, e.what());
    }
    if (!j.is_object()) throw ParseError(number, "expected a JSON object");
    const auto q1 = j.find("improv_q1");
    const auto q2 = j.find("improv_q2");
    if (q1 == j.end() || q2 == j.end() || !q1->is_number() || !q2->is_number()) continue;
    a.push_back(q1->get<double>());
    b.push_back(q2->get<double>());
  }
  if (a.size() < 2) {
    throw std::invalid_argument("need at least 2 rows with improv_q1 and improv_q2, found " +
                                std::to_string(a.size()));
  }
  const auto r = paired_t_test(a, b);
  char t_text[64];
  std::snprintf(t_text, sizeof t_text, "%.12f", r.t);
  out << "rows: " << a.size() << '\n';
  out << "t: " << t_text << '\n';
  out << "df: " << r.df << '\n';
  out << "critical_05: " << format_fixed(t_critical_two_sided_05(r.df)) << '\n';
  out << "verdict: " << (significant_at_05(r) ? "significant" : "not significant") << " at 0.05\n";
}

void cmd_generate(std::ostream& out, GeneratorConfig config, std::size_t count, const std::string& out_path) {
  if (count == 0) throw std::invalid_argument("--count must be at least 1");
  std::vector<QuboInstance> instances;
  const std::string base_name = config.name;
  for (std::size_t k = 0; k < count; ++k) {
    GeneratorConfig c = config;
    c.seed = config.seed + k;
    if (!base_name.empty() && count > 1) c.name = base_name + "_" + std::to_string(k);
    instances.push_back(generate_instance(c));
  }
  const auto text = write_instances(instances);
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

}  // namespace

Ratio parse_decimal_ratio(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char ch : text) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') throw std::invalid_argument("not a decimal number: '" + original + "'");
    if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10 ||
        (seen_point && den > std::numeric_limits<std::int64_t>::max() / 10)) {
      throw std::invalid_argument("too many digits: '" + original + "'");
    }
    num = num * 10 + (ch - '0');
    if (seen_point) den *= 10;
    seen_digit = true;
  }
  if (!seen_digit) throw std::invalid_argument("not a decimal number: '" + original + "'");
  return Ratio{negative ? -num : num, den};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qlopt: one-flip local optima enumeration and Q-matrix transformation for QUBO"};
  app.require_subcommand(1);

  InstanceArgs in;
  BudgetArgs budget;
  std::size_t top_k = 500;
  std::uint64_t seed = 1;
  std::string out_path;

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate one-flip local optima by constraint propagation");
  std::string branching = "most-committed";
  double bias = 0.8;
  std::string model_out;
  in.add_to(*enumerate);
  budget.add_to(*enumerate, "Search");
  enumerate->add_option("--top-k", top_k, "Keep the best K solutions")->capture_default_str();
  enumerate->add_option("--seed", seed)->capture_default_str();
  enumerate->add_option("--branching", branching, "most-committed or first-free")->capture_default_str();
  enumerate->add_option("--value-bias", bias, "Probability of trying the sign-favoured value first")
      ->capture_default_str();
  enumerate->add_option("--out", out_path, "Solution file (JSON lines); stdout if omitted");
  enumerate->add_option("--model-out", model_out, "Also write the big-M model in LP format");

  auto* greedy = app.add_subcommand("sample-greedy", "Collect local optima by random-restart greedy descent");
  in.add_to(*greedy);
  budget.add_to(*greedy, "Sampling");
  greedy->add_option("--top-k", top_k)->capture_default_str();
  greedy->add_option("--seed", seed)->capture_default_str();
  greedy->add_option("--out", out_path, "Solution file (JSON lines); stdout if omitted");

  auto* compare = app.add_subcommand("compare", "Enumerator vs greedy sampler diversity at equal budgets");
  std::uint64_t compare_iters = 50000;
  std::size_t runs = 1;
  in.add_to(*compare);
  compare->add_option("--iters", compare_iters, "Budget per sampler and run")->capture_default_str();
  compare->add_option("--top-k", top_k)->capture_default_str();
  compare->add_option("--seed", seed, "First seed")->capture_default_str();
  compare->add_option("--runs", runs, "Seeds seed, seed+1, ...")->capture_default_str();
  compare->add_option("--out", out_path, "Per-run records (JSON lines)");

  auto* grid = app.add_subcommand("grid", "Baseline tabu search vs Q1/Q2 variants over an (alpha, delta) grid");
  std::vector<std::string> grid_paths;
  std::vector<std::string> alphas{"0.99", "0.975", "0.95"};
  std::vector<double> delta_pcts{2.0, 5.0, 10.0};
  std::string basis = "entry";
  std::optional<std::uint64_t> baseline_iters;
  std::optional<std::uint64_t> enum_iters;
  std::optional<double> enum_seconds;
  std::size_t elite_size = 10;
  std::string elite_source = "cp";
  bool per_cell = false;
  std::size_t jobs = 1;
  bool timings = false;
  std::uint64_t cell_iters = 2000;
  std::optional<double> cell_seconds;
  grid->add_option("instances", grid_paths, "Instance files")->required();
  grid->add_flag("--negate", in.negate, "Negate all coefficients on input");
  grid->add_flag("--strict", in.strict, "Strict optimality for the enumeration");
  grid->add_option("--iters", cell_iters, "Tabu iterations per grid cell and variant")->capture_default_str();
  grid->add_option("--time", cell_seconds, "Seconds per grid cell and variant (replaces --iters)");
  grid->add_option("--baseline-iters", baseline_iters, "Baseline iterations (default: cells x --iters)");
  grid->add_option("--enum-iters", enum_iters, "Enumeration nodes per instance (default 50000)");
  grid->add_option("--enum-time", enum_seconds, "Enumeration seconds per instance");
  grid->add_option("--top-k", top_k)->capture_default_str();
  grid->add_option("--alpha", alphas, "Frequency threshold (repeatable)")->capture_default_str();
  grid->add_option("--delta-pct", delta_pcts, "Delta as a percentage of the largest coefficient (repeatable)")
      ->capture_default_str();
  grid->add_option("--delta-basis", basis, "entry (symmetric matrix entries) or canonical")->capture_default_str();
  grid->add_option("--elite", elite_size, "Elite set size")->capture_default_str();
  grid->add_option("--elite-source", elite_source, "cp or random")->capture_default_str();
  grid->add_flag("--enumerate-per-cell", per_cell, "Re-enumerate for every cell instead of once per instance");
  grid->add_option("--seed", seed)->capture_default_str();
  grid->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  grid->add_flag("--timings", timings, "Add wall-clock seconds to the records");
  grid->add_option("--out", out_path, "Result records (JSON lines)");

  auto* oracle = app.add_subcommand("oracle", "Brute-force local optima (n <= 24)");
  in.add_to(*oracle);
  oracle->add_option("--out", out_path, "Solution file (JSON lines); stdout if omitted");

  auto* transform_cmd = app.add_subcommand("transform", "Build Q1 (favour) and Q2 (escape) from a solution set");
  std::string solutions_path;
  std::string alpha = "0.95";
  std::optional<double> delta;
  std::optional<double> delta_pct;
  std::string out_q1;
  std::string out_q2;
  in.add_to(*transform_cmd);
  transform_cmd->add_option("--solutions", solutions_path, "Solution file (JSON lines)")->required();
  transform_cmd->add_option("--alpha", alpha)->capture_default_str();
  transform_cmd->add_option("--delta", delta, "Absolute delta");
  transform_cmd->add_option("--delta-pct", delta_pct, "Delta as a percentage of the largest coefficient");
  transform_cmd->add_option("--delta-basis", basis, "entry or canonical")->capture_default_str();
  transform_cmd->add_option("--out-q1", out_q1, "Write Q1 here");
  transform_cmd->add_option("--out-q2", out_q2, "Write Q2 here");

  auto* ttest = app.add_subcommand("ttest", "Paired t-test of improv_q1 against improv_q2");
  std::string results_path;
  ttest->add_option("results", results_path, "Result records (JSON lines)")->required();

  auto* generate = app.add_subcommand("generate", "Write random instances");
  GeneratorConfig gen;
  std::size_t count = 1;
  generate->add_option("--n", gen.n, "Variables")->required();
  generate->add_option("--m", gen.pair_count, "Off-diagonal nonzeros")->required();
  generate->add_option("--lo", gen.lo)->capture_default_str();
  generate->add_option("--hi", gen.hi)->capture_default_str();
  generate->add_option("--diag-density", gen.diagonal_density)->capture_default_str();
  generate->add_option("--seed", gen.seed, "Seed of the first instance")->capture_default_str();
  generate->add_option("--count", count, "Instances, with seeds seed, seed+1, ...")->capture_default_str();
  generate->add_option("--name", gen.name);
  generate->add_option("--out", out_path, "Instance file; stdout if omitted");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidArgument;
  }

  try {
    if (enumerate->parsed()) {
      cmd_enumerate(out, in, budget, top_k, seed, branching, bias, out_path, model_out);
    } else if (greedy->parsed()) {
      cmd_sample_greedy(out, in, budget, top_k, seed, out_path);
    } else if (compare->parsed()) {
      cmd_compare(out, in, compare_iters, top_k, seed, runs, out_path);
    } else if (grid->parsed()) {
      ExperimentPlan plan;
      for (const auto& path : grid_paths) {
        for (auto& instance : read_instance_file(path, ParseOptions{in.negate})) {
          plan.instances.push_back(std::move(instance));
        }
      }
      plan.alphas = parse_alphas(alphas);
      plan.delta_pcts = delta_pcts;
      plan.delta_basis = parse_basis(basis);
      plan.cell_budget = cell_seconds ? Budget::of_seconds(*cell_seconds) : Budget::of_iterations(cell_iters);
      if (baseline_iters) plan.baseline_budget = Budget::of_iterations(*baseline_iters);
      if (enum_iters || enum_seconds) plan.enumeration_budget = Budget{enum_iters, enum_seconds};
      plan.top_k = top_k;
      plan.elite_size = elite_size;
      if (elite_source == "random") {
        plan.elite_source = EliteSource::Random;
      } else if (elite_source != "cp") {
        throw std::invalid_argument("unknown elite source '" + elite_source + "' (cp or random)");
      }
      plan.enumerate_per_cell = per_cell;
      plan.optimality = in.optimality();
      plan.seed = seed;
      plan.jobs = jobs;
      plan.record_timings = timings;
      const auto rows = run_grid(plan);
      if (!out_path.empty()) write_text_file(out_path, rows_to_jsonl(plan, rows));
      out << rows_to_table(rows);
    } else if (oracle->parsed()) {
      cmd_oracle(out, in, out_path);
    } else if (transform_cmd->parsed()) {
      cmd_transform(out, in, solutions_path, alpha, delta, delta_pct, basis, out_q1, out_q2);
    } else if (ttest->parsed()) {
      cmd_ttest(out, results_path);
    } else if (generate->parsed()) {
      cmd_generate(out, gen, count, out_path);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CapExceededError& e) {
    err << "size cap: " << e.what() << '\n';
    return kExitCap;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitInvalidArgument;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace qlopt::cli
