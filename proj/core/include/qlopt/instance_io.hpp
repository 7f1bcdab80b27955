#ifndef QLOPT_INSTANCE_IO_HPP
#define QLOPT_INSTANCE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlopt/qubo.hpp"

namespace qlopt {

/*
 * Sparse ORLIB-style text:
 *
 *   <instance count>
 *   <n> <m>            -- per instance
 *   <i> <j> <value>    -- m triplets, 1-based
 *
 * All tokens are whitespace-separated integers. A triplet (i, i, v) adds v to
 * q_i. A triplet (i, j, v) with i != j is a symmetric matrix entry: it adds
 * 2v to the combined coefficient q_ij. Duplicates accumulate.
 */

struct ParseOptions {
  /// Negate every coefficient (for files written for minimisation).
  bool negate = false;
};

/// Throws ParseError with the offending line.
std::vector<QuboInstance> parse_instances(std::string_view text, ParseOptions options = {});

/// Throws std::invalid_argument for n == 0 or an odd pair coefficient (which
/// has no symmetric-entry representation).
std::string write_instance(const QuboInstance& instance);
std::string write_instances(std::span<const QuboInstance> instances);

/// Throws IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

std::vector<QuboInstance> read_instance_file(const std::filesystem::path& path,
                                             ParseOptions options = {});

/// Random instance in file units: values are symmetric matrix entries, so a
/// generated pair value v becomes q_ij = 2v.
struct GeneratorConfig {
  std::size_t n = 0;
  std::size_t pair_count = 0;
  Coef lo = -100;
  Coef hi = 100;
  double diagonal_density = 1.0;
  std::uint64_t seed = 1;
  std::string name;  // defaults to gen_<n>_<m>_<seed>
};

/// Exactly pair_count distinct off-diagonal pairs and round(density * n)
/// diagonal entries, all nonzero and uniform in [lo, hi]. Deterministic in
/// the seed. Throws std::invalid_argument for an infeasible config.
QuboInstance generate_instance(const GeneratorConfig& config);

}  // namespace qlopt

#endif  // QLOPT_INSTANCE_IO_HPP
