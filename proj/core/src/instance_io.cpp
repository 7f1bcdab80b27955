#include "qlopt/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "qlopt/errors.hpp"
#include "qlopt/random.hpp"

namespace qlopt {

namespace {

// Whitespace-separated integer tokens with line tracking.
class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : text_(text) {}

  /// Next integer; nullopt at end of input.
  std::optional<std::int64_t> next(std::string_view what) {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view token = text_.substr(begin, pos_ - begin);
    token_line_ = line_;
    std::int64_t value = 0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || first == token.data() + token.size()) {
      throw ParseError(line_, "expected integer " + std::string(what) + ", found '" + std::string(token) + "'");
    }
    return value;
  }

  std::int64_t require(std::string_view what) {
    auto v = next(what);
    if (!v) throw ParseError(line_, "unexpected end of input, expected " + std::string(what));
    return *v;
  }

  std::size_t line() const noexcept { return line_; }
  std::size_t token_line() const noexcept { return token_line_; }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t token_line_ = 1;
};

}  // namespace

std::vector<QuboInstance> parse_instances(std::string_view text, ParseOptions options) {
  TokenReader reader(text);
  const auto count_token = reader.next("instance count");
  if (!count_token) throw ParseError(reader.line(), "empty input, expected instance count");
  if (*count_token < 1) throw ParseError(reader.token_line(), "instance count must be positive");

  std::vector<QuboInstance> instances;
  for (std::int64_t k = 0; k < *count_token; ++k) {
    const std::int64_t n = reader.require("variable count");
    if (n < 1) throw ParseError(reader.token_line(), "variable count must be positive");
    const std::size_t header_line = reader.token_line();
    const std::int64_t m = reader.require("nonzero count");
    if (m < 0) throw ParseError(reader.token_line(), "nonzero count must be non-negative");

    std::vector<Coef> linear(static_cast<std::size_t>(n), 0);
    std::vector<PairTerm> pairs;
    for (std::int64_t t = 0; t < m; ++t) {
      const auto i = reader.next("row index");
      if (!i) {
        throw ParseError(reader.line(), "triplet count mismatch: header on line " + std::to_string(header_line) +
                                            " declares " + std::to_string(m) + ", found " + std::to_string(t));
      }
      const std::size_t triplet_line = reader.token_line();
      const std::int64_t j = reader.require("column index");
      std::int64_t v = reader.require("coefficient");
      if (*i < 1 || *i > n || j < 1 || j > n) {
        throw ParseError(triplet_line, "index (" + std::to_string(*i) + ", " + std::to_string(j) +
                                           ") outside [1, " + std::to_string(n) + "]");
      }
      if (options.negate) v = -v;
      const auto row = static_cast<std::size_t>(*i - 1);
      const auto col = static_cast<std::size_t>(j - 1);
      if (row == col) {
        linear[row] += v;
      } else {
        pairs.push_back({row, col, 2 * v});
      }
    }
    try {
      instances.emplace_back(static_cast<std::size_t>(n), std::move(linear), std::move(pairs));
    } catch (const std::exception& e) {
      throw ParseError(header_line, e.what());
    }
  }
  if (reader.next("end of input")) {
    throw ParseError(reader.token_line(),
                     "trailing data after the declared instances (triplet count mismatch?)");
  }
  return instances;
}

std::string write_instance(const QuboInstance& instance) {
  return write_instances(std::span<const QuboInstance>(&instance, 1));
}

std::string write_instances(std::span<const QuboInstance> instances) {
  std::ostringstream out;
  out << instances.size() << '\n';
  for (const auto& q : instances) {
    if (q.size() == 0) throw std::invalid_argument("cannot write an instance with no variables");
    std::size_t nonzero = q.pairs().size();
    for (const Coef v : q.linear()) nonzero += v != 0 ? 1 : 0;
    out << q.size() << ' ' << nonzero << '\n';
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q.linear()[i] != 0) out << i + 1 << ' ' << i + 1 << ' ' << q.linear()[i] << '\n';
    }
    for (const auto& p : q.pairs()) {
      if (p.value % 2 != 0) {
        throw std::invalid_argument("pair coefficient " + std::to_string(p.value) + " at (" +
                                    std::to_string(p.i + 1) + ", " + std::to_string(p.j + 1) +
                                    ") is odd and has no symmetric-entry form");
      }
      out << p.i + 1 << ' ' << p.j + 1 << ' ' << p.value / 2 << '\n';
    }
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::vector<QuboInstance> read_instance_file(const std::filesystem::path& path, ParseOptions options) {
  auto instances = parse_instances(read_text_file(path), options);
  const std::string stem = path.stem().string();
  for (std::size_t k = 0; k < instances.size(); ++k) {
    instances[k].set_name(instances.size() == 1 ? stem : stem + "_" + std::to_string(k + 1));
  }
  return instances;
}

namespace {

// Floyd's algorithm: `count` distinct values from [0, universe), in draw order.
std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t universe, std::uint64_t count) {
  std::unordered_set<std::uint64_t> chosen;
  std::vector<std::uint64_t> order;
  order.reserve(count);
  for (std::uint64_t j = universe - count; j < universe; ++j) {
    const std::uint64_t t = uniform_below(rng, j + 1);
    const std::uint64_t pick = chosen.contains(t) ? j : t;
    chosen.insert(pick);
    order.push_back(pick);
  }
  std::sort(order.begin(), order.end());
  return order;
}

Coef nonzero_between(Rng& rng, Coef lo, Coef hi) {
  const bool spans_zero = lo <= 0 && 0 <= hi;
  const Coef top = spans_zero ? hi - 1 : hi;
  Coef v = uniform_between(rng, lo, top);
  if (spans_zero && v >= 0) ++v;
  return v;
}

}  // namespace

QuboInstance generate_instance(const GeneratorConfig& config) {
  const std::size_t n = config.n;
  if (n == 0) throw std::invalid_argument("generator: n must be positive");
  if (config.lo > config.hi) throw std::invalid_argument("generator: lo must not exceed hi");
  if (!(config.diagonal_density >= 0.0 && config.diagonal_density <= 1.0)) {
    throw std::invalid_argument("generator: diagonal density must lie in [0, 1]");
  }
  const std::uint64_t max_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (config.pair_count > max_pairs) {
    throw std::invalid_argument("generator: " + std::to_string(config.pair_count) +
                                " pairs requested but n = " + std::to_string(n) + " allows " +
                                std::to_string(max_pairs));
  }
  const auto diagonal_count =
      static_cast<std::size_t>(std::llround(config.diagonal_density * static_cast<double>(n)));
  if (config.lo == 0 && config.hi == 0 && (config.pair_count > 0 || diagonal_count > 0)) {
    throw std::invalid_argument("generator: coefficient range [0, 0] has no nonzero values");
  }

  Rng rng(config.seed);
  std::vector<Coef> linear(n, 0);
  for (const auto i : sample_distinct(rng, n, diagonal_count)) linear[i] = nonzero_between(rng, config.lo, config.hi);

  // Pair index k enumerates (0,1), (0,2), ..., (0,n-1), (1,2), ... row by row.
  std::vector<PairTerm> pairs;
  pairs.reserve(config.pair_count);
  std::size_t row = 0;
  std::uint64_t row_start = 0;
  for (const auto k : sample_distinct(rng, max_pairs, config.pair_count)) {
    while (k >= row_start + (n - 1 - row)) {
      row_start += n - 1 - row;
      ++row;
    }
    const std::size_t col = row + 1 + static_cast<std::size_t>(k - row_start);
    pairs.push_back({row, col, 2 * nonzero_between(rng, config.lo, config.hi)});
  }

  std::string name = config.name;
  if (name.empty()) {
    name = "gen_" + std::to_string(n) + "_" + std::to_string(config.pair_count) + "_" + std::to_string(config.seed);
  }
  return QuboInstance(n, std::move(linear), std::move(pairs), std::move(name));
}

}  // namespace qlopt
