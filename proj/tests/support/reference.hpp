#ifndef QLOPT_TESTS_REFERENCE_HPP
#define QLOPT_TESTS_REFERENCE_HPP

// Dense, deliberately naive re-implementations used as test oracles. They
// share no code with the library beyond the QuboInstance accessors.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qlopt/qubo.hpp"

namespace qlopt::testing {

/// Full n x n matrix A with x'Ax equal to the objective: A[i][i] = q_i and
/// A[i][j] = A[j][i] = q_ij / 2 (stored doubled to stay integral).
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> twice;  // 2 * A, row-major

  explicit DenseMatrix(const QuboInstance& q) : n(q.size()), twice(n * n, 0) {
    for (std::size_t i = 0; i < n; ++i) twice[i * n + i] = 2 * q.linear(i);
    for (const auto& p : q.pairs()) {
      twice[p.i * n + p.j] += p.value;
      twice[p.j * n + p.i] += p.value;
    }
  }

  std::int64_t objective(const std::vector<std::uint8_t>& x) const {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (x[j]) sum += twice[i * n + j];
      }
    }
    return sum / 2;
  }

  /// q_i + sum_j q_ij x_j, read off the dense matrix.
  std::int64_t expr(const std::vector<std::uint8_t>& x, std::size_t i) const {
    std::int64_t sum = twice[i * n + i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && x[j]) sum += 2 * twice[i * n + j];
    }
    return sum / 2;
  }

  /// Local optimality by explicitly evaluating every neighbour.
  bool is_local_optimum(const std::vector<std::uint8_t>& x, bool strict = false) const {
    const auto f = objective(x);
    auto y = x;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] ^= 1U;
      const auto g = objective(y);
      y[i] ^= 1U;
      if (g > f || (strict && g == f)) return false;
    }
    return true;
  }
};

inline std::vector<std::uint8_t> bits_of(const std::string& s) {
  std::vector<std::uint8_t> out;
  for (char c : s) out.push_back(static_cast<std::uint8_t>(c - '0'));
  return out;
}

/// The 3-variable worked example: diagonal -4, -8, 9 and combined pair
/// coefficients 12, -12, -8.
inline QuboInstance worked_example() {
  return QuboInstance(3, {-4, -8, 9}, {{0, 1, 12}, {0, 2, -12}, {1, 2, -8}}, "worked");
}

inline const char* worked_example_text() { return "1\n3 6\n1 1 -4\n2 2 -8\n3 3 9\n1 2 6\n1 3 -6\n2 3 -4\n"; }

/// Five variables, file entries doubled into the combined coefficients.
inline QuboInstance five_variable_fixture() {
  return QuboInstance(5, {3, -5, 2, -1, 4},
                      {{0, 1, -6}, {0, 3, 8}, {1, 2, 12}, {2, 4, -10}, {3, 4, 4}, {1, 4, -2}}, "five");
}

/// Random instance built without the library generator. `density` is the
/// share of the n(n-1)/2 pairs that are nonzero.
inline QuboInstance random_instance(std::size_t n, double density, std::uint64_t seed, std::int64_t range = 100) {
  std::mt19937_64 rng(seed);
  auto coef = [&] {
    std::int64_t v = 0;
    while (v == 0) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
    return v;
  };
  std::vector<std::int64_t> linear(n);
  for (auto& v : linear) v = coef();
  std::vector<PairTerm> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) pairs.push_back({i, j, 2 * coef()});
    }
  }
  return QuboInstance(n, std::move(linear), std::move(pairs), "rand_" + std::to_string(seed));
}

inline std::vector<std::uint8_t> random_bits(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint8_t> x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1U);
  return x;
}

}  // namespace qlopt::testing

#endif  // QLOPT_TESTS_REFERENCE_HPP
