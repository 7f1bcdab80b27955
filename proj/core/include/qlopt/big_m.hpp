#ifndef QLOPT_BIG_M_HPP
#define QLOPT_BIG_M_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qlopt/qubo.hpp"

namespace qlopt {

/// M_i = |q_i| + sum_j |q_ij| + 1: strictly above any attainable |expr_i|.
Coef big_m(const QuboInstance& instance, std::size_t i);

/// sum_k coefs[k] * x_{vars[k]} <= rhs
struct LinearRow {
  std::string name;
  std::vector<std::size_t> vars;
  std::vector<Coef> coefs;
  Coef rhs = 0;
};

/**
 * Linear model of non-strict one-flip optimality with one pair of rows per
 * variable:
 *
 *   q_i + sum_j q_ij x_j <= M_i x_i
 *   q_i + sum_j q_ij x_j >= -M_i (1 - x_i)
 *
 * both normalised to "<=" form. Intended for cross-checking with an external
 * MIP/CP solver.
 */
struct BigMModel {
  std::size_t variables = 0;
  std::vector<LinearRow> rows;

  bool is_satisfied_by(std::span<const std::uint8_t> bits) const;
};

BigMModel build_big_m_model(const QuboInstance& instance);

/// CPLEX LP text: feasibility model with binary variables x1..xn.
std::string to_lp_format(const BigMModel& model);

}  // namespace qlopt

#endif  // QLOPT_BIG_M_HPP
