#include "qlopt/big_m.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace qlopt {

Coef big_m(const QuboInstance& instance, std::size_t i) {
  if (i >= instance.size()) throw std::out_of_range("big_m: variable out of range");
  Coef m = std::abs(instance.linear()[i]) + 1;
  for (const auto& nb : instance.neighbors(i)) m += std::abs(nb.coef);
  return m;
}

BigMModel build_big_m_model(const QuboInstance& instance) {
  BigMModel model;
  model.variables = instance.size();
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Coef m = big_m(instance, i);
    const Coef q = instance.linear()[i];
    LinearRow upper{"up" + std::to_string(i + 1), {}, {}, -q};  // sum q_ij x_j - M x_i <= -q_i
    LinearRow lower{"lo" + std::to_string(i + 1), {}, {}, m + q};  // -sum q_ij x_j + M x_i <= M + q_i
    for (const auto& nb : instance.neighbors(i)) {
      upper.vars.push_back(nb.index);
      upper.coefs.push_back(nb.coef);
      lower.vars.push_back(nb.index);
      lower.coefs.push_back(-nb.coef);
    }
    upper.vars.push_back(i);
    upper.coefs.push_back(-m);
    lower.vars.push_back(i);
    lower.coefs.push_back(m);
    model.rows.push_back(std::move(upper));
    model.rows.push_back(std::move(lower));
  }
  return model;
}

bool BigMModel::is_satisfied_by(std::span<const std::uint8_t> bits) const {
  if (bits.size() != variables) throw std::invalid_argument("big-M model: bit vector length mismatch");
  for (const auto& row : rows) {
    Coef lhs = 0;
    for (std::size_t k = 0; k < row.vars.size(); ++k) lhs += bits[row.vars[k]] ? row.coefs[k] : 0;
    if (lhs > row.rhs) return false;
  }
  return true;
}

std::string to_lp_format(const BigMModel& model) {
  std::ostringstream out;
  out << "\\ one-flip local optimality, big-M form\n";
  out << "Maximize\n obj: 0 x1\n";
  out << "Subject To\n";
  for (const auto& row : model.rows) {
    out << ' ' << row.name << ':';
    for (std::size_t k = 0; k < row.vars.size(); ++k) {
      const Coef c = row.coefs[k];
      out << ' ' << (c < 0 ? "- " : "+ ") << (c < 0 ? -c : c) << " x" << row.vars[k] + 1;
    }
    out << " <= " << row.rhs << '\n';
  }
  out << "Binary\n";
  for (std::size_t i = 0; i < model.variables; ++i) out << " x" << i + 1 << '\n';
  out << "End\n";
  return out.str();
}

}  // namespace qlopt
