#ifndef QLOPT_ORACLE_HPP
#define QLOPT_ORACLE_HPP

#include <cstddef>

#include "qlopt/solution_set.hpp"

namespace qlopt {

inline constexpr std::size_t kOracleMaxVariables = 24;

/// Every one-flip local optimum, found by a Gray-code sweep of all 2^n
/// vectors. Canonically sorted. Throws CapExceededError above 24 variables.
LocalOptimaSet brute_force_local_optima(const QuboInstance& instance,
                                        Optimality mode = Optimality::NonStrict);

/// Maximum objective; ties go to the lexicographically smallest bits.
Solution brute_force_global_optimum(const QuboInstance& instance);

}  // namespace qlopt

#endif  // QLOPT_ORACLE_HPP
