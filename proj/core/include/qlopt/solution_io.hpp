#ifndef QLOPT_SOLUTION_IO_HPP
#define QLOPT_SOLUTION_IO_HPP

#include <string>
#include <string_view>

#include "qlopt/solution_set.hpp"

namespace qlopt {

/// One JSON object per line: {"bits":"0101","objective":42}. Empty set gives
/// empty text.
std::string write_solutions(const LocalOptimaSet& set);

/// Inverse of write_solutions; order preserved. With an instance, every
/// record's objective is re-evaluated and a mismatch throws
/// VerificationError. Malformed records, inconsistent bit lengths and
/// duplicates throw ParseError.
LocalOptimaSet parse_solutions(std::string_view text, const QuboInstance* verify_against = nullptr);

}  // namespace qlopt

#endif  // QLOPT_SOLUTION_IO_HPP
