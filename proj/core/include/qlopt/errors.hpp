#ifndef QLOPT_ERRORS_HPP
#define QLOPT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlopt {

/// Malformed instance or solution text. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem too large for an exhaustive routine.
class CapExceededError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A result failed an independent re-check (objective mismatch, a claimed
/// local optimum that is not one). In-library occurrences indicate a bug.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qlopt

#endif  // QLOPT_ERRORS_HPP
