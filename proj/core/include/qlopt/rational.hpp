#ifndef QLOPT_RATIONAL_HPP
#define QLOPT_RATIONAL_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qlopt {

__extension__ typedef __int128 WideInt;

/// Normalised num/den with den > 0.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  /// Nearest multiple of 1/denominator (default 1e-9 resolution), so that
  /// 0.95 becomes exactly 19/20.
  static Ratio from_double(double value, std::int64_t denominator = 1'000'000'000) {
    return {static_cast<std::int64_t>(std::llround(value * static_cast<double>(denominator))), denominator};
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    const WideInt lhs = static_cast<WideInt>(a.num_) * b.den_;
    const WideInt rhs = static_cast<WideInt>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace qlopt

#endif  // QLOPT_RATIONAL_HPP
