#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "setlab/errors.hpp"

namespace setlab {

/// Exact binomial coefficient. Out-of-range k yields 0. Throws on 64-bit
/// overflow rather than losing precision (cannot happen for n <= 64).
inline std::uint64_t binomial(int n, int k) {
  if (n < 0) throw ArgumentError("binomial needs n >= 0");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) throw std::overflow_error("binomial exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) throw std::overflow_error("sum exceeds 64 bits");
  return a + b;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p > UINT64_MAX) throw std::overflow_error("product exceeds 64 bits");
  return static_cast<std::uint64_t>(p);
}

/// Exact nonnegative rational, kept in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational() = default;
  Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
    if (den == 0) throw ArgumentError("rational with zero denominator");
    std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  std::string to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

/// value <=> num/den, exactly.
inline int compare_with_rational(std::uint64_t value, const Rational& r) {
  unsigned __int128 lhs = static_cast<unsigned __int128>(value) * r.den;
  unsigned __int128 rhs = r.num;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace setlab
