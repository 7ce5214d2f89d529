#pragma once

#include <optional>
#include <string>

#include "glq/int128.hpp"

namespace glq {

// Exact rational with 128-bit numerator/denominator, always reduced,
// denominator positive. Arithmetic reports overflow instead of wrapping so
// callers can fall back to floating point deliberately.
struct Rational {
  i128 num = 0;
  u128 den = 1;

  static Rational make(i128 n, u128 d);
  static Rational from_ratio(u128 n, u128 d) {
    return make(static_cast<i128>(n), d);
  }

  static std::optional<Rational> add(const Rational& a, const Rational& b);
  static std::optional<Rational> mul(const Rational& a, const Rational& b);

  bool is_zero() const { return num == 0; }
  double to_double() const;

  // "num/den", or just "num" when den == 1.
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;  // both reduced
  }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a == b || a < b;
  }
};

}  // namespace glq
