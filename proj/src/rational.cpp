#include "glq/rational.hpp"

#include "glq/error.hpp"

namespace glq {

namespace {

u128 abs128(i128 v) {
  return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
}

}  // namespace

Rational Rational::make(i128 n, u128 d) {
  if (d == 0) throw InvalidArgument("rational: zero denominator");
  if (n == 0) return Rational{0, 1};
  u128 g = gcd128(abs128(n), d);
  Rational r;
  r.den = d / g;
  u128 mag = abs128(n) / g;
  r.num = n < 0 ? -static_cast<i128>(mag) : static_cast<i128>(mag);
  return r;
}

std::optional<Rational> Rational::add(const Rational& a, const Rational& b) {
  u128 g = gcd128(a.den, b.den);
  u128 da = a.den / g;
  u128 db = b.den / g;
  u128 den;
  if (mul_overflow(a.den, db, den)) return std::nullopt;
  i128 lhs, rhs, num;
  if (mul_overflow_i(a.num, static_cast<i128>(db), lhs)) return std::nullopt;
  if (mul_overflow_i(b.num, static_cast<i128>(da), rhs)) return std::nullopt;
  if (add_overflow_i(lhs, rhs, num)) return std::nullopt;
  return make(num, den);
}

std::optional<Rational> Rational::mul(const Rational& a, const Rational& b) {
  // Cross-reduce first to keep intermediates small.
  u128 g1 = gcd128(abs128(a.num), b.den);
  u128 g2 = gcd128(abs128(b.num), a.den);
  i128 an = a.num < 0 ? -static_cast<i128>(abs128(a.num) / g1)
                      : static_cast<i128>(abs128(a.num) / g1);
  i128 bn = b.num < 0 ? -static_cast<i128>(abs128(b.num) / g2)
                      : static_cast<i128>(abs128(b.num) / g2);
  u128 ad = a.den / g2;
  u128 bd = b.den / g1;
  i128 num;
  u128 den;
  if (mul_overflow_i(an, bn, num)) return std::nullopt;
  if (mul_overflow(ad, bd, den)) return std::nullopt;
  return make(num, den);
}

double Rational::to_double() const {
  long double n = static_cast<long double>(num);
  long double d = static_cast<long double>(den);
  return static_cast<double>(n / d);
}

std::string Rational::str() const {
  if (den == 1) return to_string(num);
  return to_string(num) + "/" + to_string(den);
}

bool operator<(const Rational& a, const Rational& b) {
  if (a.num < 0 && b.num >= 0) return true;
  if (a.num >= 0 && b.num < 0) return false;
  bool negative = a.num < 0;
  U256 lhs = mul_wide(abs128(a.num), b.den);
  U256 rhs = mul_wide(abs128(b.num), a.den);
  return negative ? rhs < lhs : lhs < rhs;
}

}  // namespace glq
