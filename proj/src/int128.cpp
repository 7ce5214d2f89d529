#include "glq/int128.hpp"

#include <algorithm>

#include "glq/error.hpp"

namespace glq {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-v));
  return to_string(static_cast<u128>(v));
}

std::optional<u128> parse_u128(std::string_view s) {
  if (s.empty()) return std::nullopt;
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    u128 next;
    if (mul_overflow(v, 10, next)) return std::nullopt;
    if (add_overflow(next, static_cast<u128>(c - '0'), next)) return std::nullopt;
    v = next;
  }
  return v;
}

u128 checked_mul(u128 a, u128 b) {
  u128 out;
  if (mul_overflow(a, b, out))
    throw RangeError("integer overflow: " + to_string(a) + " * " + to_string(b) +
                     " exceeds 2^128");
  return out;
}

u128 checked_add(u128 a, u128 b) {
  u128 out;
  if (add_overflow(a, b, out))
    throw RangeError("integer overflow: " + to_string(a) + " + " + to_string(b) +
                     " exceeds 2^128");
  return out;
}

u128 checked_pow(u128 base, u32 exp) {
  u128 result = 1;
  while (exp != 0) {
    if (exp & 1) result = checked_mul(result, base);
    exp >>= 1;
    if (exp != 0) base = checked_mul(base, base);
  }
  return result;
}

u128 checked_lcm(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd128(a, b), b);
}

u128 mul_mod(u128 a, u128 b, u128 m) {
  if (m == 0) throw InvalidArgument("mul_mod: modulus must be positive");
  if (m == 1) return 0;
  a %= m;
  b %= m;
  // Product fits in 128 bits whenever both operands fit in 64.
  if ((a >> 64) == 0 && (b >> 64) == 0) return (a * b) % m;
  if (a < b) std::swap(a, b);
  u128 result = 0;
  while (b != 0) {
    if (b & 1) result = add_mod(result, a, m);
    b >>= 1;
    if (b != 0) a = add_mod(a, a, m);
  }
  return result;
}

u128 pow_mod(u128 base, u128 exp, u128 m) {
  if (m == 0) throw InvalidArgument("pow_mod: modulus must be positive");
  if (m == 1) return 0;
  base %= m;
  u128 result = 1;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    exp >>= 1;
    if (exp != 0) base = mul_mod(base, base, m);
  }
  return result;
}

U256 mul_wide(u128 a, u128 b) {
  const u128 mask = (static_cast<u128>(1) << 64) - 1;
  u128 a_lo = a & mask, a_hi = a >> 64;
  u128 b_lo = b & mask, b_hi = b >> 64;

  u128 ll = a_lo * b_lo;
  u128 lh = a_lo * b_hi;
  u128 hl = a_hi * b_lo;
  u128 hh = a_hi * b_hi;

  u128 mid = (ll >> 64) + (lh & mask) + (hl & mask);
  U256 out;
  out.lo = (mid << 64) | (ll & mask);
  out.hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
  return out;
}

}  // namespace glq
