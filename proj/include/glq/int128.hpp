#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace glq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u128 u128_max = ~static_cast<u128>(0);

std::string to_string(u128 v);
std::string to_string(i128 v);
std::optional<u128> parse_u128(std::string_view s);

inline bool mul_overflow(u128 a, u128 b, u128& out) {
  return __builtin_mul_overflow(a, b, &out);
}
inline bool add_overflow(u128 a, u128 b, u128& out) {
  return __builtin_add_overflow(a, b, &out);
}
inline bool mul_overflow_i(i128 a, i128 b, i128& out) {
  return __builtin_mul_overflow(a, b, &out);
}
inline bool add_overflow_i(i128 a, i128 b, i128& out) {
  return __builtin_add_overflow(a, b, &out);
}

// Throwing variants (RangeError on overflow).
u128 checked_mul(u128 a, u128 b);
u128 checked_add(u128 a, u128 b);
u128 checked_pow(u128 base, u32 exp);

constexpr u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 checked_lcm(u128 a, u128 b);

// a + b mod m for a, b < m; never overflows.
inline u128 add_mod(u128 a, u128 b, u128 m) {
  return a >= m - b ? a - (m - b) : a + b;
}

// a * b mod m for any m < 2^128. Single wide multiply when the product
// fits in 128 bits, shift-and-add otherwise.
u128 mul_mod(u128 a, u128 b, u128 m);
u128 pow_mod(u128 base, u128 exp, u128 m);

// 256-bit product, used for exact rational comparison.
struct U256 {
  u128 hi = 0;
  u128 lo = 0;
  friend constexpr bool operator<(const U256& a, const U256& b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
  }
  friend constexpr bool operator==(const U256& a, const U256& b) = default;
};

U256 mul_wide(u128 a, u128 b);

}  // namespace glq
