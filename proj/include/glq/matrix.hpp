#pragma once

#include <array>

#include "glq/field.hpp"

namespace glq::singer {

inline constexpr u32 kMaxMatrixRank = 6;

// Dense n x n matrix over a SmallField, n <= kMaxMatrixRank.
struct SmallMatrix {
  u32 n = 1;
  std::array<u16, kMaxMatrixRank * kMaxMatrixRank> e{};

  u16& at(u32 i, u32 j) { return e[i * n + j]; }
  u16 at(u32 i, u32 j) const { return e[i * n + j]; }

  static SmallMatrix identity(u32 n) {
    SmallMatrix m;
    m.n = n;
    for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  friend bool operator==(const SmallMatrix& a, const SmallMatrix& b) {
    if (a.n != b.n) return false;
    for (u32 i = 0; i < a.n * a.n; ++i)
      if (a.e[i] != b.e[i]) return false;
    return true;
  }
};

inline SmallMatrix mat_mul(const SmallField& f, const SmallMatrix& a,
                           const SmallMatrix& b) {
  SmallMatrix c;
  c.n = a.n;
  for (u32 i = 0; i < a.n; ++i)
    for (u32 j = 0; j < a.n; ++j) {
      u16 acc = 0;
      for (u32 k = 0; k < a.n; ++k)
        acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
      c.at(i, j) = acc;
    }
  return c;
}

inline SmallMatrix mat_pow(const SmallField& f, SmallMatrix base, u128 exp) {
  SmallMatrix result = SmallMatrix::identity(base.n);
  while (exp != 0) {
    if (exp & 1) result = mat_mul(f, result, base);
    exp >>= 1;
    if (exp != 0) base = mat_mul(f, base, base);
  }
  return result;
}

// Gaussian elimination; true iff the matrix is invertible.
inline bool mat_invertible(const SmallField& f, SmallMatrix m) {
  for (u32 col = 0; col < m.n; ++col) {
    u32 pivot = col;
    while (pivot < m.n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.n) return false;
    if (pivot != col)
      for (u32 j = 0; j < m.n; ++j) std::swap(m.e[pivot * m.n + j], m.e[col * m.n + j]);
    u16 inv = f.inv(m.at(col, col));
    for (u32 row = col + 1; row < m.n; ++row) {
      u16 factor = f.mul(m.at(row, col), inv);
      if (factor == 0) continue;
      for (u32 j = col; j < m.n; ++j)
        m.at(row, j) = f.sub(m.at(row, j), f.mul(factor, m.at(col, j)));
    }
  }
  return true;
}

}  // namespace glq::singer
