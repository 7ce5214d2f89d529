#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glq/int128.hpp"

namespace glq::singer {

using u16 = std::uint16_t;

inline constexpr u32 kDefaultFieldCap = 512;

// Concrete model of GF(p^r): the lexicographically smallest monic
// irreducible modulus polynomial, coefficients ascending (size r+1, monic).
struct FiniteFieldSpec {
  u32 p = 2;
  u32 r = 1;
  u32 q = 2;
  std::vector<u32> modulus;

  std::string modulus_str() const;  // e.g. "x^2+x+1"
};

FiniteFieldSpec build_field_spec(u32 p, u32 r, u32 cap = kDefaultFieldCap);

// Table-based arithmetic for a small field. Elements are encoded as
// integers 0..q-1 whose base-p digits are the polynomial coefficients
// (constant digit least significant); 0 and 1 are the field's 0 and 1.
class SmallField {
 public:
  explicit SmallField(const FiniteFieldSpec& spec);

  u32 p() const { return spec_.p; }
  u32 r() const { return spec_.r; }
  u32 q() const { return spec_.q; }
  const FiniteFieldSpec& spec() const { return spec_; }

  u16 add(u16 a, u16 b) const { return add_[idx(a, b)]; }
  u16 sub(u16 a, u16 b) const { return sub_[idx(a, b)]; }
  u16 mul(u16 a, u16 b) const { return mul_[idx(a, b)]; }
  u16 neg(u16 a) const { return sub_[idx(0, a)]; }
  u16 inv(u16 a) const;  // a != 0

 private:
  std::size_t idx(u16 a, u16 b) const {
    return static_cast<std::size_t>(a) * spec_.q + b;
  }

  FiniteFieldSpec spec_;
  std::vector<u16> add_;
  std::vector<u16> sub_;
  std::vector<u16> mul_;
  std::vector<u16> inv_;
};

}  // namespace glq::singer
