#include "glq/field.hpp"

#include <algorithm>

#include "glq/error.hpp"
#include "glq/factor.hpp"

namespace glq::singer {

namespace {

// Dense coefficient polynomials over F_p, ascending order, no trailing zeros.
using Poly = std::vector<u32>;

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

// Remainder of a mod b over F_p; b monic-normalized inside.
Poly poly_mod(Poly a, const Poly& b, u32 p) {
  u32 lead = b.back();
  u32 lead_inv = 1;
  for (u32 i = 1; i < p; ++i)
    if (lead * i % p == 1) {
      lead_inv = i;
      break;
    }
  while (a.size() >= b.size()) {
    u32 c = static_cast<u32>(static_cast<u64>(a.back()) * lead_inv % p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      u64 sub = static_cast<u64>(c) * b[i] % p;
      a[shift + i] = static_cast<u32>((a[shift + i] + p - sub) % p);
    }
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

// Irreducibility over F_p by trial division with every monic polynomial of
// degree 1..deg/2. Fine for the tiny fields the oracles use.
bool poly_irreducible(const Poly& f, u32 p) {
  std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  for (std::size_t d = 1; d * 2 <= deg; ++d) {
    u64 count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (u64 k = 0; k < count; ++k) {
      Poly g(d + 1, 0);
      u64 rem = k;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<u32>(rem % p);
        rem /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::string FiniteFieldSpec::modulus_str() const {
  std::string s;
  for (std::size_t i = modulus.size(); i-- > 0;) {
    if (modulus[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(modulus[i]);
    } else {
      if (modulus[i] != 1) s += std::to_string(modulus[i]) + "*";
      s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

FiniteFieldSpec build_field_spec(u32 p, u32 r, u32 cap) {
  if (r == 0) throw InvalidArgument("build_field: degree must be >= 1");
  if (!arith::is_prime(p))
    throw InvalidArgument("build_field: characteristic must be prime");
  u64 q = 1;
  for (u32 i = 0; i < r; ++i) {
    q *= p;
    if (q > cap)
      throw RangeError("build_field: field size exceeds cap " +
                       std::to_string(cap));
  }

  // Scan lower coefficients as a base-p counter; the first irreducible hit
  // is the lexicographically smallest modulus.
  for (u64 k = 0; k < q; ++k) {
    Poly f(r + 1, 0);
    u64 rem = k;
    for (u32 i = 0; i < r; ++i) {
      f[i] = static_cast<u32>(rem % p);
      rem /= p;
    }
    f[r] = 1;
    if (poly_irreducible(f, p)) {
      FiniteFieldSpec spec;
      spec.p = p;
      spec.r = r;
      spec.q = static_cast<u32>(q);
      spec.modulus = f;
      return spec;
    }
  }
  throw Error("build_field: no irreducible polynomial found");  // unreachable
}

SmallField::SmallField(const FiniteFieldSpec& spec) : spec_(spec) {
  const u32 p = spec_.p;
  const u32 q = spec_.q;
  const u32 r = spec_.r;
  add_.assign(static_cast<std::size_t>(q) * q, 0);
  sub_.assign(static_cast<std::size_t>(q) * q, 0);
  mul_.assign(static_cast<std::size_t>(q) * q, 0);
  inv_.assign(q, 0);

  auto decode = [&](u32 v) {
    Poly f;
    while (v != 0) {
      f.push_back(v % p);
      v /= p;
    }
    return f;
  };
  auto encode = [&](const Poly& f) {
    u32 v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = v * p + f[i];
    return static_cast<u16>(v);
  };

  for (u32 a = 0; a < q; ++a) {
    for (u32 b = 0; b < q; ++b) {
      // Digitwise add/sub mod p.
      u32 av = a, bv = b, sum = 0, diff = 0, scale = 1;
      for (u32 i = 0; i < r; ++i) {
        u32 ad = av % p, bd = bv % p;
        sum += (ad + bd) % p * scale;
        diff += (ad + p - bd) % p * scale;
        av /= p;
        bv /= p;
        scale *= p;
      }
      add_[idx(static_cast<u16>(a), static_cast<u16>(b))] = static_cast<u16>(sum);
      sub_[idx(static_cast<u16>(a), static_cast<u16>(b))] = static_cast<u16>(diff);

      Poly fa = decode(a), fb = decode(b);
      Poly prod(fa.size() + fb.size(), 0);
      if (!fa.empty() && !fb.empty()) {
        prod.assign(fa.size() + fb.size() - 1, 0);
        for (std::size_t i = 0; i < fa.size(); ++i)
          for (std::size_t j = 0; j < fb.size(); ++j)
            prod[i + j] = static_cast<u32>(
                (prod[i + j] + static_cast<u64>(fa[i]) * fb[j]) % p);
      } else {
        prod.clear();
      }
      Poly red = prod.empty() ? prod : poly_mod(std::move(prod), spec_.modulus, p);
      mul_[idx(static_cast<u16>(a), static_cast<u16>(b))] = encode(red);
    }
  }
  for (u32 a = 1; a < q; ++a)
    for (u32 b = 1; b < q; ++b)
      if (mul_[idx(static_cast<u16>(a), static_cast<u16>(b))] == 1) {
        inv_[a] = static_cast<u16>(b);
        break;
      }
}

u16 SmallField::inv(u16 a) const {
  if (a == 0) throw InvalidArgument("field: zero has no inverse");
  return inv_[a];
}

}  // namespace glq::singer
