#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mild {

// Residue arithmetic mod a small prime p. Residues are kept in [0, p) as
// plain unsigned values; the modulus travels as context, not per scalar.

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

inline void require_prime(unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

inline unsigned fp_norm(long long v, unsigned p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<unsigned>(r);
}

inline unsigned fp_add(unsigned a, unsigned b, unsigned p) {
  unsigned s = a + b;
  return s >= p ? s - p : s;
}

inline unsigned fp_sub(unsigned a, unsigned b, unsigned p) { return a >= b ? a - b : a + p - b; }

inline unsigned fp_neg(unsigned a, unsigned p) { return a == 0 ? 0 : p - a; }

inline unsigned fp_mul(unsigned a, unsigned b, unsigned p) {
  return static_cast<unsigned>((static_cast<std::uint64_t>(a) * b) % p);
}

inline unsigned fp_pow(unsigned a, std::uint64_t e, unsigned p) {
  unsigned r = 1 % p;
  unsigned base = a % p;
  while (e) {
    if (e & 1) r = fp_mul(r, base, p);
    base = fp_mul(base, base, p);
    e >>= 1;
  }
  return r;
}

// Inverse of a nonzero residue; p must be prime.
inline unsigned fp_inv(unsigned a, unsigned p) {
  a %= p;
  if (a == 0) throw std::domain_error("attempt to invert 0 mod " + std::to_string(p));
  return fp_pow(a, p - 2, p);
}

}  // namespace mild
