#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccx {

/* Arithmetic in F_p for word-sized odd primes. All values live in [0, p). */

inline uint32_t fp_norm(int64_t v, uint32_t p) {
  int64_t r = v % static_cast<int64_t>(p);
  if (r < 0) r += p;
  return static_cast<uint32_t>(r);
}

inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
  uint64_t s = static_cast<uint64_t>(a) + b;
  return static_cast<uint32_t>(s >= p ? s - p : s);
}

inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline uint32_t fp_neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}

inline uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p) {
  uint32_t r = 1 % p;
  uint32_t base = a % p;
  while (e) {
    if (e & 1) r = fp_mul(r, base, p);
    base = fp_mul(base, base, p);
    e >>= 1;
  }
  return r;
}

inline uint32_t fp_inv(uint32_t a, uint32_t p) {
  if (a % p == 0) throw std::domain_error("fp_inv: zero has no inverse mod " + std::to_string(p));
  return fp_pow(a % p, p - 2, p);  // p prime
}

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/* A field element that remembers its modulus; mixing moduli is a logic error. */
struct PrimeFieldScalar {
  uint32_t value = 0;
  uint32_t modulus = 2;

  PrimeFieldScalar() = default;
  PrimeFieldScalar(int64_t v, uint32_t p) : value(fp_norm(v, p)), modulus(p) {}

  static void require_same(const PrimeFieldScalar& a, const PrimeFieldScalar& b) {
    if (a.modulus != b.modulus) throw std::domain_error("PrimeFieldScalar: modulus mismatch");
  }

  PrimeFieldScalar operator+(const PrimeFieldScalar& o) const {
    require_same(*this, o);
    return {static_cast<int64_t>(fp_add(value, o.value, modulus)), modulus};
  }
  PrimeFieldScalar operator-(const PrimeFieldScalar& o) const {
    require_same(*this, o);
    return {static_cast<int64_t>(fp_sub(value, o.value, modulus)), modulus};
  }
  PrimeFieldScalar operator*(const PrimeFieldScalar& o) const {
    require_same(*this, o);
    return {static_cast<int64_t>(fp_mul(value, o.value, modulus)), modulus};
  }
  PrimeFieldScalar inv() const { return {static_cast<int64_t>(fp_inv(value, modulus)), modulus}; }
  PrimeFieldScalar operator-() const { return {static_cast<int64_t>(fp_neg(value, modulus)), modulus}; }
  bool operator==(const PrimeFieldScalar& o) const { return value == o.value && modulus == o.modulus; }
};

}  // namespace ccx
