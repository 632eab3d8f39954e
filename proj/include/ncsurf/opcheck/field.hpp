// Coefficient fields for operator checks: a prime field with a runtime
// modulus and the rationals (GMP).
#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include "../errors.hpp"

namespace ncsurf::opcheck {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (std::uint64_t) ((unsigned __int128) a * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1)
      r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % p == 0)
      return n == p;
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool comp = true;
    for (int r = 1; r < s && comp; ++r) {
      x = mulmod(x, x, n);
      comp = x != n - 1;
    }
    if (comp)
      return false;
  }
  return true;
}

constexpr std::uint64_t big_prime = (std::uint64_t(1) << 61) - 1;

// Element of F_p. The modulus is per thread, set with FpScope.
struct Fp {
  std::uint64_t v = 0;

  static std::uint64_t& modulus() {
    thread_local std::uint64_t m = big_prime;
    return m;
  }
  static std::uint64_t size() { return modulus(); }

  Fp() = default;
  static Fp from_int(std::int64_t x) {
    std::int64_t m = (std::int64_t) modulus();
    std::int64_t r = x % m;
    if (r < 0)
      r += m;
    Fp out;
    out.v = (std::uint64_t) r;
    return out;
  }
  static Fp raw(std::uint64_t x) {
    Fp out;
    out.v = x % modulus();
    return out;
  }
  bool is_zero() const { return v == 0; }
  bool is_one() const { return v == 1; }
  Fp operator+(const Fp& o) const {
    std::uint64_t m = modulus(), r = v + o.v;
    return raw(r >= m ? r - m : r);
  }
  Fp operator-(const Fp& o) const { return raw(v >= o.v ? v - o.v : v + modulus() - o.v); }
  Fp operator-() const { return raw(v ? modulus() - v : 0); }
  Fp operator*(const Fp& o) const { return raw(mulmod(v, o.v, modulus())); }
  Fp inv() const {
    if (v == 0)
      fail_internal("Fp: inverse of zero");
    return raw(powmod(v, modulus() - 2, modulus()));
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  bool operator==(const Fp& o) const { return v == o.v; }
  std::string str() const {
    // small negatives read better
    std::uint64_t m = modulus();
    if (v > m / 2 && m - v < 1000000)
      return "-" + std::to_string(m - v);
    return std::to_string(v);
  }
};

class FpScope {
 public:
  explicit FpScope(std::uint64_t p) : saved_(Fp::modulus()) {
    if (!is_prime_u64(p))
      throw InputError("modulus " + std::to_string(p) + " is not prime");
    Fp::modulus() = p;
  }
  ~FpScope() { Fp::modulus() = saved_; }
  FpScope(const FpScope&) = delete;
  FpScope& operator=(const FpScope&) = delete;

 private:
  std::uint64_t saved_;
};

struct Qq {
  mpq_class v;

  static Qq from_int(std::int64_t x) {
    Qq out;
    out.v = mpq_class(mpz_class(std::to_string(x)));
    return out;
  }
  bool is_zero() const { return sgn(v) == 0; }
  bool is_one() const { return v == 1; }
  Qq operator+(const Qq& o) const { return {mpq_class(v + o.v)}; }
  Qq operator-(const Qq& o) const { return {mpq_class(v - o.v)}; }
  Qq operator-() const { return {mpq_class(-v)}; }
  Qq operator*(const Qq& o) const { return {mpq_class(v * o.v)}; }
  Qq inv() const {
    if (is_zero())
      fail_internal("Qq: inverse of zero");
    return {mpq_class(1 / v)};
  }
  Qq operator/(const Qq& o) const { return *this * o.inv(); }
  Qq& operator+=(const Qq& o) { return *this = *this + o; }
  Qq& operator-=(const Qq& o) { return *this = *this - o; }
  Qq& operator*=(const Qq& o) { return *this = *this * o; }
  bool operator==(const Qq& o) const { return v == o.v; }
  std::string str() const { return v.get_str(); }
};

template <class F>
F field_pow(F a, std::int64_t e) {
  if (e < 0)
    return field_pow(a.inv(), -e);
  F r = F::from_int(1);
  while (e) {
    if (e & 1)
      r *= a;
    a *= a;
    e >>= 1;
  }
  return r;
}

} // namespace ncsurf::opcheck
