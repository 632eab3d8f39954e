// Neron-Severi lattice of a (noncommutative) ruled surface blown up m times,
// and the numeric Grothendieck group (rank, c1, chi).
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>
#include "errors.hpp"

namespace ncsurf {

using Int = std::int64_t;

enum class Parity { even, odd };

struct LatticeSignature {
  int g0 = 0;
  int g1 = 0;
  Parity parity = Parity::even;
  int m = 0;

  int rank() const { return m + 2; }
  bool rational() const { return g0 == 0 && g1 == 0; }
  Int s_square() const { return parity == Parity::even ? 0 : -1; }
  bool operator==(const LatticeSignature&) const = default;
};

inline LatticeSignature rational_sig(int m, Parity p = Parity::even) {
  return LatticeSignature{0, 0, p, m};
}

// Coefficients in the basis (s, f, e1, ..., em).
struct DivClass {
  LatticeSignature sig;
  std::vector<Int> c;

  DivClass() = default;
  explicit DivClass(const LatticeSignature& sg) : sig(sg), c(sg.rank(), 0) {}
  DivClass(const LatticeSignature& sg, std::vector<Int> coeffs) : sig(sg), c(std::move(coeffs)) {
    if ((int) c.size() != sig.rank())
      fail_input("divisor class needs " + std::to_string(sig.rank()) + " coefficients");
  }

  static DivClass s(const LatticeSignature& sg) { DivClass d(sg); d.c[0] = 1; return d; }
  static DivClass f(const LatticeSignature& sg) { DivClass d(sg); d.c[1] = 1; return d; }
  // 1-based as in e1..em
  static DivClass e(const LatticeSignature& sg, int i) {
    if (i < 1 || i > sg.m)
      fail_input("e" + std::to_string(i) + " out of range for m=" + std::to_string(sg.m));
    DivClass d(sg);
    d.c[i + 1] = 1;
    return d;
  }

  Int s_coeff() const { return c[0]; }
  Int f_coeff() const { return c[1]; }
  Int e_coeff(int i) const { return c[i + 1]; }

  bool is_zero() const {
    for (Int x : c)
      if (x != 0)
        return false;
    return true;
  }
  Int max_abs() const {
    Int r = 0;
    for (Int x : c)
      r = std::max(r, x < 0 ? -x : x);
    return r;
  }

  bool operator==(const DivClass& o) const { return sig == o.sig && c == o.c; }
  bool operator<(const DivClass& o) const { return c < o.c; }

  DivClass& operator+=(const DivClass& o) {
    check_same(o);
    for (size_t i = 0; i < c.size(); ++i)
      c[i] += o.c[i];
    return *this;
  }
  DivClass& operator-=(const DivClass& o) {
    check_same(o);
    for (size_t i = 0; i < c.size(); ++i)
      c[i] -= o.c[i];
    return *this;
  }
  DivClass operator-() const {
    DivClass r = *this;
    for (Int& x : r.c)
      x = -x;
    return r;
  }
  void check_same(const DivClass& o) const {
    if (!(sig == o.sig))
      throw SignatureMismatch();
  }
};

inline DivClass operator+(DivClass a, const DivClass& b) { return a += b; }
inline DivClass operator-(DivClass a, const DivClass& b) { return a -= b; }
inline DivClass operator*(Int k, DivClass a) {
  for (Int& x : a.c)
    x *= k;
  return a;
}

inline std::vector<std::vector<Int>> gram_matrix(const LatticeSignature& sig) {
  int n = sig.rank();
  std::vector<std::vector<Int>> g(n, std::vector<Int>(n, 0));
  g[0][0] = sig.s_square();
  g[0][1] = g[1][0] = 1;
  for (int i = 2; i < n; ++i)
    g[i][i] = -1;
  return g;
}

inline Int intersect(const DivClass& a, const DivClass& b) {
  a.check_same(b);
  Int r = a.c[0] * (a.sig.s_square() * b.c[0] + b.c[1]) + a.c[1] * b.c[0];
  for (size_t i = 2; i < a.c.size(); ++i)
    r -= a.c[i] * b.c[i];
  return r;
}

inline Int square(const DivClass& a) { return intersect(a, a); }

inline DivClass canonical_class(const LatticeSignature& sig) {
  DivClass k(sig);
  k.c[0] = -2;
  Int base = sig.parity == Parity::even ? 2 : 3;
  k.c[1] = -(base - sig.g0 - sig.g1);
  for (int i = 2; i < sig.rank(); ++i)
    k.c[i] = 1;
  return k;
}

inline DivClass anticanonical_class(const LatticeSignature& sig) { return -canonical_class(sig); }

inline Int chi_structure(const LatticeSignature& sig) { return 1 - sig.g0; }

inline Int floor_mod(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

inline Int exact_half(Int x, const char* what) {
  if (x % 2 != 0)
    fail_input(std::string("non-integral ") + what);
  return x / 2;
}

inline Int chi_line_bundle(const DivClass& d) {
  const LatticeSignature& sig = d.sig;
  Int deg = intersect(d, DivClass::f(sig));
  int g_other = floor_mod(deg, 2) == 0 ? sig.g0 : sig.g1;
  DivClass k = canonical_class(sig);
  Int twice = 2 - sig.g0 - g_other + intersect(d, d - k);
  return exact_half(twice, "Euler characteristic (inconsistent signature/class)");
}

struct K0Class {
  Int rank = 0;
  DivClass c1;
  Int chi = 0;

  bool is_zero() const { return rank == 0 && chi == 0 && c1.is_zero(); }
  bool operator==(const K0Class&) const = default;
};

inline K0Class point_class(const LatticeSignature& sig) { return K0Class{0, DivClass(sig), 1}; }
inline K0Class structure_class(const LatticeSignature& sig) {
  return K0Class{1, DivClass(sig), chi_structure(sig)};
}
inline K0Class line_bundle_class(const DivClass& d) { return K0Class{1, d, chi_line_bundle(d)}; }

inline Int mukai_pairing(const K0Class& a, const K0Class& b) {
  a.c1.check_same(b.c1);
  const LatticeSignature& sig = a.c1.sig;
  DivClass k = canonical_class(sig);
  return -a.rank * b.rank * chi_structure(sig) + a.rank * b.chi + b.rank * a.chi
         - intersect(a.c1, b.c1 - b.rank * k);
}

inline K0Class k0_serre_twist(const K0Class& a) {
  DivClass k = canonical_class(a.c1.sig);
  return K0Class{a.rank, a.c1 + a.rank * k, a.chi + intersect(a.c1, k)};
}

inline K0Class k0_serre_untwist(const K0Class& a) {
  DivClass k = canonical_class(a.c1.sig);
  DivClass c1 = a.c1 - a.rank * k;
  return K0Class{a.rank, c1, a.chi - intersect(c1, k)};
}

inline K0Class k0_adjoint(const K0Class& a) {
  DivClass k = canonical_class(a.c1.sig);
  return K0Class{a.rank, -a.c1 + a.rank * k, a.chi};
}

enum class TransferDirection { push, pull };

// Center data for a maximal order of degree r: its canonical class and chi(O_Z)
// on the same lattice.
struct OrderCenter {
  Int r = 1;
  DivClass canonical;
  Int chi_structure = 1;
};

inline DivClass order_half_correction(const OrderCenter& z) {
  if (z.r < 1)
    fail_pre("order degree r must be >= 1");
  DivClass w = (z.r * z.r) * z.canonical - z.r * canonical_class(z.canonical.sig);
  for (Int& x : w.c) {
    if (x % 2 != 0)
      fail_pre("r^2 K_Z - r K_X is not divisible by 2");
    x /= 2;
  }
  return w;
}

inline K0Class k0_order_transfer(const K0Class& a, TransferDirection dir, const OrderCenter& z) {
  a.c1.check_same(z.canonical);
  DivClass half = order_half_correction(z);
  Int r = z.r;
  if (dir == TransferDirection::push)
    return K0Class{r * r * a.rank, r * a.c1 + a.rank * half, a.chi};
  Int chi = r * r * a.chi + intersect(a.c1, half)
            + a.rank * (chi_structure(a.c1.sig) - r * r * z.chi_structure);
  return K0Class{a.rank, r * a.c1, chi};
}

} // namespace ncsurf

namespace ncsurf {

using IMat = std::vector<std::vector<Int>>;

// Change of basis between two lattices of equal rank.
// to_new maps old coordinates to new ones; column i of new_basis holds the
// old coordinates of the i-th new basis vector (so it is the inverse of to_new).
struct BasisChange {
  LatticeSignature from, to;
  IMat to_new;
  IMat new_basis;

  DivClass apply(const DivClass& d) const {
    if (!(d.sig == from))
      throw SignatureMismatch();
    return DivClass(to, mat_vec(to_new, d.c));
  }
  DivClass to_old(const DivClass& d) const {
    if (!(d.sig == to))
      throw SignatureMismatch();
    return DivClass(from, mat_vec(new_basis, d.c));
  }
  static std::vector<Int> mat_vec(const IMat& a, const std::vector<Int>& v) {
    std::vector<Int> r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j)
        r[i] += a[i][j] * v[j];
    return r;
  }
};

inline IMat identity_matrix(int n) {
  IMat a(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i)
    a[i][i] = 1;
  return a;
}

inline IMat mat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IMat r(n, std::vector<Int>(p, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (size_t j = 0; j < p; ++j)
          r[i][j] += a[i][t] * b[t][j];
  return r;
}

} // namespace ncsurf

namespace ncsurf {

// "2s+3f-e1-e2"; the zero class renders as "0".
inline std::string render_class(const DivClass& d) {
  std::string out;
  for (size_t i = 0; i < d.c.size(); ++i) {
    Int k = d.c[i];
    if (k == 0)
      continue;
    std::string name = i == 0 ? "s" : i == 1 ? "f" : "e" + std::to_string(i - 1);
    if (k < 0)
      out += '-';
    else if (!out.empty())
      out += '+';
    Int a = k < 0 ? -k : k;
    if (a != 1)
      out += std::to_string(a);
    out += name;
  }
  return out.empty() ? "0" : out;
}

} // namespace ncsurf
