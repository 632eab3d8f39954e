// Finitely generated abelian group Z^R + Z/n1 + ... + Z/nk standing in for Pic^0(Q),
// with membership tests in the cyclic subgroup generated by q.
#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>
#include "smith.hpp"

namespace ncsurf {

using MarkElement = std::vector<Int>;

struct MarkingGroup {
  int free_rank = 0;
  std::vector<Int> torsion;

  int size() const { return free_rank + (int) torsion.size(); }
  MarkElement zero() const { return MarkElement(size(), 0); }

  void check(const MarkElement& x) const {
    if ((int) x.size() != size())
      fail_input("marking element has " + std::to_string(x.size()) + " entries, expected "
                 + std::to_string(size()));
  }
  MarkElement normalize(MarkElement x) const {
    check(x);
    for (size_t j = 0; j < torsion.size(); ++j)
      x[free_rank + j] = floor_mod(x[free_rank + j], torsion[j]);
    return x;
  }
  MarkElement add(const MarkElement& a, const MarkElement& b) const {
    check(a);
    check(b);
    MarkElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      r[i] = a[i] + b[i];
    return normalize(r);
  }
  MarkElement scale(Int k, const MarkElement& a) const {
    check(a);
    MarkElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      r[i] = k * a[i];
    return normalize(r);
  }
  MarkElement neg(const MarkElement& a) const { return scale(-1, a); }
  bool equal(const MarkElement& a, const MarkElement& b) const { return normalize(a) == normalize(b); }
  bool is_zero(const MarkElement& a) const { return equal(a, zero()); }
  bool operator==(const MarkingGroup&) const = default;
};

// Solutions of a*q = x form the coset a0 + d*Z; d == 0 means a0 is the only one.
struct CyclicSolution {
  Int a0 = 0;
  Int d = 0;
};

inline std::optional<CyclicSolution> cyclic_membership(const MarkingGroup& g, const MarkElement& x,
                                                      const MarkElement& q) {
  g.check(x);
  g.check(q);
  // unknowns (a, k_1..k_T): free rows q_i a = x_i, torsion rows q_j a + n_j k_j = x_j
  int rows = g.size(), t = (int) g.torsion.size();
  IMat a(rows, std::vector<Int>(1 + t, 0));
  for (int i = 0; i < rows; ++i)
    a[i][0] = q[i];
  for (int j = 0; j < t; ++j)
    a[g.free_rank + j][1 + j] = g.torsion[j];
  MarkElement xn = g.normalize(x);
  std::optional<IntegerSolution> sol = solve_integer(a, xn);
  if (!sol)
    return std::nullopt;
  CyclicSolution r{sol->particular[0], 0};
  for (const auto& k : sol->kernel)
    r.d = std::gcd(r.d, k[0]);
  r.d = std::llabs(r.d);
  if (r.d != 0)
    r.a0 = floor_mod(r.a0, r.d);
  if (!g.equal(g.scale(r.a0, q), x))
    fail_internal("cyclic membership witness does not verify");
  return r;
}

// Order of q; nullopt for infinite order.
inline std::optional<Int> element_order(const MarkingGroup& g, const MarkElement& q) {
  g.check(q);
  for (int i = 0; i < g.free_rank; ++i)
    if (q[i] != 0)
      return std::nullopt;
  Int ord = 1;
  for (size_t j = 0; j < g.torsion.size(); ++j) {
    Int n = g.torsion[j];
    Int t = floor_mod(q[g.free_rank + j], n);
    Int o = n / std::gcd(t, n);
    ord = std::lcm(ord, o);
  }
  return ord;
}

} // namespace ncsurf
