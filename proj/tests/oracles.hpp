// Test-side helpers: random classes and independent reference computations.
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include "ncsurf/ncsurf.hpp"

namespace ncsurf::testing {

inline LatticeSignature random_sig(std::mt19937_64& rng, int max_m = 8, int max_g = 3) {
  std::uniform_int_distribution<int> m(0, max_m), g(0, max_g), par(0, 1);
  int gg = g(rng);
  return LatticeSignature{gg, gg, par(rng) ? Parity::odd : Parity::even, m(rng)};
}

inline DivClass random_class(std::mt19937_64& rng, const LatticeSignature& sig, Int amp = 5) {
  std::uniform_int_distribution<Int> c(-amp, amp);
  DivClass d(sig);
  for (Int& x : d.c)
    x = c(rng);
  return d;
}

inline K0Class random_k0(std::mt19937_64& rng, const LatticeSignature& sig, Int amp = 5) {
  std::uniform_int_distribution<Int> c(-amp, amp);
  return K0Class{c(rng), random_class(rng, sig, amp), c(rng)};
}

// h^i(P^1, O(a))
inline Int h0_p1(Int a) { return std::max<Int>(a + 1, 0); }
inline Int h1_p1(Int a) { return std::max<Int>(-a - 1, 0); }

// Kunneth on P^1 x P^1: h^k(O(a, b)) = sum_{i+j=k} h^i(a) h^j(b)
struct Kunneth {
  Int h0, h1, h2;
};
inline Kunneth kunneth(Int a, Int b) {
  return {h0_p1(a) * h0_p1(b), h0_p1(a) * h1_p1(b) + h1_p1(a) * h0_p1(b), h1_p1(a) * h1_p1(b)};
}

} // namespace ncsurf::testing

namespace ncsurf::testing {

// Membership in the monoid generated by `gens`, decided by memoized descent
// on the pairing with an ample class (every generator pairs positively).
class MonoidOracle {
public:
  MonoidOracle(std::vector<DivClass> gens, DivClass da) : gens_(std::move(gens)), da_(std::move(da)) {
    for (const auto& g : gens_)
      if (intersect(g, da_) <= 0)
        throw std::logic_error("generator does not pair positively with the ample class");
  }

  bool contains(const DivClass& d) {
    if (d.is_zero())
      return true;
    if (intersect(d, da_) <= 0 || intersect(d, DivClass::f(d.sig)) < 0)
      return false;
    auto it = memo_.find(d.c);
    if (it != memo_.end())
      return it->second;
    bool ok = false;
    for (const auto& g : gens_)
      if (contains(d - g)) {
        ok = true;
        break;
      }
    memo_.emplace(d.c, ok);
    return ok;
  }

  // nef iff nonnegative on every generator
  bool nef(const DivClass& d) const {
    for (const auto& g : gens_)
      if (intersect(d, g) < 0)
        return false;
    return true;
  }

  const std::vector<DivClass>& gens() const { return gens_; }

private:
  std::vector<DivClass> gens_;
  DivClass da_;
  std::map<std::vector<Int>, bool> memo_;
};

// Calls fn on every class with all coefficients in [-box, box].
template <class Fn>
void for_each_in_box(const LatticeSignature& sig, Int box, Fn fn) {
  std::vector<Int> c(sig.rank(), -box);
  while (true) {
    fn(DivClass(sig, c));
    size_t j = 0;
    while (j < c.size() && c[j] == box)
      c[j++] = -box;
    if (j == c.size())
      return;
    ++c[j];
  }
}

// A fixed ample class for each small preset used by the cone oracles.
inline DivClass oracle_ample_class(const std::string& name, const SurfaceData& s) {
  const auto& sig = s.sig;
  DivClass sc = DivClass::s(sig), f = DivClass::f(sig);
  if (name == "f2_type")
    return sc + 2 * f;
  if (name == "f1_generic")
    return 2 * sc + 3 * f;
  if (name == "f0_m2_collide")
    return 4 * sc + 3 * f - 2 * DivClass::e(sig, 1) - DivClass::e(sig, 2);
  return anticanonical_class(sig);
}

inline const std::vector<std::string>& small_presets() {
  static const std::vector<std::string> names = {"f0_generic", "f0_commutative", "f2_type", "f1_generic",
                                                 "f0_generic_m1", "f0_generic_m2", "f0_generic_m3",
                                                 "f0_m2_collide"};
  return names;
}

} // namespace ncsurf::testing
