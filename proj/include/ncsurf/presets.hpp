// Named example surfaces.
#pragma once

#include <functional>
#include <string>
#include <vector>
#include "surface.hpp"

namespace ncsurf {

struct Preset {
  std::string name;
  std::string description;
  std::function<SurfaceData()> build;
};

namespace detail {

inline MarkElement unit(int size, int i) {
  MarkElement x(size, 0);
  x[i] = 1;
  return x;
}

// Each basis class and q get their own free generator: no nonzero class has
// its marking in <q>.
inline SurfaceData generic_surface(const LatticeSignature& sig, std::vector<QComponent> comps) {
  SurfaceData s;
  s.sig = sig;
  s.components = std::move(comps);
  int n = sig.rank() + 1;
  s.marking.free_rank = n;
  for (int i = 0; i < sig.rank(); ++i)
    s.lambda.push_back(unit(n, i));
  s.q = unit(n, n - 1);
  return s;
}

inline DivClass cls(const LatticeSignature& sig, std::vector<Int> c) {
  c.resize(sig.rank(), 0);
  return DivClass(sig, c);
}

inline SurfaceData f0_blown_up(int m) {
  LatticeSignature sig = rational_sig(m);
  return generic_surface(sig, {{anticanonical_class(sig), 1}});
}

} // namespace detail

inline SurfaceData preset_f0_generic() { return detail::f0_blown_up(0); }

inline SurfaceData preset_f0_commutative() {
  SurfaceData s = preset_f0_generic();
  s.q = s.marking.zero();
  return s;
}

inline SurfaceData preset_f2_type() {
  SurfaceData s = preset_f0_generic();
  s.lambda[1] = s.lambda[0];  // lambda(s - f) = 0
  return s;
}

inline SurfaceData preset_f1_generic() {
  LatticeSignature sig = rational_sig(0, Parity::odd);
  return detail::generic_surface(sig, {{anticanonical_class(sig), 1}});
}

// m = 2 with the two points in one q-orbit: lambda(e1) - lambda(e2) = q.
inline SurfaceData preset_f0_m2_collide() {
  SurfaceData s = detail::f0_blown_up(2);
  s.lambda[2] = s.marking.add(s.lambda[3], s.q);
  return s;
}

// m = 8, irreducible Q, lambda(Q) a torsion element of exact order l outside <q>.
inline SurfaceData preset_dp9_torsion(Int l) {
  if (l < 2)
    fail_pre("dp9_torsion: order must be >= 2");
  LatticeSignature sig = rational_sig(8);
  SurfaceData s;
  s.sig = sig;
  s.components = {{anticanonical_class(sig), 1}};
  int free = 10;  // s, f, e1..e7, q
  s.marking.free_rank = free;
  s.marking.torsion = {l};
  int n = free + 1;
  for (int i = 0; i < 9; ++i)
    s.lambda.push_back(detail::unit(n, i));
  MarkElement e8(n, 0);
  e8[0] = 2;
  e8[1] = 2;
  for (int i = 2; i < 9; ++i)
    e8[i] = -1;
  e8[free] = -1;
  s.lambda.push_back(s.marking.normalize(e8));
  s.q = detail::unit(n, 9);
  return s;
}

inline SurfaceData preset_pvi_m12() {
  LatticeSignature sig = rational_sig(12);
  using detail::cls;
  std::vector<QComponent> comps = {
      {cls(sig, {1, 0, 0, 0, 0, 0, -1, 0, -1, 0, -1, 0, -1, 0}), 1},
      {cls(sig, {1, 0, 0, 0, 0, 0, 0, -1, 0, -1, 0, -1, 0, -1}), 1},
      {cls(sig, {0, 1, -1, -1}), 2},
      {cls(sig, {0, 0, 1, 0, -1}), 1},
      {cls(sig, {0, 0, 0, 1, 0, -1}), 1},
  };
  return detail::generic_surface(sig, comps);
}

// Differential-type ruled surface over a genus g curve: Q = 2(s - (g-1)f).
inline SurfaceData preset_diff_genus(int g) {
  LatticeSignature sig{g, g, Parity::even, 0};
  DivClass half = DivClass::s(sig) - (g - 1) * DivClass::f(sig);
  return detail::generic_surface(sig, {{half, 2}});
}

inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"f0_generic", "F0-type, smooth anticanonical curve 2s+2f, generic marking", preset_f0_generic},
      {"f0_commutative", "as f0_generic with q = 0", preset_f0_commutative},
      {"f2_type", "F0 lattice with lambda(s-f) = 0, so s-f is an effective root", preset_f2_type},
      {"f1_generic", "odd m=0 (one-point blowup of a plane), generic marking", preset_f1_generic},
      {"f0_generic_m1", "f0_generic blown up at 1 generic point of Q", [] { return detail::f0_blown_up(1); }},
      {"f0_generic_m2", "f0_generic blown up at 2 generic points of Q", [] { return detail::f0_blown_up(2); }},
      {"f0_generic_m3", "f0_generic blown up at 3 generic points of Q", [] { return detail::f0_blown_up(3); }},
      {"f0_generic_m4", "f0_generic blown up at 4 generic points of Q", [] { return detail::f0_blown_up(4); }},
      {"f0_m2_collide", "m=2 with lambda(e1)-lambda(e2) = q", preset_f0_m2_collide},
      {"dp9_torsion", "m=8, irreducible Q, lambda(Q) of order 2", [] { return preset_dp9_torsion(2); }},
      {"dp9_torsion_3", "m=8, irreducible Q, lambda(Q) of order 3", [] { return preset_dp9_torsion(3); }},
      {"dp9_torsion_5", "m=8, irreducible Q, lambda(Q) of order 5", [] { return preset_dp9_torsion(5); }},
      {"pvi_m12", "Painleve VI configuration, m=12; generic marking (not canonical)", preset_pvi_m12},
      {"diff_g1", "differential type over genus 1, Q = 2s", [] { return preset_diff_genus(1); }},
      {"diff_g2", "differential type over genus 2, Q = 2(s-f)", [] { return preset_diff_genus(2); }},
      {"diff_g3", "differential type over genus 3, Q = 2(s-2f)", [] { return preset_diff_genus(3); }},
  };
  return all;
}

inline SurfaceData preset(const std::string& name) {
  for (const Preset& p : presets())
    if (p.name == name)
      return p.build();
  fail_input("unknown preset '" + name + "'");
}

} // namespace ncsurf
