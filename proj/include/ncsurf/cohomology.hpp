// Global sections and Ext groups between line bundles on rational surfaces;
// acyclicity criteria and dimension formulas for moduli.
#pragma once

#include <string>
#include <vector>
#include "cones.hpp"

namespace ncsurf {

namespace detail {

inline Int gamma_impl(const SurfaceData& s0, const DivClass& d0, int depth,
                      std::vector<std::string>* trace) {
  if (!s0.sig.rational())
    fail_pre("dim_gamma: only rational surfaces (g = 0) are supported");
  if (depth > 4096)
    fail_internal("dim_gamma: recursion depth exceeded");
  if (d0.is_zero())
    return 1;
  if (!is_effective(s0, d0).effective)
    return 0;
  auto note = [&](const std::string& msg) {
    if (trace)
      trace->push_back(std::string(depth, ' ') + msg);
  };
  Frame fr(s0);
  DivClass d = d0;
  Int budget = walk_budget(d0);
  for (Int step = 0;; ++step) {
    if (step > budget)
      fail_internal("dim_gamma: step budget exceeded");
    const LatticeSignature& sig = d.sig;
    if (d.is_zero())
      return 1;
    std::optional<DivClass> sub;
    for (const QComponent& qc : fr.surface().components)
      if (intersect(d, qc.cls) < 0) {
        sub = qc.cls;
        break;
      }
    if (!sub) {
      std::vector<DivClass> extra = simple_roots(sig).extra;
      if (sig.m == 0 && sig.parity == Parity::odd)
        extra.push_back(DivClass::s(sig));
      for (const DivClass& x : extra)
        if (intersect(d, x) < 0) {
          sub = x;
          break;
        }
    }
    if (sub) {
      note("subtract " + render_class(*sub) + " from " + render_class(d));
      d = d - *sub;
      continue;
    }
    std::optional<DivClass> root;
    for (const DivClass& a : simple_roots(sig).roots)
      if (intersect(d, a) < 0) {
        root = a;
        break;
      }
    if (root) {
      const RootEffectiveness& eff = fr.root(*root);
      if (!eff.effective) {
        note("reflect " + render_class(d) + " in " + render_class(*root));
        fr.change(reflection_change(*root));
        d = reflect(d, *root);
        continue;
      }
      if (!eff.witness)
        fail_internal("dim_gamma: effective root without marking witness pairs negatively with "
                      + render_class(d));
      Int k = -intersect(d, *root);
      std::optional<Int> r = ord_q(fr.surface());
      Int l = eff.witness->a0;
      if (r) {
        Int lo = k - *r;
        l = lo + floor_mod(l - lo, *r);
        if (l == lo)
          note("twist index at the boundary -r");
      }
      if (l <= 0 || l >= k) {
        note("effective root " + render_class(*root) + ": pass to reflected surface (l="
             + std::to_string(l) + ")");
        // the reflected surface has its own effective classes; recheck there
        SurfaceData next = transform_surface(fr.surface(), reflection_change(*root));
        return gamma_impl(next, reflect(d, *root), depth + 1, trace);
      } else {
        note("effective root " + render_class(*root) + ": subtract " + std::to_string(k - l)
             + " copies (l=" + std::to_string(l) + ")");
        d = d - (k - l) * *root;
      }
      continue;
    }
    if (sig.m >= 1 && intersect(d, DivClass::e(sig, sig.m)) == 0) {
      note("blow down e" + std::to_string(sig.m));
      SurfaceData down = blow_down_last(fr.surface());
      DivClass dd(down.sig, std::vector<Int>(d.c.begin(), d.c.end() - 1));
      return gamma_impl(down, dd, depth + 1, trace);
    }
    DivClass q = anticanonical_class(sig);
    Int dq = intersect(d, q);
    if (dq > 0)
      return 1 + exact_half(intersect(d, d + q), "dim_gamma terminal value");
    if (dq < 0)
      fail_internal("dim_gamma: chamber class with D.Q < 0: " + render_class(d));
    const SurfaceData& cur = fr.surface();
    bool trivial_restriction = cur.marking.is_zero(cur.lambda_of(d));
    DivClass dm = d - q;
    Int prev = gamma_impl(cur, dm, depth + 1, trace);
    if (!trivial_restriction)
      return prev;
    Int h2 = gamma_impl(cur, canonical_class(sig) - dm, depth + 1, trace);
    if (prev + h2 - chi_line_bundle(dm) == 0)
      return prev + 1;
    if (sig.m == 8 && square(q) == 0) {
      Int a = d.s_coeff() / 2;
      std::optional<Int> ord = element_order(cur.marking, cur.lambda_of(q));
      if (a * q == d && ord && a % *ord == 0) {
        note("terminal multiple of Q: " + render_class(d));
        return a / *ord + 1;
      }
    }
    fail_internal("dim_gamma: unclassified Q-restriction pattern at " + render_class(d));
  }
}

} // namespace detail

inline Int dim_gamma(const SurfaceData& s, const DivClass& d, std::vector<std::string>* trace = nullptr) {
  d.check_same(DivClass(s.sig));
  return detail::gamma_impl(s, d, 0, trace);
}

struct HomDims {
  Int h0 = 0, h1 = 0, h2 = 0;
  bool operator==(const HomDims&) const = default;
};

inline HomDims hom_dims(const SurfaceData& s, const DivClass& d1, const DivClass& d2) {
  DivClass k = canonical_class(s.sig);
  HomDims h;
  h.h0 = dim_gamma(s, d2 - d1);
  h.h2 = dim_gamma(s, k + d1 - d2);
  Int chi = mukai_pairing(line_bundle_class(d1), line_bundle_class(d2));
  h.h1 = h.h0 + h.h2 - chi;
  if (h.h1 < 0)
    fail_internal("hom_dims: negative h1");
  if (h.h0 > 0 && h.h2 > 0)
    fail_internal("hom_dims: both Hom and Ext^2 nonzero");
  return h;
}

enum class Acyclicity { acyclic, acyclic_and_generating, unknown };

inline const char* acyclicity_name(Acyclicity a) {
  switch (a) {
    case Acyclicity::acyclic: return "acyclic";
    case Acyclicity::acyclic_and_generating: return "acyclic_and_generating";
    case Acyclicity::unknown: return "unknown";
  }
  return "unknown";
}

inline Acyclicity acyclic_globgen(const SurfaceData& s, const DivClass& d1, const DivClass& d2) {
  DivClass d = d2 - d1;
  int g = s.sig.g0;
  DivClass f = DivClass::f(s.sig);
  if (g == 0) {
    if (d.is_zero())
      return Acyclicity::acyclic_and_generating;
    if (!is_nef(s, d).nef)
      return Acyclicity::unknown;
    Int dq = intersect(d, anticanonical_class(s.sig));
    if (dq >= 2)
      return Acyclicity::acyclic_and_generating;
    return dq >= 1 ? Acyclicity::acyclic : Acyclicity::unknown;
  }
  if (is_nef(s, d - (2 * g) * f).nef)
    return Acyclicity::acyclic_and_generating;
  if (is_nef(s, d - (2 * g - 1) * f).nef)
    return Acyclicity::acyclic;
  return Acyclicity::unknown;
}

inline Int hilb_dim(Int n, Int g) {
  if (n < 0 || g < 0)
    fail_pre("hilb: need n, g >= 0");
  return 2 * n + g;
}

struct Rank1Bound {
  Int bound = 0;
  Int chi_ii = 0;
  bool line_bundle = false;  // equality case
};

inline Rank1Bound rank1_bound(const K0Class& i) {
  if (i.rank != 1)
    fail_pre("rank1_bound: class must have rank 1");
  const LatticeSignature& sig = i.c1.sig;
  Int deg = intersect(i.c1, DivClass::f(sig));
  Rank1Bound r;
  r.bound = 1 - (floor_mod(deg, 2) == 0 ? sig.g0 : sig.g1);
  r.chi_ii = mukai_pairing(i, i);
  r.line_bundle = r.chi_ii == r.bound;
  return r;
}

inline Int leaf_dim_disjoint(const SurfaceData& s, const K0Class& m) {
  if (m.rank != 0)
    fail_pre("leaf_dim_disjoint: class must have rank 0");
  if (!s.degree_zero(m.c1))
    fail_pre("leaf_dim_disjoint: c1 must have degree 0 on every component of Q");
  return 2 - mukai_pairing(m, m);
}

} // namespace ncsurf
