// Effective, nef and ample classes.
#pragma once

#include <optional>
#include <set>
#include <vector>
#include "coxeter.hpp"
#include "latenum.hpp"
#include "smith.hpp"

namespace ncsurf {

struct EffectiveResult {
  bool effective = false;
  std::vector<DivClass> certificate;  // subtracted classes, original basis
  DivClass residue;                   // final class in the dual monoid, original basis
};

struct NefResult {
  bool nef = false;
  std::optional<DivClass> witness;  // effective class pairing negatively
};

// m = 0: the effective class of least self-intersection among sections.
struct MinimalSection {
  DivClass cls;
  bool tie = false;
};

inline MinimalSection minimal_section(const SurfaceData& s) {
  const LatticeSignature& sig = s.sig;
  if (sig.m != 0)
    fail_pre("minimal_section: m must be 0");
  DivClass f = DivClass::f(sig);
  std::vector<DivClass> cand;
  if (sig.rational()) {
    cand.push_back(DivClass::s(sig));
    if (sig.parity == Parity::even) {
      DivClass a = DivClass::s(sig) - f;
      if (is_root_effective(s, a).effective)
        cand.push_back(a);
    }
  }
  for (const QComponent& qc : s.components)
    if (intersect(qc.cls, f) == 1)
      cand.push_back(qc.cls);
  if (cand.empty())
    fail_input("no horizontal component of Q to serve as minimal section");
  MinimalSection best{cand[0], false};
  for (size_t i = 1; i < cand.size(); ++i) {
    Int a = square(cand[i]), b = square(best.cls);
    if (a < b || (a == b && cand[i] < best.cls)) {
      best.tie = a == b && !(cand[i] == best.cls);
      best.cls = cand[i];
    } else if (a == b && !(cand[i] == best.cls)) {
      best.tie = true;
    }
  }
  return best;
}

namespace detail {

enum class WalkMode { effective, nef };

struct WalkResult {
  bool accepted = false;
  std::vector<DivClass> subtracted;
  DivClass residue;
  std::optional<DivClass> witness;
};

inline Int walk_budget(const DivClass& d) {
  Int a = 1 + d.max_abs();
  return 4096 * (d.sig.m + 2) * a * a;
}

inline WalkResult cone_walk(const SurfaceData& s, const DivClass& d0, WalkMode mode) {
  d0.check_same(DivClass(s.sig));
  WalkResult out;
  const LatticeSignature& sig0 = s.sig;
  if (sig0.m == 0) {
    DivClass sp = minimal_section(s).cls;
    DivClass f = DivClass::f(sig0);
    Int a = d0.s_coeff();
    Int b_rest = d0.f_coeff() - a * sp.f_coeff();  // d0 = a s' + b_rest f
    if (mode == WalkMode::effective) {
      out.accepted = a >= 0 && b_rest >= 0;
      if (out.accepted) {
        for (Int i = 0; i < a; ++i)
          out.subtracted.push_back(sp);
        for (Int i = 0; i < b_rest; ++i)
          out.subtracted.push_back(f);
        out.residue = DivClass(sig0);
      }
    } else {
      if (intersect(d0, f) < 0)
        out.witness = f;
      else if (intersect(d0, sp) < 0)
        out.witness = sp;
      out.accepted = !out.witness;
    }
    return out;
  }
  Frame fr(s);
  DivClass d = d0;
  Int budget = walk_budget(d0);
  for (Int step = 0;; ++step) {
    if (step > budget)
      fail_internal("cone_walk: step budget exceeded");
    const LatticeSignature& sig = d.sig;
    if (d.is_zero()) {
      out.accepted = true;
      out.residue = DivClass(sig0);
      return out;
    }
    DivClass f = DivClass::f(sig);
    std::optional<DivClass> sub;
    if (intersect(d, f) < 0) {
      if (mode == WalkMode::nef)
        out.witness = fr.to_original(f);
      return out;
    }
    for (const QComponent& qc : fr.surface().components)
      if (intersect(d, qc.cls) < 0) {
        sub = qc.cls;
        break;
      }
    if (!sub) {
      std::optional<DivClass> refl;
      for (const DivClass& a : simple_roots(sig).roots)
        if (intersect(d, a) < 0) {
          if (fr.root_effective(a))
            sub = a;
          else
            refl = a;
          break;
        }
      if (refl) {
        fr.change(reflection_change(*refl));
        d = reflect(d, *refl);
        continue;
      }
    }
    if (!sub)
      for (const DivClass& x : simple_roots(sig).extra)
        if (intersect(d, x) < 0) {
          sub = x;
          break;
        }
    if (!sub) {
      out.accepted = true;
      out.residue = fr.to_original(d);
      return out;
    }
    if (mode == WalkMode::nef) {
      out.witness = fr.to_original(*sub);
      return out;
    }
    out.subtracted.push_back(fr.to_original(*sub));
    d = d - *sub;
  }
}

} // namespace detail

inline EffectiveResult is_effective(const SurfaceData& s, const DivClass& d) {
  detail::WalkResult w = detail::cone_walk(s, d, detail::WalkMode::effective);
  EffectiveResult r;
  r.effective = w.accepted;
  if (r.effective) {
    r.certificate = std::move(w.subtracted);
    r.residue = w.residue;
    DivClass sum = r.residue;
    for (const DivClass& x : r.certificate)
      sum += x;
    if (!(sum == d))
      fail_internal("is_effective: certificate does not sum to the class");
  }
  return r;
}

inline NefResult is_nef(const SurfaceData& s, const DivClass& d) {
  detail::WalkResult w = detail::cone_walk(s, d, detail::WalkMode::nef);
  NefResult r;
  r.nef = w.accepted;
  r.witness = w.witness;
  if (!r.nef && (!r.witness || intersect(d, *r.witness) >= 0))
    fail_internal("is_nef: witness does not pair negatively");
  return r;
}

// Classes x in d^perp with x^2 in {-1, -2}; d^2 > 0 required.
inline std::vector<DivClass> short_classes_orthogonal(const DivClass& d) {
  const LatticeSignature& sig = d.sig;
  IMat g = gram_matrix(sig);
  IMat row(1, BasisChange::mat_vec(g, d.c));
  std::vector<std::vector<Int>> ker = integer_kernel(row);
  size_t k = ker.size();
  IMat pos(k, std::vector<Int>(k, 0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      pos[i][j] = -intersect(DivClass(sig, ker[i]), DivClass(sig, ker[j]));
  std::vector<DivClass> out;
  for (const auto& y : short_vectors(pos, 2)) {
    DivClass x(sig);
    for (size_t i = 0; i < k; ++i)
      for (size_t t = 0; t < x.c.size(); ++t)
        x.c[t] += y[i] * ker[i][t];
    out.push_back(x);
  }
  return out;
}

inline bool is_ample(const SurfaceData& s, const DivClass& d) {
  if (!is_nef(s, d).nef || square(d) <= 0)
    return false;
  for (const QComponent& qc : s.components)
    if (intersect(d, qc.cls) == 0)
      return false;
  for (const DivClass& x : short_classes_orthogonal(d))
    if (is_effective(s, x).effective)
      return false;
  return true;
}

inline bool is_strongly_ample(const SurfaceData& s, const DivClass& d) {
  int g = s.sig.g0;
  if (!is_ample(s, d))
    return false;
  if (!is_nef(s, d - (2 * g) * DivClass::f(s.sig)).nef)
    return false;
  return g > 0 || intersect(d, anticanonical_class(s.sig)) >= 2;
}

// Positive roots with 0 < alpha.da <= bound (numeric; effectiveness not tested).
inline std::vector<DivClass> positive_roots_below(const DivClass& da, Int bound, size_t max_size = 200000) {
  std::vector<DivClass> word = chamber_word(da);
  DivClass dac = da;
  for (const DivClass& a : word)
    dac = reflect(dac, a);
  std::vector<DivClass> simple = simple_roots(da.sig).roots;
  std::set<DivClass> found;
  std::deque<DivClass> queue;
  for (const DivClass& a : simple)
    if (intersect(a, dac) <= bound && found.insert(a).second)
      queue.push_back(a);
  while (!queue.empty()) {
    DivClass y = queue.front();
    queue.pop_front();
    for (const DivClass& a : simple) {
      if (intersect(y, a) <= 0)
        continue;
      DivClass z = reflect(y, a);
      if (intersect(z, dac) <= bound && found.insert(z).second) {
        if (found.size() > max_size)
          fail_internal("positive_roots_below: size budget exceeded");
        queue.push_back(z);
      }
    }
  }
  std::vector<DivClass> out;
  for (DivClass z : found) {
    if (intersect(z, dac) <= 0)
      continue;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      z = reflect(z, *it);
    out.push_back(z);
  }
  return out;
}

inline std::vector<DivClass> effective_generators(const SurfaceData& s, const DivClass& da, Int bound) {
  if (!is_ample(s, da))
    fail_pre("effective_generators: Da is not ample");
  std::vector<DivClass> out;
  std::set<DivClass> seen;
  auto add = [&](const DivClass& x) {
    if (seen.insert(x).second)
      out.push_back(x);
  };
  for (const QComponent& qc : s.components)
    add(qc.cls);
  const LatticeSignature& sig = s.sig;
  if (sig.m == 0) {
    add(minimal_section(s).cls);
    add(DivClass::f(sig));
    return out;
  }
  // -1 classes: orbits of e_m and, for m = 1, of f - e1
  for (const DivClass& x : simple_roots(sig).extra)
    for (const DivClass& e : enumerate_orbit(sig, x, da, bound))
      add(e);
  for (const DivClass& a : positive_roots_below(da, bound))
    if (is_root_effective(s, a).effective)
      add(a);
  return out;
}

} // namespace ncsurf
