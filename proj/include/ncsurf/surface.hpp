// Marked surfaces: lattice signature, anticanonical decomposition, and the
// marking lambda: NS -> Pic^0(Q) together with the point class q.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>
#include "marking.hpp"

namespace ncsurf {

struct QComponent {
  DivClass cls;
  Int mult = 1;
  bool operator==(const QComponent&) const = default;
};

struct SurfaceData {
  LatticeSignature sig;
  std::vector<QComponent> components;
  MarkingGroup marking;
  MarkElement q;
  std::vector<MarkElement> lambda;  // images of s, f, e1..em

  MarkElement lambda_of(const DivClass& d) const {
    MarkElement r = marking.zero();
    for (size_t i = 0; i < d.c.size(); ++i)
      for (size_t k = 0; k < r.size(); ++k)
        r[k] += d.c[i] * lambda[i][k];
    return marking.normalize(r);
  }
  bool degree_zero(const DivClass& d) const {
    for (const QComponent& qc : components)
      if (intersect(d, qc.cls) != 0)
        return false;
    return true;
  }
  Int total_mult() const {
    Int n = 0;
    for (const QComponent& qc : components)
      n += qc.mult;
    return n;
  }
  bool operator==(const SurfaceData&) const = default;
};

inline int genus_of(const SurfaceData& s) { return s.sig.g0; }

inline std::vector<std::string> validate(const SurfaceData& s) {
  std::vector<std::string> bad;
  if (s.sig.m < 0 || s.sig.g0 < 0 || s.sig.g1 < 0)
    bad.push_back("signature: negative entry");
  if (bad.empty() && s.components.empty())
    bad.push_back("anticanonical sum: no components");
  if (!bad.empty())
    return bad;
  DivClass sum(s.sig);
  DivClass fib = DivClass::f(s.sig);
  for (size_t j = 0; j < s.components.size(); ++j) {
    const QComponent& qc = s.components[j];
    std::string tag = "component " + std::to_string(j + 1);
    if (!(qc.cls.sig == s.sig) || (int) qc.cls.c.size() != s.sig.rank()) {
      bad.push_back(tag + ": coefficient length");
      continue;
    }
    if (qc.mult < 1)
      bad.push_back(tag + ": multiplicity < 1");
    Int deg = intersect(qc.cls, fib);
    if (deg < 0 || deg > 2)
      bad.push_back(tag + ": component fiber degree " + std::to_string(deg));
    sum += qc.mult * qc.cls;
  }
  if (!(sum == anticanonical_class(s.sig)))
    bad.push_back("anticanonical sum");
  for (Int n : s.marking.torsion)
    if (n < 2)
      bad.push_back("marking: torsion order < 2");
  if (s.marking.free_rank < 0)
    bad.push_back("marking: negative free rank");
  if ((int) s.q.size() != s.marking.size())
    bad.push_back("q: wrong length");
  if ((int) s.lambda.size() != s.sig.rank())
    bad.push_back("lambda: expected " + std::to_string(s.sig.rank()) + " images");
  for (const MarkElement& x : s.lambda)
    if ((int) x.size() != s.marking.size()) {
      bad.push_back("lambda: wrong element length");
      break;
    }
  return bad;
}

inline void require_valid(const SurfaceData& s) {
  std::vector<std::string> bad = validate(s);
  if (!bad.empty())
    fail_input("invalid surface: " + bad.front());
}

// nullopt = infinite order
inline std::optional<Int> ord_q(const SurfaceData& s) { return element_order(s.marking, s.q); }

struct SimpleRoots {
  std::vector<DivClass> roots;
  std::vector<DivClass> extra;  // e_m, and f-e1 when m = 1
};

inline SimpleRoots simple_roots(const LatticeSignature& sig) {
  SimpleRoots r;
  DivClass s = DivClass::s(sig), f = DivClass::f(sig);
  int m = sig.m;
  if (sig.rational()) {
    if (sig.parity == Parity::even)
      r.roots.push_back(s - f);
    else if (m >= 1)
      r.roots.push_back(s - DivClass::e(sig, 1));
  }
  if (m >= 2)
    r.roots.push_back(f - DivClass::e(sig, 1) - DivClass::e(sig, 2));
  for (int i = 1; i < m; ++i)
    r.roots.push_back(DivClass::e(sig, i) - DivClass::e(sig, i + 1));
  if (m >= 1)
    r.extra.push_back(DivClass::e(sig, m));
  if (m == 1)
    r.extra.push_back(f - DivClass::e(sig, 1));
  return r;
}

// True when alpha is a nonpositive combination of the simple roots. Such a
// root is never effective: effective classes pair positively with an ample
// class, which lies on the positive side of every simple root.
inline bool is_negative_root(const DivClass& alpha) {
  std::vector<DivClass> simple = simple_roots(alpha.sig).roots;
  if (simple.empty())
    return false;
  IMat a(alpha.c.size(), std::vector<Int>(simple.size()));
  for (size_t j = 0; j < simple.size(); ++j)
    for (size_t i = 0; i < alpha.c.size(); ++i)
      a[i][j] = simple[j].c[i];
  auto sol = solve_integer(a, alpha.c);
  if (!sol || !sol->kernel.empty())
    return false;
  for (Int x : sol->particular)
    if (x > 0)
      return false;
  return true;
}

struct RootEffectiveness {
  bool effective = false;
  std::vector<Int> component_counts;  // n_j subtracted
  DivClass residual;                  // beta = alpha - sum n_j cls_j
  std::optional<CyclicSolution> witness;  // lambda(beta) = a q
};

namespace detail {

// Integers t with x - t*mu in <q>: returns (t0, step), the set being t0 + step*Z
// (step 0: only t0).
inline std::optional<std::pair<Int, Int>> marking_progression(const MarkingGroup& g, const MarkElement& x,
                                                              const MarkElement& mu, const MarkElement& q) {
  size_t rows = x.size(), tors = g.torsion.size();
  IMat a(rows, std::vector<Int>(2 + tors, 0));
  for (size_t i = 0; i < rows; ++i) {
    a[i][0] = mu[i];
    a[i][1] = q[i];
  }
  for (size_t j = 0; j < tors; ++j)
    a[g.free_rank + j][2 + j] = g.torsion[j];
  auto sol = solve_integer(a, x);
  if (!sol)
    return std::nullopt;
  Int step = 0;
  for (const auto& k : sol->kernel)
    step = std::gcd(step, k[0]);
  return std::make_pair(sol->particular[0], std::abs(step));
}

} // namespace detail

// A -2 class is effective if it decomposes as sum n_j cls_j + beta with
// n_j >= 0, beta orthogonal to every component and lambda(beta) in <q>.
// The n_j are forced by the pairings with the components, up to the null
// space of their Gram matrix.
inline RootEffectiveness is_root_effective(const SurfaceData& s, const DivClass& alpha) {
  if (square(alpha) != -2 || intersect(alpha, canonical_class(s.sig)) != 0)
    fail_pre("is_root_effective: class is not a root");
  RootEffectiveness out;
  if (is_negative_root(alpha))
    return out;
  size_t nc = s.components.size();
  auto residual_of = [&](const std::vector<Int>& n) {
    DivClass beta = alpha;
    for (size_t j = 0; j < nc; ++j)
      beta -= n[j] * s.components[j].cls;
    return beta;
  };
  auto attempt = [&](const std::vector<Int>& n) {
    for (Int x : n)
      if (x < 0)
        return false;
    DivClass beta = residual_of(n);
    auto w = cyclic_membership(s.marking, s.lambda_of(beta), s.q);
    if (!w)
      return false;
    out.effective = true;
    out.component_counts = n;
    out.residual = beta;
    out.witness = w;
    return true;
  };
  if (nc == 0) {
    attempt({});
    return out;
  }
  IMat gram(nc, std::vector<Int>(nc));
  std::vector<Int> rhs(nc);
  for (size_t i = 0; i < nc; ++i) {
    rhs[i] = intersect(alpha, s.components[i].cls);
    for (size_t j = 0; j < nc; ++j)
      gram[i][j] = intersect(s.components[i].cls, s.components[j].cls);
  }
  auto sol = solve_integer(gram, rhs);
  if (!sol)
    return out;
  const std::vector<Int>& p = sol->particular;
  if (sol->kernel.empty()) {
    attempt(p);
    return out;
  }
  if (sol->kernel.size() > 1)
    fail_pre("is_root_effective: component Gram matrix has a null space of rank "
             + std::to_string(sol->kernel.size()) + "; at most 1 is supported");
  // n = p + t v; nonnegativity bounds t, the marking fixes it modulo a step
  const std::vector<Int>& v = sol->kernel[0];
  std::optional<Int> lo, hi;
  for (size_t j = 0; j < nc; ++j) {
    if (v[j] > 0) {
      Int b = -detail::floor_div(p[j], v[j]);  // ceil(-p/v)
      lo = lo ? std::max(*lo, b) : b;
    } else if (v[j] < 0) {
      Int b = detail::floor_div(p[j], -v[j]);
      hi = hi ? std::min(*hi, b) : b;
    } else if (p[j] < 0) {
      return out;
    }
  }
  if (lo && hi && *lo > *hi)
    return out;
  DivClass w(s.sig);
  for (size_t j = 0; j < nc; ++j)
    w += v[j] * s.components[j].cls;
  auto prog = detail::marking_progression(s.marking, s.lambda_of(residual_of(p)), s.lambda_of(w), s.q);
  if (!prog)
    return out;
  auto [t0, step] = *prog;
  Int t = t0;
  if (step > 0) {
    if (lo)
      t = *lo + floor_mod(t0 - *lo, step);
    else if (hi)
      t = *hi - floor_mod(*hi - t0, step);
  }
  if ((lo && t < *lo) || (hi && t > *hi))
    return out;
  std::vector<Int> n(nc);
  for (size_t j = 0; j < nc; ++j)
    n[j] = p[j] + t * v[j];
  if (!attempt(n))
    fail_internal("is_root_effective: marking progression gave no witness");
  return out;
}

inline SurfaceData blow_up(const SurfaceData& s, int component, const std::vector<Int>& local_mults,
                           const MarkElement& position) {
  if (component < 0 || component >= (int) s.components.size())
    fail_input("blow_up: component index out of range");
  if (local_mults.size() != s.components.size())
    fail_input("blow_up: need one local multiplicity per component");
  if (local_mults[component] < 1)
    fail_pre("blow_up: the chosen component must pass through the point");
  Int mu = 0;
  for (size_t j = 0; j < local_mults.size(); ++j) {
    if (local_mults[j] < 0)
      fail_pre("blow_up: negative local multiplicity");
    mu += local_mults[j] * s.components[j].mult;
  }
  s.marking.check(position);
  LatticeSignature sig = s.sig;
  sig.m += 1;
  auto lift = [&](const DivClass& d) {
    DivClass r(sig);
    std::copy(d.c.begin(), d.c.end(), r.c.begin());
    return r;
  };
  SurfaceData t;
  t.sig = sig;
  t.marking = s.marking;
  t.q = s.q;
  t.lambda = s.lambda;
  t.lambda.push_back(s.marking.normalize(position));
  DivClass e_new = DivClass::e(sig, sig.m);
  for (size_t j = 0; j < s.components.size(); ++j)
    t.components.push_back({lift(s.components[j].cls) - local_mults[j] * e_new, s.components[j].mult});
  if (mu > 1)
    t.components.push_back({e_new, mu - 1});
  if (!validate(t).empty())
    fail_internal("blow_up: anticanonical bookkeeping failed");
  return t;
}

// Forget e_m: the numeric blowdown used when a class is pulled back from X_{m-1}.
inline SurfaceData blow_down_last(const SurfaceData& s) {
  if (s.sig.m < 1)
    fail_pre("blow_down_last: m = 0");
  LatticeSignature sig = s.sig;
  sig.m -= 1;
  SurfaceData t;
  t.sig = sig;
  t.marking = s.marking;
  t.q = s.q;
  t.lambda.assign(s.lambda.begin(), s.lambda.end() - 1);
  for (const QComponent& qc : s.components) {
    DivClass d(sig, std::vector<Int>(qc.cls.c.begin(), qc.cls.c.end() - 1));
    if (!d.is_zero())
      t.components.push_back({d, qc.mult});
  }
  if (!validate(t).empty())
    fail_internal("blow_down_last: anticanonical bookkeeping failed");
  return t;
}

// Components and marking pushed through a change of blowdown structure.
inline SurfaceData transform_surface(const SurfaceData& s, const BasisChange& bc) {
  SurfaceData t;
  t.sig = bc.to;
  t.marking = s.marking;
  t.q = s.q;
  for (const QComponent& qc : s.components)
    t.components.push_back({bc.apply(qc.cls), qc.mult});
  for (int i = 0; i < bc.to.rank(); ++i) {
    DivClass unit(bc.to);
    unit.c[i] = 1;
    t.lambda.push_back(s.lambda_of(bc.to_old(unit)));
  }
  return t;
}

inline Int isomonodromy_count(const SurfaceData& s) {
  DivClass a(s.sig);
  for (const QComponent& qc : s.components)
    a += (qc.mult - 1) * qc.cls;
  Int twice = square(a) - intersect(a, canonical_class(s.sig));
  if (twice % 2 != 0)
    fail_internal("isomonodromy count is not integral");
  return -twice / 2;
}

inline Int moduli_stack_dim(int g, int m) {
  if (g < 0 || m < 0)
    fail_pre("moduli_stack_dim: negative argument");
  if (g == 0)
    return m + 3;
  if (g == 1)
    return m + 1;
  return m + 2 * g - 2;
}

} // namespace ncsurf
