// Weyl group action on blowdown structures: simple roots, reflections,
// elementary transformations, chamber reduction, blowdown search.
#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>
#include "surface.hpp"

namespace ncsurf {

inline void require_root(const DivClass& alpha) {
  if (square(alpha) != -2)
    fail_pre("reflection in a class with self-intersection " + std::to_string(square(alpha)));
}

inline DivClass reflect(const DivClass& d, const DivClass& alpha) {
  require_root(alpha);
  return d + intersect(d, alpha) * alpha;
}

inline BasisChange reflection_change(const DivClass& alpha) {
  require_root(alpha);
  const LatticeSignature& sig = alpha.sig;
  int n = sig.rank();
  IMat r(n, std::vector<Int>(n, 0));
  for (int j = 0; j < n; ++j) {
    DivClass unit(sig);
    unit.c[j] = 1;
    DivClass img = reflect(unit, alpha);
    for (int i = 0; i < n; ++i)
      r[i][j] = img.c[i];
  }
  return BasisChange{sig, sig, r, r};
}

// s' = s - e1, f' = f, e1' = f - e1 (even -> odd), and the inverse odd -> even.
inline BasisChange elementary_change(const LatticeSignature& sig) {
  if (sig.m < 1)
    fail_pre("elementary transformation needs m >= 1");
  int n = sig.rank();
  LatticeSignature to = sig;
  to.parity = sig.parity == Parity::even ? Parity::odd : Parity::even;
  IMat even_to_odd = identity_matrix(n);
  even_to_odd[1][0] = 1;
  even_to_odd[1][2] = 1;
  even_to_odd[2][0] = -1;
  even_to_odd[2][2] = -1;
  IMat odd_to_even = identity_matrix(n);
  odd_to_even[1][2] = 1;
  odd_to_even[2][0] = -1;
  odd_to_even[2][2] = -1;
  if (sig.parity == Parity::even)
    return BasisChange{sig, to, even_to_odd, odd_to_even};
  return BasisChange{sig, to, odd_to_even, even_to_odd};
}

inline DivClass elementary_transformation(const DivClass& d) { return elementary_change(d.sig).apply(d); }

struct Move {
  enum class Kind { reflect, elementary, subtract };
  Kind kind = Kind::reflect;
  DivClass cls;  // root or subtracted class, in coordinates before the move
};

enum class ReductionStatus { chamber, blocked, fiber_negative };

struct ReductionTrace {
  std::vector<Move> moves;
  DivClass start, end;
  std::vector<SurfaceData> surfaces;  // snapshot after each structure-changing move
  ReductionStatus status = ReductionStatus::chamber;
  std::optional<DivClass> blocking;
  Int blocking_pairing = 0;
};

inline DivClass apply_move(const DivClass& d, const Move& mv) {
  switch (mv.kind) {
    case Move::Kind::reflect: return reflect(d, mv.cls);
    case Move::Kind::elementary: return elementary_transformation(d);
    case Move::Kind::subtract: return d - mv.cls;
  }
  return d;
}

inline DivClass replay(const DivClass& start, const std::vector<Move>& moves) {
  DivClass d = start;
  for (const Move& mv : moves)
    d = apply_move(d, mv);
  return d;
}

// A surface seen through a sequence of blowdown-structure changes, remembering
// how to express current classes in the original basis.
class Frame {
public:
  explicit Frame(const SurfaceData& s)
      : surface_(s), orig_sig_(s.sig), to_orig_(identity_matrix(s.sig.rank())) {}

  const SurfaceData& surface() const { return surface_; }
  const LatticeSignature& sig() const { return surface_.sig; }

  void change(const BasisChange& bc) {
    surface_ = transform_surface(surface_, bc);
    to_orig_ = mat_mul(to_orig_, bc.new_basis);
    root_cache_.clear();
  }
  DivClass to_original(const DivClass& d) const {
    return DivClass(orig_sig_, BasisChange::mat_vec(to_orig_, d.c));
  }
  const RootEffectiveness& root(const DivClass& alpha) {
    auto it = root_cache_.find(alpha.c);
    if (it == root_cache_.end()) {
      it = root_cache_.emplace(alpha.c, is_root_effective(surface_, alpha)).first;
    }
    return it->second;
  }
  bool root_effective(const DivClass& alpha) { return root(alpha).effective; }

private:
  SurfaceData surface_;
  LatticeSignature orig_sig_;
  IMat to_orig_;
  std::map<std::vector<Int>, RootEffectiveness> root_cache_;
};

inline Int reduction_budget(const DivClass& d) {
  return 64 * (d.sig.m + 2) * (1 + d.max_abs());
}

inline ReductionTrace reduce_to_chamber(const SurfaceData& s, const DivClass& d0) {
  d0.check_same(DivClass(s.sig));
  Frame fr(s);
  ReductionTrace tr;
  tr.start = d0;
  DivClass d = d0;
  Int budget = reduction_budget(d0);
  for (Int step = 0;; ++step) {
    if (step > budget)
      fail_internal("reduce_to_chamber: step budget exceeded");
    if (intersect(d, DivClass::f(d.sig)) < 0) {
      tr.status = ReductionStatus::fiber_negative;
      break;
    }
    std::optional<DivClass> block;
    for (const QComponent& qc : fr.surface().components)
      if (intersect(d, qc.cls) < 0) {
        block = qc.cls;
        break;
      }
    std::optional<DivClass> to_reflect;
    if (!block)
      for (const DivClass& a : simple_roots(d.sig).roots)
        if (intersect(d, a) < 0) {
          if (fr.root_effective(a))
            block = a;
          else
            to_reflect = a;
          break;
        }
    if (block) {
      tr.status = ReductionStatus::blocked;
      tr.blocking = block;
      tr.blocking_pairing = intersect(d, *block);
      break;
    }
    if (!to_reflect) {
      tr.status = ReductionStatus::chamber;
      break;
    }
    fr.change(reflection_change(*to_reflect));
    tr.moves.push_back({Move::Kind::reflect, *to_reflect});
    tr.surfaces.push_back(fr.surface());
    d = reflect(d, *to_reflect);
  }
  tr.end = d;
  return tr;
}

struct BlowdownResult {
  enum class Status { to_em, plane, decomposes, not_formal };
  Status status = Status::to_em;
  ReductionTrace trace;
  std::optional<DivClass> obstruction;  // original coordinates
  std::string message;

  bool ok() const { return status == Status::to_em || status == Status::plane; }
};

namespace detail {

inline BlowdownResult find_blowdown_impl(const SurfaceData& s, const DivClass& e0, bool numeric) {
  const LatticeSignature& sig0 = s.sig;
  e0.check_same(DivClass(sig0));
  if (square(e0) != -1 || intersect(e0, canonical_class(sig0)) != -1)
    fail_pre("find_blowdown: need e^2 = e.K = -1");
  BlowdownResult res;
  res.trace.start = e0;
  res.trace.end = e0;
  auto decomposes = [&](const DivClass& piece) {
    res.status = BlowdownResult::Status::decomposes;
    res.obstruction = piece;
    return res;
  };
  if (!numeric)
    for (const QComponent& qc : s.components)
      if (!(qc.cls == e0) && intersect(e0, qc.cls) < 0)
        return decomposes(qc.cls);
  if (sig0.m == 0) {
    res.trace.end = e0;
    if (sig0.rational() && sig0.parity == Parity::odd && e0 == DivClass::s(sig0)) {
      res.status = BlowdownResult::Status::plane;
      return res;
    }
    res.status = BlowdownResult::Status::not_formal;
    return res;
  }
  Frame fr(s);
  DivClass e = e0;
  Int budget = reduction_budget(e0) * 4;
  for (Int step = 0;; ++step) {
    if (step > budget)
      fail_internal("find_blowdown: step budget exceeded");
    const LatticeSignature& sig = e.sig;
    DivClass em = DivClass::e(sig, sig.m);
    if (e == em) {
      res.status = BlowdownResult::Status::to_em;
      break;
    }
    DivClass f = DivClass::f(sig);
    if (intersect(e, f) < 0) {
      res.status = BlowdownResult::Status::not_formal;
      break;
    }
    std::optional<DivClass> root;
    for (const DivClass& a : simple_roots(sig).roots)
      if (intersect(e, a) < 0) {
        root = a;
        break;
      }
    if (root) {
      if (!numeric && fr.root_effective(*root)) {
        res.trace.end = e;
        return decomposes(fr.to_original(*root));
      }
      fr.change(reflection_change(*root));
      res.trace.moves.push_back({Move::Kind::reflect, *root});
      res.trace.surfaces.push_back(fr.surface());
      e = reflect(e, *root);
      continue;
    }
    DivClass e1 = DivClass::e(sig, 1);
    if (2 * intersect(e, e1) > intersect(e, f)) {
      fr.change(elementary_change(sig));
      res.trace.moves.push_back({Move::Kind::elementary, DivClass(sig)});
      res.trace.surfaces.push_back(fr.surface());
      e = elementary_transformation(e);
      continue;
    }
    res.trace.end = e;
    if (intersect(e, em) < 0)
      return decomposes(fr.to_original(em));
    res.status = BlowdownResult::Status::not_formal;
    return res;
  }
  res.trace.end = e;
  return res;
}

} // namespace detail

inline BlowdownResult find_blowdown(const SurfaceData& s, const DivClass& e) {
  BlowdownResult r = detail::find_blowdown_impl(s, e, false);
  if (r.status == BlowdownResult::Status::decomposes) {
    DivClass rest = e - *r.obstruction;
    r.message = "class decomposes: " + render_class(e) + " = (" + render_class(*r.obstruction)
                + ") + (" + render_class(rest) + ")";
  } else if (r.status == BlowdownResult::Status::not_formal) {
    r.message = "not a formal -1-curve: " + render_class(e);
  }
  return r;
}

// Orbit membership at the lattice level (every root treated as ineffective).
inline bool in_neg1_orbit(const SurfaceData& s, const DivClass& e) {
  return detail::find_blowdown_impl(s, e, true).ok();
}

inline void require_neg1_orbit(const SurfaceData& s, const DivClass& e) {
  if (square(e) != -1 || intersect(e, canonical_class(s.sig)) != -1 || !in_neg1_orbit(s, e))
    fail_pre("class is not in the Weyl orbit of e_m");
}

inline bool is_neg1_effective(const SurfaceData& s, const DivClass& e) {
  require_neg1_orbit(s, e);
  return true;
}

inline bool is_neg1_irreducible(const SurfaceData& s, const DivClass& e) {
  require_neg1_orbit(s, e);
  return find_blowdown(s, e).ok();
}

// Reflections (in simple roots, as classes of the fixed lattice) that move da
// into the chamber; da must have positive square and positive fiber degree.
inline std::vector<DivClass> chamber_word(DivClass da) {
  std::vector<DivClass> word;
  Int budget = 1000 * reduction_budget(da);
  for (Int step = 0;; ++step) {
    if (step > budget)
      fail_internal("chamber_word: step budget exceeded");
    std::optional<DivClass> root;
    for (const DivClass& a : simple_roots(da.sig).roots)
      if (intersect(da, a) < 0) {
        root = a;
        break;
      }
    if (!root)
      return word;
    da = reflect(da, *root);
    word.push_back(*root);
  }
}

inline std::set<DivClass> enumerate_orbit(const LatticeSignature& sig, const DivClass& seed,
                                          const DivClass& da, Int bound, size_t max_size = 200000) {
  seed.check_same(DivClass(sig));
  da.check_same(seed);
  if (square(da) <= 0 || intersect(da, DivClass::f(sig)) <= 0)
    fail_pre("enumerate_orbit: need Da^2 > 0 and Da.f > 0");
  std::vector<DivClass> word = chamber_word(da);
  DivClass dac = da, x = seed;
  for (const DivClass& a : word) {
    dac = reflect(dac, a);
    x = reflect(x, a);
  }
  std::vector<DivClass> roots = simple_roots(sig).roots;
  // walk down to the orbit's minimum, then breadth-first upward
  Int budget = 1000 * reduction_budget(x);
  for (Int step = 0;; ++step) {
    if (step > budget)
      fail_internal("enumerate_orbit: descent budget exceeded");
    bool moved = false;
    for (const DivClass& a : roots)
      if (intersect(x, a) < 0) {
        x = reflect(x, a);
        moved = true;
        break;
      }
    if (!moved)
      break;
  }
  std::set<DivClass> found;
  if (intersect(x, dac) > bound)
    return found;
  std::deque<DivClass> queue{x};
  found.insert(x);
  while (!queue.empty()) {
    DivClass y = queue.front();
    queue.pop_front();
    for (const DivClass& a : roots) {
      DivClass z = reflect(y, a);
      if (intersect(z, dac) <= bound && found.insert(z).second) {
        if (found.size() > max_size)
          fail_internal("enumerate_orbit: size budget exceeded");
        queue.push_back(z);
      }
    }
  }
  std::set<DivClass> out;
  for (DivClass z : found) {
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      z = reflect(z, *it);
    out.insert(z);
  }
  return out;
}

} // namespace ncsurf
