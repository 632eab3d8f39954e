// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include "ncsurf/ncsurf.hpp"
#include "ncsurf/opcheck.hpp"
#include "oracles.hpp"

using namespace ncsurf;
using namespace ncsurf::testing;

namespace {

// Collects the first mismatch of a criterion.
struct Check {
  std::string first;
  long count = 0;
  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok && first.empty())
      first = what;
  }
};

bool report(int n, const char* title, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.first = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = c.first.empty();
  std::printf("%s  %2d  %s  (%ld checks, %.1fs)%s%s\n", ok ? "PASS" : "FAIL", n, title, c.count, secs,
              ok ? "" : "  first mismatch: ", c.first.c_str());
  std::fflush(stdout);
  return ok;
}

std::string k0s(const K0Class& k) {
  return "(" + std::to_string(k.rank) + ", " + render_class(k.c1) + ", " + std::to_string(k.chi) + ")";
}

// Effective generators found without the cone module: Q components, effective
// roots, and classes with chi >= 1 whose Serre dual pairs negatively with da
// (so h^2 = 0 and Riemann-Roch forces a section).
std::vector<DivClass> oracle_generators(const SurfaceData& s, const DivClass& da, Int degree) {
  const LatticeSignature& sig = s.sig;
  DivClass k = canonical_class(sig);
  std::vector<DivClass> out;
  for (const QComponent& qc : s.components)
    out.push_back(qc.cls);
  for_each_in_box(sig, degree, [&](const DivClass& x) {
    Int deg = intersect(x, da);
    if (deg <= 0 || deg > degree)
      return;
    if (chi_line_bundle(x) >= 1 && intersect(k - x, da) < 0)
      out.push_back(x);
    else if (square(x) == -2 && intersect(x, k) == 0 && is_root_effective(s, x).effective)
      out.push_back(x);
  });
  return out;
}

} // namespace

int main() {
  int failed = 0;
  std::mt19937_64 rng(20261015);

  failed += !report(1, "Mukai pairing Serre duality and adjoint involution", [&](Check& c) {
    for (int t = 0; t < 1000; ++t) {
      LatticeSignature sig = random_sig(rng);
      K0Class m = random_k0(rng, sig), n = random_k0(rng, sig);
      c.expect(mukai_pairing(m, n) == mukai_pairing(n, k0_serre_twist(m)), "serre " + k0s(m) + " " + k0s(n));
      c.expect(k0_adjoint(k0_adjoint(m)) == m, "adjoint " + k0s(m));
    }
  });

  failed += !report(2, "commutative F0 against Kunneth", [&](Check& c) {
    SurfaceData s = preset("f0_commutative");
    DivClass sc = DivClass::s(s.sig), f = DivClass::f(s.sig);
    for (Int a = -4; a <= 4; ++a)
      for (Int b = -4; b <= 4; ++b) {
        DivClass d = a * sc + b * f;
        HomDims h = hom_dims(s, DivClass(s.sig), d);
        Kunneth want = kunneth(a, b);
        std::string tag = render_class(d);
        c.expect(h.h0 == want.h0 && h.h1 == want.h1 && h.h2 == want.h2, "hom " + tag);
        c.expect(chi_line_bundle(d) == want.h0 - want.h1 + want.h2, "chi " + tag);
      }
    c.expect(dim_gamma(s, sc + f) == 4, "gamma(s+f)");
  });

  failed += !report(3, "effective and nef cones against brute-force monoid (m <= 3, box 4)", [&](Check& c) {
    for (const std::string& name : small_presets()) {
      SurfaceData s = preset(name);
      DivClass da = oracle_ample_class(name, s);
      c.expect(is_ample(s, da), name + ": reference class not ample");
      MonoidOracle oracle(oracle_generators(s, da, 6), da);
      for_each_in_box(s.sig, 4, [&](const DivClass& d) {
        c.expect(is_effective(s, d).effective == oracle.contains(d), name + " effective " + render_class(d));
        c.expect(is_nef(s, d).nef == oracle.nef(d), name + " nef " + render_class(d));
      });
    }
  });

  failed += !report(4, "nef implies effective, K ineffective, effective implies D.f >= 0", [&](Check& c) {
    const auto& all = presets();
    for (const Preset& p : all)
      c.expect(!is_effective(p.build(), canonical_class(p.build().sig)).effective, "K effective on " + p.name);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    int nef_seen = 0;
    for (int t = 0; t < 1000; ++t) {
      const Preset& p = all[pick(rng)];
      SurfaceData s = p.build();
      DivClass d = random_class(rng, s.sig, 4);
      bool eff = is_effective(s, d).effective;
      if (eff)
        c.expect(intersect(d, DivClass::f(s.sig)) >= 0, p.name + " D.f < 0 for " + render_class(d));
      // nef classes are rare among random ones; push them into the nef cone
      DivClass n = d;
      for (int k = 0; k < 6 && !is_nef(s, n).nef; ++k)
        n = n + anticanonical_class(s.sig) + DivClass::f(s.sig);
      if (is_nef(s, n).nef) {
        ++nef_seen;
        c.expect(is_effective(s, n).effective, p.name + " nef not effective " + render_class(n));
      }
    }
    c.expect(nef_seen >= 100, "too few nef samples: " + std::to_string(nef_seen));
  });

  failed += !report(5, "dp9 torsion: gamma(a l Q) = a + 1", [&](Check& c) {
    for (Int l : {2, 3, 5}) {
      SurfaceData s = preset_dp9_torsion(l);
      DivClass q = anticanonical_class(s.sig);
      for (Int a = 0; a <= 5; ++a)
        c.expect(dim_gamma(s, (a * l) * q) == a + 1, "l=" + std::to_string(l) + " a=" + std::to_string(a));
    }
  });

  failed += !report(6, "blowdown of e_i, f - e_i and the decomposition witness", [&](Check& c) {
    for (int m = 1; m <= 4; ++m) {
      SurfaceData s = preset("f0_generic_m" + std::to_string(m));
      for (int i = 1; i <= m; ++i)
        for (bool fib : {false, true}) {
          DivClass e = DivClass::e(s.sig, i);
          if (fib)
            e = DivClass::f(s.sig) - e;
          std::string tag = "m=" + std::to_string(m) + " " + render_class(e);
          BlowdownResult r = find_blowdown(s, e);
          c.expect(r.status == BlowdownResult::Status::to_em, tag + ": " + r.message);
          DivClass end = replay(e, r.trace.moves);
          c.expect(end == DivClass::e(end.sig, m), tag + " replays to " + render_class(end));
        }
    }
    SurfaceData s = preset("f0_m2_collide");
    BlowdownResult r = find_blowdown(s, DivClass::e(s.sig, 1));
    c.expect(r.status == BlowdownResult::Status::decomposes && r.obstruction, "collide: " + r.message);
  });

  failed += !report(7, "isomonodromy counts and blowup chains", [&](Check& c) {
    for (int g = 1; g <= 3; ++g) {
      SurfaceData s = preset_diff_genus(g);
      c.expect(isomonodromy_count(s) == 3 * g - 3, "g=" + std::to_string(g));
    }
    for (int g = 1; g <= 2; ++g) {
      SurfaceData s = preset_diff_genus(g);
      for (int k = 0; k <= 2; ++k) {
        c.expect(isomonodromy_count(s) == 3 * g - 3 + k, "chain g=" + std::to_string(g) + " step " + std::to_string(k));
        std::vector<Int> mults(s.components.size(), 0);
        mults[0] = 1;
        s = blow_up(s, 0, mults, s.marking.zero());
      }
    }
  });

  failed += !report(8, "moduli dimension formulas", [&](Check& c) {
    for (Int n = 0; n <= 5; ++n)
      for (Int g = 0; g <= 3; ++g)
        c.expect(hilb_dim(n, g) == 2 * n + g, "hilb " + std::to_string(n) + " " + std::to_string(g));
    for (int t = 0; t < 300; ++t) {
      LatticeSignature sig = random_sig(rng);
      DivClass d = random_class(rng, sig, 4);
      Int chi_max = chi_line_bundle(d);
      Int chi = chi_max - std::uniform_int_distribution<Int>(0, 3)(rng);
      Rank1Bound b = rank1_bound(K0Class{1, d, chi});
      std::string tag = k0s(K0Class{1, d, chi});
      c.expect(b.chi_ii <= b.bound, "bound " + tag);
      c.expect((b.chi_ii == b.bound) == (chi == chi_max), "equality " + tag);
      c.expect(b.line_bundle == (chi == chi_max), "line bundle " + tag);
    }
    for (Int l : {2, 3}) {
      SurfaceData s = preset_dp9_torsion(l);
      DivClass q = anticanonical_class(s.sig);
      for (Int r = 1; r <= 3; ++r)
        for (Int d = -2; d <= 2; ++d)
          c.expect(leaf_dim_disjoint(s, K0Class{0, r * q, d}) == 2, "leaf r=" + std::to_string(r));
    }
  });

  failed += !report(9, "operator identities", [&](Check& c) {
    using namespace opcheck;
    auto run = [&](const std::string& id, CaseOptions opt) {
      CaseReport r = run_case(id, opt);
      c.expect(r.equal, id + ": " + r.witness.value_or(""));
      c.expect(r.p_fail_small(), id + ": " + r.p_fail_text());
      return r;
    };
    CaseOptions ten;
    ten.trials = 10;
    CaseReport fr = run("frobenius_power", ten);
    c.expect(fr.checks == 50, "frobenius checks " + std::to_string(fr.checks));
    CaseOptions sym;
    sym.symbolic = true;
    CaseReport mc = run("middle_convolution", sym);
    c.expect(mc.checks == 7 && !mc.randomized, "middle_convolution not exact");
    CaseOptions sizes;
    for (int n : {1, 2}) {
      sizes.size = n;
      run("additive_product", sizes);
    }
    CaseOptions hundred;
    hundred.trials = 100;
    CaseReport sp = run("span4_qdiff", hundred);
    c.expect(sp.checks == 300, "span4 checks " + std::to_string(sp.checks));
    for (const CaseInfo& ci : case_catalog())
      run(ci.id, CaseOptions{});
  });

  failed += !report(10, "order transfer preserves chi and scales c1 products by r^2", [&](Check& c) {
    for (int t = 0; t < 300; ++t) {
      LatticeSignature sig = random_sig(rng);
      K0Class a{0, random_class(rng, sig, 4), std::uniform_int_distribution<Int>(-5, 5)(rng)};
      K0Class b{0, random_class(rng, sig, 4), 0};
      for (Int r = 1; r <= 3; ++r) {
        OrderCenter z{r, canonical_class(sig), chi_structure(sig)};
        K0Class pa = k0_order_transfer(a, TransferDirection::push, z);
        K0Class pb = k0_order_transfer(b, TransferDirection::push, z);
        std::string tag = "r=" + std::to_string(r) + " " + k0s(a);
        c.expect(pa.chi == a.chi, "chi " + tag);
        c.expect(intersect(pa.c1, pb.c1) == r * r * intersect(a.c1, b.c1), "c1 " + tag);
        K0Class back = k0_order_transfer(pa, TransferDirection::pull, z);
        c.expect(back.c1 == r * r * a.c1, "pull " + tag);
      }
    }
  });

  std::printf("%s\n", failed ? "acceptance: some criteria failed" : "acceptance: all criteria passed");
  return failed ? 1 : 0;
}
