#include <gtest/gtest.h>
#include <algorithm>
#include "oracles.hpp"

using namespace ncsurf;
using ncsurf::testing::random_class;

namespace {

std::vector<std::string> names(const std::vector<DivClass>& v) {
  std::vector<std::string> out;
  for (const auto& d : v)
    out.push_back(render_class(d));
  return out;
}

using Strs = std::vector<std::string>;

} // namespace

TEST(SimpleRoots, Examples) {
  auto r = simple_roots(rational_sig(3));
  EXPECT_EQ(names(r.roots), (Strs{"s-f", "f-e1-e2", "e1-e2", "e2-e3"}));
  EXPECT_EQ(names(r.extra), (Strs{"e3"}));
  auto o = simple_roots(rational_sig(1, Parity::odd));
  EXPECT_EQ(names(o.roots), (Strs{"s-e1"}));
  EXPECT_EQ(names(o.extra), (Strs{"e1", "f-e1"}));
  auto g = simple_roots(LatticeSignature{2, 2, Parity::even, 0});
  EXPECT_TRUE(g.roots.empty());
  EXPECT_TRUE(g.extra.empty());
  auto g3 = simple_roots(LatticeSignature{1, 1, Parity::even, 3});
  EXPECT_EQ(names(g3.roots), (Strs{"f-e1-e2", "e1-e2", "e2-e3"}));
}

TEST(SimpleRoots, AreRootsOrthogonalToK) {
  for (int m = 0; m <= 8; ++m)
    for (Parity p : {Parity::even, Parity::odd}) {
      auto sig = rational_sig(m, p);
      auto k = canonical_class(sig);
      for (const auto& a : simple_roots(sig).roots) {
        EXPECT_EQ(square(a), -2);
        EXPECT_EQ(intersect(a, k), 0);
      }
      for (const auto& x : simple_roots(sig).extra) {
        EXPECT_EQ(square(x), -1);
        EXPECT_EQ(intersect(x, k), -1);
      }
    }
}

TEST(Reflect, Examples) {
  auto sig = rational_sig(2);
  auto s = DivClass::s(sig), f = DivClass::f(sig), e1 = DivClass::e(sig, 1), e2 = DivClass::e(sig, 2);
  EXPECT_EQ(reflect(e1, e1 - e2), e2);
  EXPECT_EQ(reflect(s, s - f), f);
  auto k = canonical_class(sig);
  for (const auto& a : simple_roots(sig).roots)
    EXPECT_EQ(reflect(k, a), k);
  EXPECT_THROW(reflect(s, e1), PreconditionError);
}

TEST(Reflect, InvolutiveIsometry) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    std::uniform_int_distribution<int> mm(2, 8);
    auto sig = rational_sig(mm(rng), t % 2 ? Parity::odd : Parity::even);
    auto roots = simple_roots(sig).roots;
    auto a = roots[t % roots.size()];
    // a random root: push a simple root through a few reflections
    for (int k = 0; k < 4; ++k)
      a = reflect(a, roots[(t + 3 * k) % roots.size()]);
    auto d1 = random_class(rng, sig), d2 = random_class(rng, sig);
    EXPECT_EQ(reflect(reflect(d1, a), a), d1);
    EXPECT_EQ(intersect(reflect(d1, a), reflect(d2, a)), intersect(d1, d2));
    EXPECT_EQ(reflect(canonical_class(sig), a), canonical_class(sig));
  }
}

TEST(Elementary, Examples) {
  auto sig = rational_sig(1);
  auto e1 = elementary_transformation(DivClass::e(sig, 1));
  EXPECT_EQ(e1.sig.parity, Parity::odd);
  EXPECT_EQ(render_class(e1), "f-e1");
  EXPECT_EQ(render_class(elementary_transformation(DivClass::f(sig))), "f");
  auto k = elementary_transformation(canonical_class(sig));
  EXPECT_EQ(k, canonical_class(rational_sig(1, Parity::odd)));
  EXPECT_EQ(render_class(k), "-2s-3f+e1");
  EXPECT_THROW(elementary_transformation(DivClass::s(rational_sig(0))), PreconditionError);
}

TEST(Elementary, RoundTripAndIsometry) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 300; ++t) {
    std::uniform_int_distribution<int> mm(1, 8), gg(0, 3);
    int g = gg(rng);
    LatticeSignature sig{g, g, t % 2 ? Parity::odd : Parity::even, mm(rng)};
    auto a = random_class(rng, sig), b = random_class(rng, sig);
    auto ea = elementary_transformation(a), eb = elementary_transformation(b);
    EXPECT_NE(ea.sig.parity, sig.parity);
    EXPECT_EQ(elementary_transformation(ea), a);
    EXPECT_EQ(intersect(ea, eb), intersect(a, b));
    EXPECT_EQ(elementary_transformation(canonical_class(sig)), canonical_class(ea.sig));
  }
}

TEST(Reduce, AlreadyInChamber) {
  auto s = preset("f0_generic_m2");
  auto tr = reduce_to_chamber(s, DivClass::f(s.sig));
  EXPECT_TRUE(tr.moves.empty());
  EXPECT_EQ(tr.status, ReductionStatus::chamber);
  EXPECT_EQ(tr.end, DivClass::f(s.sig));
}

TEST(Reduce, WorkedExample) {
  auto s = preset("f0_generic_m2");
  auto sig = s.sig;
  auto d = 2 * DivClass::s(sig) + 2 * DivClass::f(sig) - 3 * DivClass::e(sig, 1);
  auto tr = reduce_to_chamber(s, d);
  EXPECT_EQ(tr.status, ReductionStatus::chamber);
  EXPECT_EQ(render_class(tr.end), "s+2f-2e1+e2");
  ASSERT_EQ(tr.moves.size(), 2u);
  EXPECT_EQ(render_class(tr.moves[0].cls), "f-e1-e2");
  EXPECT_EQ(render_class(tr.moves[1].cls), "s-f");
  EXPECT_EQ(replay(tr.start, tr.moves), tr.end);
  EXPECT_EQ(tr.surfaces.size(), 2u);
}

TEST(Reduce, BlockedAtEffectiveRoot) {
  auto s = preset("f0_generic_m2");
  s.lambda[3] = s.lambda[2];  // e1 - e2 effective
  auto tr = reduce_to_chamber(s, DivClass::e(s.sig, 1));
  EXPECT_EQ(tr.status, ReductionStatus::blocked);
  ASSERT_TRUE(tr.blocking);
  EXPECT_EQ(render_class(*tr.blocking), "e1-e2");
  EXPECT_EQ(tr.blocking_pairing, -1);
  EXPECT_TRUE(tr.moves.empty());
}

TEST(Reduce, OrderIndependentWhenRootsIneffective) {
  std::mt19937_64 rng(33);
  for (int m = 2; m <= 5; ++m) {
    auto s = preset("f0_generic_m" + std::to_string(std::min(m, 4)));
    if (m == 5)
      s = blow_up(s, 0, {1}, s.marking.zero());
    auto sig = s.sig;
    for (int t = 0; t < 60; ++t) {
      auto d = random_class(rng, sig, 4);
      auto tr = reduce_to_chamber(s, d);
      if (tr.status != ReductionStatus::chamber)
        continue;
      // test-side reducer: reflect at a random violating root until none is left
      auto roots = simple_roots(sig).roots;
      DivClass x = d;
      for (int step = 0; step < 10000; ++step) {
        std::shuffle(roots.begin(), roots.end(), rng);
        auto it = std::find_if(roots.begin(), roots.end(), [&](const DivClass& a) { return intersect(x, a) < 0; });
        if (it == roots.end())
          break;
        x = reflect(x, *it);
      }
      EXPECT_EQ(x, tr.end) << render_class(d);
      EXPECT_EQ(replay(tr.start, tr.moves), tr.end);
    }
  }
}

TEST(Blowdown, Examples) {
  auto s2 = preset("f0_generic_m2");
  auto r = find_blowdown(s2, DivClass::e(s2.sig, 2));
  EXPECT_EQ(r.status, BlowdownResult::Status::to_em);
  EXPECT_TRUE(r.trace.moves.empty());

  auto s1 = preset("f0_generic_m1");
  auto fe = DivClass::f(s1.sig) - DivClass::e(s1.sig, 1);
  r = find_blowdown(s1, fe);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.trace.moves.size(), 1u);
  EXPECT_EQ(r.trace.moves[0].kind, Move::Kind::elementary);
  EXPECT_EQ(r.trace.end, DivClass::e(rational_sig(1, Parity::odd), 1));
  EXPECT_EQ(replay(fe, r.trace.moves), r.trace.end);

  auto c = preset("f0_m2_collide");
  r = find_blowdown(c, DivClass::e(c.sig, 1));
  EXPECT_EQ(r.status, BlowdownResult::Status::decomposes);
  EXPECT_EQ(render_class(*r.obstruction), "e1-e2");
  EXPECT_EQ(r.message, "class decomposes: e1 = (e1-e2) + (e2)");
}

TEST(Blowdown, PlaneTerminal) {
  auto s = preset("f1_generic");
  auto r = find_blowdown(s, DivClass::s(s.sig));
  EXPECT_EQ(r.status, BlowdownResult::Status::plane);
  EXPECT_THROW(find_blowdown(s, DivClass::f(s.sig)), PreconditionError);
}

TEST(Blowdown, ComponentObstruction) {
  // blowing up twice at one point makes e1 - e2 a component of Q
  auto s0 = preset("diff_g1");
  auto s1 = blow_up(s0, 0, {1}, s0.marking.zero());  // Q = 2(s-e1) + e1
  auto s2 = blow_up(s1, 1, {0, 1}, s0.marking.zero());  // Q = 2(s-e1) + (e1-e2) + 0 e2
  ASSERT_TRUE(validate(s2).empty());
  auto r = find_blowdown(s2, DivClass::e(s2.sig, 1));
  EXPECT_EQ(r.status, BlowdownResult::Status::decomposes);
  EXPECT_EQ(render_class(*r.obstruction), "e1-e2");
}

TEST(Blowdown, GenericPresetsAllSucceed) {
  for (int m = 1; m <= 4; ++m) {
    auto s = preset("f0_generic_m" + std::to_string(m));
    for (int i = 1; i <= m; ++i)
      for (DivClass e : {DivClass::e(s.sig, i), DivClass::f(s.sig) - DivClass::e(s.sig, i)}) {
        auto r = find_blowdown(s, e);
        ASSERT_EQ(r.status, BlowdownResult::Status::to_em) << render_class(e);
        EXPECT_EQ(replay(e, r.trace.moves), r.trace.end);
        EXPECT_EQ(r.trace.end, DivClass::e(r.trace.end.sig, m));
        // every intermediate surface still sees an irreducible class
        DivClass x = e;
        for (size_t k = 0; k < r.trace.moves.size(); ++k) {
          x = apply_move(x, r.trace.moves[k]);
          EXPECT_TRUE(find_blowdown(r.trace.surfaces[k], x).ok());
        }
        EXPECT_TRUE(is_neg1_irreducible(s, e));
      }
  }
}

TEST(Orbit, Example) {
  auto sig = rational_sig(2);
  auto da = DivClass::s(sig) + DivClass::f(sig);
  auto orb = enumerate_orbit(sig, DivClass::e(sig, 2), da, 1);
  std::set<std::string> got;
  for (const auto& d : orb)
    got.insert(render_class(d));
  EXPECT_EQ(got, (std::set<std::string>{"e1", "e2", "f-e1", "f-e2", "s-e1", "s-e2"}));
}

TEST(Orbit, TrivialCases) {
  auto sig = rational_sig(2);
  auto da = 3 * DivClass::s(sig) + 3 * DivClass::f(sig) - DivClass::e(sig, 1) - DivClass::e(sig, 2);
  EXPECT_TRUE(enumerate_orbit(sig, DivClass::e(sig, 2), da, 0).empty());
  auto one = enumerate_orbit(sig, DivClass::e(sig, 2), da, 1);
  EXPECT_EQ(one.size(), 2u);  // e1, e2
  auto s0 = rational_sig(0, Parity::odd);
  auto orb = enumerate_orbit(s0, DivClass::s(s0), 2 * DivClass::s(s0) + 3 * DivClass::f(s0), 10);
  EXPECT_EQ(orb, (std::set<DivClass>{DivClass::s(s0)}));
  EXPECT_THROW(enumerate_orbit(sig, DivClass::e(sig, 2), DivClass::f(sig), 3), PreconditionError);
}

TEST(Orbit, MatchesBruteForce) {
  for (int m = 2; m <= 4; ++m) {
    auto sig = rational_sig(m);
    auto k = canonical_class(sig);
    DivClass da = 3 * DivClass::s(sig) + 3 * DivClass::f(sig);
    for (int i = 1; i <= m; ++i)
      da -= DivClass::e(sig, i);
    const Int bound = 3, box = 4;
    std::set<DivClass> brute;
    std::vector<Int> c(sig.rank(), -box);
    while (true) {
      DivClass x(sig, c);
      if (square(x) == -1 && intersect(x, k) == -1 && intersect(x, da) <= bound)
        brute.insert(x);
      size_t j = 0;
      while (j < c.size() && c[j] == box)
        c[j++] = -box;
      if (j == c.size())
        break;
      ++c[j];
    }
    auto orb = enumerate_orbit(sig, DivClass::e(sig, m), da, bound);
    EXPECT_EQ(orb, brute) << "m=" << m;
    for (const auto& x : orb) {
      EXPECT_EQ(square(x), -1);
      EXPECT_EQ(intersect(x, k), -1);
    }
  }
}

TEST(Orbit, PreservesInvariantsUpToM8) {
  for (int m = 5; m <= 8; ++m) {
    auto sig = rational_sig(m);
    auto k = canonical_class(sig);
    DivClass da = 4 * DivClass::s(sig) + 4 * DivClass::f(sig);
    for (int i = 1; i <= m; ++i)
      da -= DivClass::e(sig, i);
    for (const auto& x : enumerate_orbit(sig, DivClass::e(sig, m), da, 4)) {
      EXPECT_EQ(square(x), -1);
      EXPECT_EQ(intersect(x, k), -1);
      EXPECT_GT(intersect(x, da), 0);
    }
  }
}
