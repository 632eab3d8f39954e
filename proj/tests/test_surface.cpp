#include <gtest/gtest.h>
#include "oracles.hpp"

using namespace ncsurf;

namespace {

bool has_violation(const SurfaceData& s, const std::string& needle) {
  for (const auto& v : validate(s))
    if (v.find(needle) != std::string::npos)
      return true;
  return false;
}

DivClass e(const SurfaceData& s, int i) { return DivClass::e(s.sig, i); }

} // namespace

TEST(Validate, PresetsAreValid) {
  for (const Preset& p : presets())
    EXPECT_TRUE(validate(p.build()).empty()) << p.name;
  auto s = preset("f0_generic");
  ASSERT_EQ(s.components.size(), 1u);
  EXPECT_EQ(render_class(s.components[0].cls), "2s+2f");
}

TEST(Validate, AnticanonicalSum) {
  auto s = preset("f0_generic");
  s.components[0].cls += DivClass::f(s.sig);
  EXPECT_TRUE(has_violation(s, "anticanonical sum"));
}

TEST(Validate, FiberDegree) {
  auto s = preset("f0_generic");
  auto sig = s.sig;
  // 3s+2f has fiber degree 3; pair it with -s to keep the sum closed
  s.components = {{3 * DivClass::s(sig) + 2 * DivClass::f(sig), 1}, {-DivClass::s(sig), 1}};
  EXPECT_TRUE(has_violation(s, "component fiber degree"));
  EXPECT_FALSE(has_violation(s, "anticanonical sum"));
}

TEST(Validate, NeverThrowsOnShapeErrors) {
  auto s = preset("f0_generic");
  s.lambda.pop_back();
  s.q.push_back(0);
  std::vector<std::string> bad;
  EXPECT_NO_THROW(bad = validate(s));
  EXPECT_TRUE(has_violation(s, "lambda"));
  EXPECT_TRUE(has_violation(s, "q: wrong length"));
  EXPECT_THROW(require_valid(s), InputError);
}

TEST(OrdQ, Examples) {
  auto s = preset("f0_generic");
  s.marking = MarkingGroup{1, {5}};
  s.lambda.assign(2, s.marking.zero());
  s.q = {0, 2};
  EXPECT_EQ(ord_q(s), 5);
  s.q = {1, 0};
  EXPECT_EQ(ord_q(s), std::nullopt);
  s.q = {0, 0};
  EXPECT_EQ(ord_q(s), 1);
}

TEST(RootEffective, EqualMarkedPoints) {
  auto s = preset("f0_generic_m2");
  s.lambda[3] = s.lambda[2];
  auto r = is_root_effective(s, e(s, 1) - e(s, 2));
  ASSERT_TRUE(r.effective);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->a0, 0);
}

TEST(RootEffective, SMinusFPowerOfQ) {
  auto s = preset("f0_generic");
  auto sf = DivClass::s(s.sig) - DivClass::f(s.sig);
  EXPECT_FALSE(is_root_effective(s, sf).effective);
  s.lambda[0] = s.marking.add(s.lambda[1], s.marking.scale(3, s.q));
  auto r = is_root_effective(s, sf);
  ASSERT_TRUE(r.effective);
  EXPECT_EQ(r.witness->a0, 3);
}

TEST(RootEffective, Precondition) {
  auto s = preset("f0_generic_m2");
  EXPECT_THROW(is_root_effective(s, e(s, 1)), PreconditionError);
  // square -2 but K-degree nonzero
  EXPECT_THROW(is_root_effective(s, e(s, 1) + e(s, 2)), PreconditionError);
}

TEST(RootEffective, CommutativeDistinctPointsIneffective) {
  auto s = preset("f0_generic_m3");
  s.q = s.marking.zero();
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j)
        EXPECT_FALSE(is_root_effective(s, e(s, i) - e(s, j)).effective);
}

TEST(RootEffective, InvariantUnderComponentPermutation) {
  auto s = preset("pvi_m12");
  auto t = s;
  std::reverse(t.components.begin(), t.components.end());
  std::vector<DivClass> roots = simple_roots(s.sig).roots;
  for (int i = 1; i <= 12; ++i)
    for (int j = i + 1; j <= 12; ++j) {
      roots.push_back(e(s, i) - e(s, j));
      roots.push_back(DivClass::f(s.sig) - e(s, i) - e(s, j));
    }
  for (const auto& a : roots)
    EXPECT_EQ(is_root_effective(s, a).effective, is_root_effective(t, a).effective) << render_class(a);
  // the vertical double component f - e1 - e2 and e1 - e3 are components
  EXPECT_TRUE(is_root_effective(s, DivClass::f(s.sig) - e(s, 1) - e(s, 2)).effective);
  EXPECT_TRUE(is_root_effective(s, e(s, 1) - e(s, 3)).effective);
}

TEST(NegOne, GenericClassesIrreducible) {
  auto s = preset("f0_generic_m2");
  EXPECT_TRUE(is_neg1_effective(s, e(s, 2)));
  EXPECT_TRUE(is_neg1_irreducible(s, e(s, 2)));
  auto f1 = DivClass::f(s.sig) - e(s, 1);
  EXPECT_TRUE(is_neg1_effective(s, f1));
  EXPECT_TRUE(is_neg1_irreducible(s, f1));
}

TEST(NegOne, CollidingPointsReducible) {
  auto s = preset("f0_m2_collide");
  EXPECT_TRUE(is_neg1_effective(s, e(s, 1)));
  EXPECT_FALSE(is_neg1_irreducible(s, e(s, 1)));
  EXPECT_TRUE(is_neg1_irreducible(s, e(s, 2)));
}

TEST(NegOne, Precondition) {
  auto s = preset("f0_generic_m2");
  EXPECT_THROW(is_neg1_effective(s, DivClass::s(s.sig)), PreconditionError);
}

TEST(BlowUp, DoubleComponent) {
  auto s = preset("diff_g1");
  auto t = blow_up(s, 0, {1}, s.marking.zero());
  ASSERT_EQ(t.components.size(), 2u);
  EXPECT_EQ(t.components[0].cls, DivClass::s(t.sig) - e(t, 1));
  EXPECT_EQ(t.components[0].mult, 2);
  EXPECT_EQ(t.components[1].cls, e(t, 1));
  EXPECT_EQ(t.components[1].mult, 1);
  EXPECT_TRUE(validate(t).empty());
}

TEST(BlowUp, SmoothPoint) {
  auto s = preset("f0_generic");
  auto t = blow_up(s, 0, {1}, s.marking.zero());
  ASSERT_EQ(t.components.size(), 1u);
  EXPECT_EQ(render_class(t.components[0].cls), "2s+2f-e1");
  EXPECT_EQ(t.components[0].mult, 1);
  EXPECT_EQ(t.lambda.back(), s.marking.zero());
}

TEST(BlowUp, Errors) {
  auto s = preset("f0_generic");
  EXPECT_THROW(blow_up(s, 1, {1}, s.marking.zero()), InputError);
  EXPECT_THROW(blow_up(s, -1, {1}, s.marking.zero()), InputError);
  EXPECT_THROW(blow_up(s, 0, {0}, s.marking.zero()), PreconditionError);
  EXPECT_THROW(blow_up(s, 0, {1, 0}, s.marking.zero()), InputError);
}

TEST(BlowUp, AlwaysValidAndInvertible) {
  std::mt19937_64 rng(21);
  for (const char* name : {"f0_generic", "f0_generic_m2", "pvi_m12", "diff_g2", "f1_generic", "dp9_torsion"}) {
    auto s = preset(name);
    for (int t = 0; t < 20; ++t) {
      std::uniform_int_distribution<int> pick(0, (int) s.components.size() - 1), lm(0, 2);
      int c = pick(rng);
      std::vector<Int> mults(s.components.size());
      for (auto& x : mults)
        x = lm(rng);
      mults[c] = std::max<Int>(mults[c], 1);
      auto b = blow_up(s, c, mults, s.lambda[0]);
      EXPECT_TRUE(validate(b).empty()) << name;
      EXPECT_EQ(b.sig.m, s.sig.m + 1);
      auto d = blow_down_last(b);
      EXPECT_TRUE(validate(d).empty());
      EXPECT_EQ(d.sig, s.sig);
      EXPECT_EQ(d.lambda, s.lambda);
    }
  }
}

TEST(TransformSurface, ReflectionKeepsValidity) {
  auto s = preset("pvi_m12");
  for (const auto& a : simple_roots(s.sig).roots) {
    auto t = transform_surface(s, reflection_change(a));
    EXPECT_TRUE(validate(t).empty());
    // marking of a class is carried along
    auto d = DivClass::s(s.sig) + 2 * e(s, 3);
    EXPECT_EQ(t.lambda_of(reflect(d, a)), s.lambda_of(d));
  }
}

TEST(Isomonodromy, DifferentialPresets) {
  EXPECT_EQ(isomonodromy_count(preset("diff_g1")), 0);
  EXPECT_EQ(isomonodromy_count(preset("diff_g2")), 3);
  EXPECT_EQ(isomonodromy_count(preset("diff_g3")), 6);
}

TEST(Isomonodromy, BlowupChain) {
  for (int g = 1; g <= 2; ++g) {
    auto s = preset_diff_genus(g);
    Int base = 3 * g - 3;
    for (int k = 0; k <= 2; ++k) {
      EXPECT_EQ(isomonodromy_count(s), base + k) << "g=" << g << " step " << k;
      std::vector<Int> mults(s.components.size(), 0);
      mults[0] = 1;  // smooth point of the reduced curve on the double component
      s = blow_up(s, 0, mults, s.marking.zero());
    }
  }
}

TEST(Isomonodromy, Invariances) {
  auto s = preset("pvi_m12");
  Int n = isomonodromy_count(s);
  auto t = s;
  std::reverse(t.components.begin(), t.components.end());
  EXPECT_EQ(isomonodromy_count(t), n);
  // a simple blowup on a reduced component leaves the nonreduced part alone
  std::vector<Int> mults(s.components.size(), 0);
  mults[0] = 1;
  EXPECT_EQ(isomonodromy_count(blow_up(s, 0, mults, s.marking.zero())), n);
}

TEST(ModuliStack, Formula) {
  EXPECT_EQ(moduli_stack_dim(0, 5), 8);
  EXPECT_EQ(moduli_stack_dim(1, 0), 1);
  EXPECT_EQ(moduli_stack_dim(3, 2), 6);
  EXPECT_THROW(moduli_stack_dim(-1, 0), PreconditionError);
}
