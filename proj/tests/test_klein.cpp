#include <gtest/gtest.h>

#include <random>

#include "dehn/klein.hpp"
#include "support.hpp"

using namespace dehn;

namespace {

std::vector<KPunct> punct_box(long radius) {
  std::vector<KPunct> out;
  for (long n = -radius; n <= radius; ++n)
    for (int e : {0, 1})
      for (int d : {0, 1}) out.push_back({n, e, d});
  return out;
}

std::vector<KHole> hole_box(long radius) {
  std::vector<KHole> out;
  for (long n = -radius; n <= radius; ++n)
    for (long k = -radius; k <= radius; ++k) out.push_back({n, k});
  return out;
}

// Membership in the subgroup generated by commuting generators, by searching
// exponent vectors in [-bound, bound].
template <class G>
bool in_abelian_span(const G& x, const std::vector<G>& gens, long bound) {
  std::vector<long> exps(gens.size(), -bound);
  while (true) {
    G acc = G::identity();
    for (std::size_t i = 0; i < gens.size(); ++i) acc = acc * power(gens[i], exps[i]);
    if (acc == x) return true;
    std::size_t i = 0;
    while (i < exps.size() && exps[i] == bound) exps[i++] = -bound;
    if (i == exps.size()) return false;
    ++exps[i];
  }
}

template <class G>
void expect_pairwise_commuting(const std::vector<G>& gens) {
  for (const G& x : gens)
    for (const G& y : gens) EXPECT_TRUE(commute(x, y)) << x.str() << " " << y.str();
}

}  // namespace

TEST(KleinGroups, PunctAxiomsOnRandomTriples) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<int> bit(0, 1);
  auto draw = [&] { return KPunct{num(rng), bit(rng), bit(rng)}; };
  for (int i = 0; i < 1000; ++i) {
    const KPunct x = draw(), y = draw(), z = draw();
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * KPunct::identity(), x);
    EXPECT_EQ(KPunct::identity() * x, x);
    EXPECT_EQ(x * x.inverse(), KPunct::identity());
    EXPECT_EQ(x.inverse() * x, KPunct::identity());
  }
}

TEST(KleinGroups, HoleAxiomsOnRandomTriples) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-50, 50);
  auto draw = [&] { return KHole{num(rng), num(rng)}; };
  for (int i = 0; i < 1000; ++i) {
    const KHole x = draw(), y = draw(), z = draw();
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * KHole::identity(), x);
    EXPECT_EQ(x * x.inverse(), KHole::identity());
    EXPECT_EQ(x.inverse() * x, KHole::identity());
  }
}

TEST(KleinGroups, PunctRelations) {
  const KPunct t = KPunct::twist(), v = KPunct::v(), s = KPunct::sigma();
  EXPECT_EQ(v * v, KPunct::identity());
  EXPECT_EQ(s * s, KPunct::identity());
  EXPECT_EQ(v * t * v.inverse(), t.inverse());
  for (const KPunct& g : KPunct::generators()) EXPECT_TRUE(commute(s, g));
  EXPECT_FALSE(commute(v, t));
  EXPECT_EQ((KPunct{1, 1, 0} * KPunct{1, 0, 0}), (KPunct{0, 1, 0}));
}

TEST(KleinGroups, HoleRelations) {
  const KHole t = KHole::twist(), w = KHole::sigma_v();
  EXPECT_EQ(w * t * w.inverse(), t.inverse());
  EXPECT_EQ(w * w, KHole::boundary_twist());
  EXPECT_EQ((KHole{0, 1} * KHole{1, 0} * KHole{0, -1}), (KHole{-1, 0}));
  for (const KHole& g : KHole::generators()) EXPECT_TRUE(commute(KHole::boundary_twist(), g));
}

TEST(KleinGroups, Orders) {
  EXPECT_EQ(element_order(KPunct::sigma()), 2);
  EXPECT_EQ(element_order(KPunct::v()), 2);
  EXPECT_EQ(element_order(KPunct::twist()), 0);
  EXPECT_EQ(element_order(KHole::twist()), 0);
  EXPECT_EQ(element_order(KHole::sigma_v()), 0);
  EXPECT_EQ(element_order(KHole::boundary_twist()), 0);
  EXPECT_EQ(element_order(KPunct::identity()), 1);
}

TEST(KleinGroups, TwistHasInfiniteOrder) {
  KPunct p = KPunct::identity();
  KHole h = KHole::identity();
  for (long i = 1; i <= 1000000; ++i) {
    p = p * KPunct::twist();
    h = h * KHole::twist();
    ASSERT_NE(p, KPunct::identity()) << i;
    ASSERT_NE(h, KHole::identity()) << i;
  }
  EXPECT_EQ(power(KPunct::twist(), 1000000), (KPunct{1000000, 0, 0}));
}

TEST(KleinGroups, CenterValues) {
  EXPECT_EQ(generator_list(punct_center()), "[(0,0,1)]");
  EXPECT_EQ(generator_list(hole_center()), "[(0,2)]");
  EXPECT_EQ(generator_list(punct_twist_centralizer()), "[(1,0,0),(0,0,1)]");
  EXPECT_EQ(generator_list(hole_twist_centralizer()), "[(1,0),(0,2)]");
}

TEST(KleinGroups, PunctCenterMatchesBruteForce) {
  const auto center_gens = punct_center();
  const auto cent_gens = punct_twist_centralizer();
  expect_pairwise_commuting(center_gens);
  expect_pairwise_commuting(cent_gens);
  for (const KPunct& x : punct_box(12)) {
    bool central = true;
    for (const KPunct& g : KPunct::generators()) central = central && commute(x, g);
    EXPECT_EQ(central, in_abelian_span(x, center_gens, 2)) << x.str();
    EXPECT_EQ(commute(x, KPunct::twist()), in_abelian_span(x, cent_gens, 12)) << x.str();
  }
}

TEST(KleinGroups, HoleCenterMatchesBruteForce) {
  const auto center_gens = hole_center();
  const auto cent_gens = hole_twist_centralizer();
  expect_pairwise_commuting(cent_gens);
  for (const KHole& x : hole_box(8)) {
    bool central = true;
    for (const KHole& g : KHole::generators()) central = central && commute(x, g);
    EXPECT_EQ(central, in_abelian_span(x, center_gens, 8)) << x.str();
    EXPECT_EQ(commute(x, KHole::twist()), in_abelian_span(x, cent_gens, 8)) << x.str();
  }
}

TEST(KleinGroups, CenterLiesInTwistCentralizer) {
  for (const KPunct& z : punct_center()) EXPECT_TRUE(commute(z, KPunct::twist()));
  for (const KHole& z : hole_center()) EXPECT_TRUE(commute(z, KHole::twist()));
}

TEST(KleinGroups, IntegerSolutions) {
  IntegerSolutions s;
  EXPECT_TRUE(s.all);
  s.add(0, 0);
  EXPECT_TRUE(s.all);
  s.add(2, 6);
  EXPECT_FALSE(s.all);
  EXPECT_EQ(s.representative(), 3);
  s.add(1, 3);
  EXPECT_FALSE(s.empty);
  s.add(1, 4);
  EXPECT_TRUE(s.empty);
  IntegerSolutions odd;
  odd.add(2, 1);
  EXPECT_TRUE(odd.empty);
  IntegerSolutions never;
  never.add(0, 5);
  EXPECT_TRUE(never.empty);
}

TEST(KleinGroups, ParseElements) {
  EXPECT_EQ(parse_punct("(1,0,1)"), (KPunct{1, 0, 1}));
  EXPECT_EQ(parse_punct("-3,1,0"), (KPunct{-3, 1, 0}));
  EXPECT_EQ(parse_hole("(2,-5)"), (KHole{2, -5}));
  EXPECT_THROW(parse_punct("(1,2,0)"), Error);
  EXPECT_THROW(parse_punct("(1,0)"), Error);
  EXPECT_THROW(parse_hole("(a,1)"), Error);
}

TEST(KleinCurves, RecordedFactsHold) {
  const auto facts = klein_curve_facts();
  EXPECT_GE(facts.size(), 5u);
  for (const FactCheck& f : facts) EXPECT_TRUE(f.ok) << f.name << ": " << f.detail;
}

TEST(KleinCurves, PuncturedKleinPairCrossesOnce) {
  const Instance inst = dehn::testing::golden("klein-punct.sp");
  EXPECT_EQ(inst.crossings(), 1);
  EXPECT_EQ(curve_sidedness(inst.overlay(), Curve::A), Sidedness::TwoSided);
  EXPECT_EQ(curve_sidedness(inst.overlay(), Curve::B), Sidedness::OneSided);
  EXPECT_EQ(classify_ambient(inst), (SurfaceKind{false, 2, 0, 1}));
}
