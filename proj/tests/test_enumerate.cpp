#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "support.hpp"

using namespace dehn;

namespace {

std::vector<CorpusEntry> entries(int m, const EnumerationFilters& f = {}) {
  std::vector<CorpusEntry> out;
  enumerate_instances(m, f, [&](const CorpusEntry& e) { out.push_back(e); });
  return out;
}

}  // namespace

TEST(Enumerate, ZeroCrossingsGivesDisjointLoops) {
  const auto filtered = entries(0);
  ASSERT_EQ(filtered.size(), 1u);
  EXPECT_EQ(filtered[0].instance.crossings(), 0);
  EXPECT_EQ(entries(0, EnumerationFilters::none()).size(), 4u);
}

// Regression counts from the first verified run of the full check suite.
TEST(Enumerate, CountsPerCrossingNumber) {
  EXPECT_EQ(entries(1).size(), 7u);
  EXPECT_EQ(entries(2).size(), 421u);
  EXPECT_EQ(entries(3).size(), 287u);
}

// The menu lists Moebius(0) and Generic(1,0,0,0), which are the same surface.
// Tagging the second with a cap outside the menu must make every entry distinct.
TEST(Enumerate, EntriesAreDistinctUpToRelabelling) {
  const auto& menu = cap_menu();
  const int alias = static_cast<int>(menu.size()) - 2;
  ASSERT_TRUE(menu[alias] == Cap::generic(1, 0, 0, 0));
  for (int m = 1; m <= 3; ++m) {
    std::set<std::string> seen;
    for (const CorpusEntry& e : entries(m)) {
      CapAssignment tagged = e.instance.caps();
      const auto& faces = e.instance.faces().faces;
      for (std::size_t i = 0; i < faces.size(); ++i)
        if (e.cap_choice[i] == alias) tagged[faces[i].id] = Cap::punctured_disk(9);
      const std::string key = serialize(canonical_instance(e.instance.with_caps(tagged)));
      EXPECT_TRUE(seen.insert(key).second) << "duplicate at m=" << m << "\n" << key;
    }
  }
}

TEST(Enumerate, EntriesSatisfyTheFilters) {
  for (int m = 1; m <= 3; ++m)
    for (const CorpusEntry& e : entries(m)) {
      const Instance& inst = e.instance;
      EXPECT_EQ(inst.crossings(), m);
      EXPECT_TRUE(validate(inst.overlay(), inst.caps()).ok()) << serialize(inst);
      EXPECT_FALSE(find_bigon(inst).has_value()) << serialize(inst);
      EXPECT_EQ(curve_sidedness(inst.overlay(), Curve::A), Sidedness::TwoSided);
      EXPECT_EQ(curve_sidedness(inst.overlay(), Curve::B), Sidedness::TwoSided);
      EXPECT_TRUE(is_generic(inst, Curve::A) && is_generic(inst, Curve::B)) << serialize(inst);
    }
}

TEST(Enumerate, UnfilteredIsAStrictSuperset) {
  for (int m = 1; m <= 2; ++m) {
    std::set<std::string> all;
    for (const CorpusEntry& e : entries(m, EnumerationFilters::none()))
      all.insert(serialize(canonical_instance(e.instance)));
    const auto filtered = entries(m);
    EXPECT_GT(all.size(), filtered.size());
    for (const CorpusEntry& e : filtered) EXPECT_TRUE(all.count(serialize(canonical_instance(e.instance))));
  }
}

TEST(Enumerate, CanonicalInstanceIsStableUnderRelabelling) {
  std::mt19937 rng(3);
  for (int m = 2; m <= 3; ++m)
    for (const CorpusEntry& e : entries(m)) {
      const Instance& inst = e.instance;
      const std::string key = serialize(canonical_instance(inst));
      std::vector<int> perm(m), order(inst.overlay().edges().size());
      std::iota(perm.begin(), perm.end(), 0);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::shuffle(order.begin(), order.end(), rng);
      const Instance moved = rotate_vertex(relabel(inst, perm, order), 0, 2);
      EXPECT_EQ(serialize(canonical_instance(moved)), key);
      EXPECT_EQ(serialize(canonical_instance(parse_instance_text(key).instance)), key);
    }
}

TEST(Enumerate, EveryEntryIsRecordedAsEnumerated) {
  for (const CorpusEntry& e : entries(1)) EXPECT_EQ(e.provenance, "enumerated");
}
