#include <gtest/gtest.h>

#include "support.hpp"

using namespace dehn;
using dehn::testing::golden;

namespace {

Instance braid_with_caps(const Cap& first, const Cap& second) {
  const Instance base = golden("braid.sp");
  const auto& faces = base.faces().faces;
  return base.with_caps({{faces[0].id, first}, {faces[1].id, second}});
}

}  // namespace

TEST(SideLabels, BraidPairSegmentsAreOneSidedWithEqualLabels) {
  const SegmentTable t = side_labels(golden("braid.sp"));
  ASSERT_TRUE(t.labelled);
  ASSERT_EQ(t.segments.size(), 2u);
  std::vector<std::string> labels;
  for (const Segment& s : t.segments) {
    EXPECT_EQ(s.sidedness, Sidedness::OneSided);
    labels.push_back({side_letter(s.labels[0]), side_letter(s.labels[1])});
  }
  std::sort(labels.begin(), labels.end());
  EXPECT_EQ(labels, (std::vector<std::string>{"EE", "FF"}));
}

TEST(SideLabels, SingleCrossingSegmentIsTwoSided) {
  const SegmentTable t = side_labels(golden("twist-torus.sp"));
  ASSERT_EQ(t.segments.size(), 1u);
  EXPECT_EQ(t.segments[0].sidedness, Sidedness::TwoSided);
  EXPECT_NE(t.segments[0].labels[0], t.segments[0].labels[1]);
}

TEST(SideLabels, LowestSlotAtFirstCrossingIsE) {
  for (const Instance& inst : dehn::testing::corpus(3)) {
    if (inst.crossings() == 0) continue;
    const SegmentTable t = side_labels(inst);
    const int lowest_b = inst.overlay().curve_at(0) == Curve::B ? 0 : 1;
    EXPECT_EQ(t.label_at(lowest_b), Side::E);
  }
}

TEST(SideLabels, OneSidedBCarriesNoLabels) {
  const SegmentTable t = side_labels(golden("klein-punct.sp"));
  EXPECT_FALSE(t.labelled);
}

TEST(SideLabels, RejectBigonsAndOneSidedA) {
  SignedOverlay o(1, {Edge{Curve::A, {Port{0, 0}, Port{0, 2}}, -1}, Edge{Curve::B, {Port{0, 1}, Port{0, 3}}, 1}});
  const Instance inst(o, {{trace_faces(o).faces[0].id, Cap::plain_disk()}});
  EXPECT_THROW(side_labels(inst), Error);
  EXPECT_THROW(side_labels(Instance(SignedOverlay::free_loops(1, 1), {})), Error);
}

TEST(SideLabels, EqualLabelsExactlyOnOneSidedSegments) {
  for (const Instance& inst : dehn::testing::corpus(3)) {
    if (inst.crossings() == 0) continue;
    const SegmentTable t = side_labels(inst);
    ASSERT_TRUE(t.labelled);
    for (const Segment& s : t.segments)
      EXPECT_EQ(s.labels[0] == s.labels[1], s.sidedness == Sidedness::OneSided) << serialize(inst);
  }
}

TEST(Adjacency, BraidPairHasOneAdjacencyJoiningBothSegments) {
  const Instance inst = golden("braid.sp");
  const SegmentTable t = side_labels(inst);
  const auto adj = find_adjacencies(inst, t);
  ASSERT_EQ(adj.size(), 1u);
  EXPECT_NE(adj[0].first, adj[0].second);
  EXPECT_EQ(adj[0].face_id, inst.faces().faces[0].id);
}

TEST(Adjacency, PuncturedQuadrilateralIsNotAnAdjacencyDisk) {
  const Instance inst = braid_with_caps(Cap::punctured_disk(1), Cap::generic(0, 0, 0, 2));
  EXPECT_TRUE(find_adjacencies(inst, side_labels(inst)).empty());
  EXPECT_EQ(build_gamma(inst).component_sizes, (std::vector<int>{1, 1}));
}

TEST(Gamma, BraidPairIsOneComponentOfSizeTwo) {
  const GammaGraph g = build_gamma(golden("braid.sp"));
  EXPECT_EQ(g.vertices.size(), 2u);
  EXPECT_EQ(g.component_sizes, (std::vector<int>{2}));
  EXPECT_TRUE(g.forest);
  EXPECT_TRUE(g.violations.empty());
}

TEST(Gamma, AnnulusCapsSplitTheBraidPairGraph) {
  EXPECT_EQ(build_gamma(golden("braid-annuli.sp")).component_sizes, (std::vector<int>{1, 1}));
}

TEST(Gamma, SingleCrossingGraphIsEmpty) {
  const GammaGraph g = build_gamma(golden("twist-torus.sp"));
  EXPECT_TRUE(g.vertices.empty());
  EXPECT_TRUE(g.component_sizes.empty());
  EXPECT_EQ(g.sum_squares(), 0);
}

TEST(Gamma, OrientableNeighbourhoodMeansEmptyGraph) {
  int seen = 0;
  for (const Instance& inst : dehn::testing::corpus(3)) {
    if (inst.crossings() == 0) continue;
    const SegmentTable t = side_labels(inst);
    const bool all_two_sided = std::all_of(t.segments.begin(), t.segments.end(),
                                           [](const Segment& s) { return s.sidedness == Sidedness::TwoSided; });
    if (!all_two_sided) continue;
    ++seen;
    EXPECT_TRUE(find_adjacencies(inst, t).empty());
    EXPECT_TRUE(build_gamma(inst, t).component_sizes.empty());
  }
  EXPECT_GT(seen, 0);
}

TEST(Gamma, CorpusInvariantsHold) {
  for (const Instance& inst : dehn::testing::corpus(3)) {
    CheckTally t;
    check_gamma(inst, t);
    EXPECT_TRUE(t.ok()) << (t.ok() ? "" : t.violations.front().what + "\n" + t.violations.front().dump);
  }
}

TEST(Gamma, ComponentSumBoundedByCrossings) {
  for (const Instance& inst : dehn::testing::corpus(3)) {
    if (inst.crossings() == 0) continue;
    const GammaGraph g = build_gamma(inst);
    int sum = 0;
    for (int k : g.component_sizes) sum += k;
    EXPECT_LE(sum, inst.crossings());
    EXPECT_LE(g.sum_squares(), inst.crossings() * inst.crossings());
  }
}

TEST(Gamma, KsTextFormat) {
  EXPECT_EQ(ks_text({}), "[]");
  EXPECT_EQ(ks_text({2}), "[2]");
  EXPECT_EQ(ks_text({1, 1}), "[1,1]");
}
