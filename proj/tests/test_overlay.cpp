#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace dehn;
using dehn::testing::golden;
using dehn::testing::one_crossing;

namespace {

const Cap kDisk = Cap::plain_disk();

bool mentions(const ValidationReport& r, const std::string& what) {
  for (const auto& v : r.violations)
    if (v.find(what) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Validate, SmallestLegalInstancePasses) {
  SignedOverlay o(1, {Edge{Curve::A, {Port{0, 0}, Port{0, 2}}, 1}, Edge{Curve::B, {Port{0, 1}, Port{0, 3}}, 1}});
  const FaceStructure fs = trace_faces(o);
  CapAssignment caps;
  for (const Face& f : fs.faces) caps[f.id] = kDisk;
  EXPECT_TRUE(validate(o, caps).ok());
}

TEST(Validate, SameCurveOnAdjacentSlotsFailsTransversality) {
  SignedOverlay o(1, {Edge{Curve::A, {Port{0, 0}, Port{0, 1}}, 1}, Edge{Curve::B, {Port{0, 2}, Port{0, 3}}, 1}});
  const ValidationReport r = validate_overlay(o);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "transversality"));
}

TEST(Validate, MissingCapFailsCoverage) {
  SignedOverlay o(1, {Edge{Curve::A, {Port{0, 0}, Port{0, 2}}, -1}, Edge{Curve::B, {Port{0, 1}, Port{0, 3}}, -1}});
  const FaceStructure fs = trace_faces(o);
  ASSERT_EQ(fs.faces.size(), 2u);
  const ValidationReport r = validate(o, {{fs.faces[0].id, kDisk}});
  EXPECT_TRUE(mentions(r, "cap coverage"));
  EXPECT_THROW(Instance(o, {{fs.faces[0].id, kDisk}}), Error);
}

TEST(Validate, DanglingSlotFailsValence) {
  SignedOverlay o(1, {Edge{Curve::A, {Port{0, 0}, Port{0, 2}}, 1}});
  EXPECT_TRUE(mentions(validate_overlay(o), "valence"));
}

TEST(Faces, TorusOverlayIsOneFaceThroughAllFlags) {
  SignedOverlay o(1, {Edge{Curve::A, {Port{0, 0}, Port{0, 2}}, 1}, Edge{Curve::B, {Port{0, 1}, Port{0, 3}}, 1}});
  const FaceStructure fs = trace_faces(o);
  ASSERT_EQ(fs.faces.size(), 1u);
  EXPECT_EQ(fs.faces[0].flags.size(), 8u);
  EXPECT_EQ(fs.faces[0].length(), 4);
  EXPECT_EQ(fs.faces[0].id, 0);
}

TEST(Faces, ZeroCrossingsHaveNoFaces) {
  EXPECT_TRUE(trace_faces(SignedOverlay::free_loops(1, 1)).faces.empty());
}

TEST(Faces, FaceIdIsMinimalFlagAndOrbitsPartitionFlags) {
  for (const Instance& inst : dehn::testing::corpus(3)) {
    if (inst.crossings() == 0) continue;
    const SignedOverlay& o = inst.overlay();
    const FaceStructure& fs = inst.faces();
    std::vector<int> seen(o.flags(), 0);
    for (const Face& f : fs.faces) {
      EXPECT_EQ(f.id, *std::min_element(f.flags.begin(), f.flags.end()));
      for (int flag : f.flags) ++seen[flag];
    }
    for (int s : seen) EXPECT_EQ(s, 1);
  }
}

TEST(Faces, EulerCountMatchesFaceCount) {
  // Plain disks everywhere: chi = V - E + F.
  for (const Instance& inst : dehn::testing::corpus(3)) {
    if (inst.crossings() == 0) continue;
    CapAssignment plain;
    for (const Face& f : inst.faces().faces) plain[f.id] = kDisk;
    const Instance p = inst.with_caps(plain);
    const int m = p.crossings();
    const SurfaceKind k = classify_ambient(p);
    EXPECT_EQ(k.euler(), m - 2 * m + static_cast<int>(p.faces().faces.size()));
  }
}

TEST(Classify, TorusAndKleinBottleFromOneCrossing) {
  const SurfaceKind torus = classify_ambient(one_crossing(1, 1, {kDisk}));
  EXPECT_TRUE(torus.orientable);
  EXPECT_EQ(torus.genus, 1);
  const SurfaceKind klein = classify_ambient(one_crossing(1, -1, {kDisk}));
  EXPECT_FALSE(klein.orientable);
  EXPECT_EQ(klein.genus, 2);
}

TEST(Classify, HandleCapAddsTwoToNonorientableGenus) {
  // V - E + F = 1 - 2 + 2 = 1 with disks; a handle cap lowers chi by 2.
  const SurfaceKind k = classify_ambient(one_crossing(-1, -1, {kDisk, Cap::generic(0, 1, 0, 0)}));
  EXPECT_FALSE(k.orientable);
  EXPECT_EQ(k.euler(), -1);
  EXPECT_EQ(k.genus, 3);
}

TEST(Classify, BraidPairWithAnnuliIsKleinBottleWithTwoHoles) {
  const SurfaceKind k = classify_ambient(golden("braid-annuli.sp"));
  EXPECT_EQ(k, (SurfaceKind{false, 2, 2, 0}));
}

TEST(Classify, CapsContributePuncturesAndBoundaries) {
  const SurfaceKind k = classify_ambient(one_crossing(1, 1, {Cap::generic(0, 0, 3, 2)}));
  EXPECT_EQ(k.punctures, 3);
  EXPECT_EQ(k.boundaries, 2);
  EXPECT_TRUE(k.orientable);
  EXPECT_EQ(k.genus, 1);
}

TEST(Sidedness, SignProductDecides) {
  const Instance torus = one_crossing(1, 1, {kDisk});
  EXPECT_EQ(cycle_sidedness(torus.overlay(), {0}), Sidedness::TwoSided);
  const Instance klein = one_crossing(1, -1, {kDisk});
  EXPECT_EQ(curve_sidedness(klein.overlay(), Curve::A), Sidedness::TwoSided);
  EXPECT_EQ(curve_sidedness(klein.overlay(), Curve::B), Sidedness::OneSided);
  EXPECT_EQ(curve_sidedness(SignedOverlay::free_loops(1, -1), Curve::B), Sidedness::OneSided);
}

TEST(Sidedness, BraidPairSegmentClosuresAreOneSided) {
  const Instance inst = golden("braid.sp");
  const SignedOverlay& o = inst.overlay();
  // Each b edge closed by either a edge.
  for (int b : {2, 3})
    for (int a : {0, 1}) EXPECT_EQ(sign_product(o, {a, b}), -1);
}

TEST(Sidedness, TwistableCurvesAreTwoSided) {
  for (const Instance& inst : dehn::testing::corpus(3))
    EXPECT_EQ(curve_sidedness(inst.overlay(), Curve::A), Sidedness::TwoSided);
}

TEST(Generic, PuncturedKleinComplementIsConnectedAndOrientable) {
  const auto pieces = classify_complement(golden("klein-punct.sp"), Curve::A);
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_TRUE(pieces[0].kind.orientable);
}

TEST(Generic, ExcludedPiecesDecideGenericityOnUnfilteredOverlays) {
  int disk_pieces = 0, twice_punctured = 0;
  for (int m = 1; m <= 2; ++m)
    enumerate_instances(m, EnumerationFilters::none(), [&](const CorpusEntry& e) {
      for (Curve c : {Curve::A, Curve::B}) {
        bool excluded = false;
        for (const ComplementPiece& p : classify_complement(e.instance, c)) {
          excluded = excluded || bounds_excluded_piece(p);
          const bool lone_disk = p.curve_copies == 1 && p.kind.boundaries == 1 && p.kind.orientable && p.kind.genus == 0;
          if (lone_disk && p.kind.punctures == 0) ++disk_pieces;
          if (lone_disk && p.kind.punctures == 2) ++twice_punctured;
        }
        EXPECT_EQ(is_generic(e.instance, c), !excluded);
      }
    });
  EXPECT_GT(disk_pieces, 0);
  EXPECT_GT(twice_punctured, 0);
}

TEST(Generic, ExcludedPieceShapes) {
  // Pieces bounded by one copy of the curve.
  const ComplementPiece disk{SurfaceKind{true, 0, 1, 0}, 1};
  const ComplementPiece once{SurfaceKind{true, 0, 1, 1}, 1};
  const ComplementPiece twice{SurfaceKind{true, 0, 1, 2}, 1};
  const ComplementPiece moebius{SurfaceKind{false, 1, 1, 0}, 1};
  EXPECT_TRUE(bounds_excluded_piece(disk));
  EXPECT_TRUE(bounds_excluded_piece(once));
  EXPECT_FALSE(bounds_excluded_piece(twice));
  EXPECT_TRUE(bounds_excluded_piece(moebius));
}

TEST(Bigon, MinimalCorpusHasNone) {
  for (const Instance& inst : dehn::testing::corpus(3)) EXPECT_FALSE(find_bigon(inst).has_value());
}

TEST(Bigon, PuncturedTwoGonIsNotABigon) {
  SignedOverlay o(2, {Edge{Curve::A, {Port{0, 0}, Port{1, 0}}, 1}, Edge{Curve::A, {Port{0, 2}, Port{1, 2}}, 1},
                      Edge{Curve::B, {Port{0, 1}, Port{1, 3}}, 1}, Edge{Curve::B, {Port{0, 3}, Port{1, 1}}, 1}});
  ASSERT_TRUE(validate_overlay(o).ok());
  const FaceStructure fs = trace_faces(o);
  CapAssignment punctured, plain;
  for (const Face& f : fs.faces) {
    punctured[f.id] = f.length() == 2 ? Cap::punctured_disk(1) : kDisk;
    plain[f.id] = kDisk;
  }
  const bool has_two_gon = std::any_of(fs.faces.begin(), fs.faces.end(), [](const Face& f) { return f.length() == 2; });
  ASSERT_TRUE(has_two_gon);
  EXPECT_FALSE(find_bigon(Instance(o, punctured)).has_value());
  EXPECT_TRUE(find_bigon(Instance(o, plain)).has_value());
}

TEST(Bigon, FingerMoveCreatesBigonAndRemovalUndoesIt) {
  std::mt19937_64 rng(7);
  int tried = 0;
  for (const Instance& inst : dehn::testing::corpus(3)) {
    if (inst.crossings() == 0) continue;
    const auto sites = finger_move_sites(inst);
    for (const auto& [a, b] : sites) {
      const Instance moved = finger_move(inst, a, b);
      ++tried;
      EXPECT_EQ(moved.crossings(), inst.crossings() + 2);
      EXPECT_TRUE(find_bigon(moved).has_value());
      EXPECT_EQ(classify_ambient(moved), classify_ambient(inst));
      const MinimalPosition mp = minimal_position(moved);
      EXPECT_EQ(mp.intersection, inst.crossings());
      EXPECT_EQ(classify_ambient(mp.result), classify_ambient(inst));
    }
  }
  EXPECT_GT(tried, 0);
}

namespace {

const Instance& two_crossing_base_with_sites() {
  for (const Instance& inst : dehn::testing::corpus(2))
    if (inst.crossings() == 2 && !finger_move_sites(inst).empty()) return inst;
  throw Error("no two-crossing corpus instance admits a finger move");
}

}  // namespace

TEST(Bigon, OneFingerMoveIsUndoneByOneRemoval) {
  const Instance& base = two_crossing_base_with_sites();
  const auto sites = finger_move_sites(base);
  ASSERT_FALSE(sites.empty());
  const Instance moved = finger_move(base, sites[0].first, sites[0].second);
  ASSERT_EQ(moved.crossings(), 4);
  const MinimalPosition mp = minimal_position(moved);
  EXPECT_EQ(mp.intersection, 2);
  EXPECT_EQ(mp.removals, 1);
}

TEST(Bigon, ChainedFingerMovesReduceStepwise) {
  std::mt19937_64 rng(11);
  const auto once = perturb(two_crossing_base_with_sites(), 1, rng);
  ASSERT_TRUE(once.has_value());
  ASSERT_EQ(once->crossings(), 4);
  const auto b = find_bigon(*once);
  ASSERT_TRUE(b.has_value());
  const Instance back = remove_bigon(*once, *b).result;
  EXPECT_EQ(back.crossings(), 2);
  EXPECT_FALSE(find_bigon(back).has_value());
  const auto twice = perturb(two_crossing_base_with_sites(), 2, rng);
  ASSERT_TRUE(twice.has_value());
  EXPECT_EQ(twice->crossings(), 6);
  EXPECT_EQ(minimal_position(*twice).intersection, 2);
}

TEST(Bigon, MinimalPositionIsFixedOnMinimalInstances) {
  for (const Instance& inst : dehn::testing::corpus(2)) {
    const MinimalPosition mp = minimal_position(inst);
    EXPECT_EQ(mp.intersection, inst.crossings());
    EXPECT_EQ(mp.removals, 0);
  }
}

TEST(Bigon, RandomOrderAgreesWithCanonicalOrder) {
  std::mt19937_64 rng(3);
  int runs = 0;
  for (const Instance& inst : dehn::testing::corpus(2)) {
    if (inst.crossings() == 0) continue;
    const auto p = perturb(inst, 2, rng);
    if (!p) continue;
    ++runs;
    const int canonical = minimal_position(*p).intersection;
    for (int r = 0; r < 3; ++r) EXPECT_EQ(minimal_position(*p, &rng).intersection, canonical);
  }
  EXPECT_GT(runs, 0);
}

TEST(Relabel, InvariantsSurviveFlipsRotationsAndPermutations) {
  std::mt19937_64 rng(5);
  for (const Instance& inst : dehn::testing::corpus(3)) {
    const int m = inst.crossings();
    if (m == 0) continue;
    const SurfaceKind k = classify_ambient(inst);
    const auto ks = build_gamma(inst).component_sizes;
    const std::size_t nf = inst.faces().faces.size();
    Instance cur = inst;
    const int v = std::uniform_int_distribution<int>(0, m - 1)(rng);
    cur = flip_vertex(cur, v);
    cur = rotate_vertex(cur, v, 2);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> order(cur.overlay().edges().size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    cur = relabel(cur, perm, order);
    EXPECT_EQ(classify_ambient(cur), k);
    EXPECT_EQ(cur.faces().faces.size(), nf);
    EXPECT_EQ(curve_sidedness(cur.overlay(), Curve::B), curve_sidedness(inst.overlay(), Curve::B));
    EXPECT_EQ(is_generic(cur, Curve::B), is_generic(inst, Curve::B));
    EXPECT_FALSE(find_bigon(cur).has_value());
    EXPECT_EQ(build_gamma(normalize_signs(cur)).component_sizes, ks) << serialize(inst);
  }
}

TEST(Relabel, SwapCurvesTwiceIsIdentity) {
  for (const Instance& inst : dehn::testing::corpus(2)) {
    const Instance back = swap_curves(swap_curves(inst));
    EXPECT_EQ(serialize(back), serialize(inst));
  }
}
