#pragma once

// Powers of a twist about curve A applied to curve B: the closed formula, an
// explicit construction of the twisted curve against B, and its reduction.

#include <cstdlib>

#include "dehn/gamma.hpp"

namespace dehn {

inline long formula_intersection(int m, int n, const std::vector<int>& ks) {
  if (n == 0) throw Error("twist exponent must be nonzero");
  long sum = 0, squares = 0;
  for (int k : ks) {
    if (k < 1) throw Error("component sizes must be positive");
    sum += k;
    squares += static_cast<long>(k) * k;
  }
  if (sum > m) throw Error("component sizes exceed the intersection number");
  return static_cast<long>(std::abs(n)) * m * m - squares;
}

// Curve A of `instance` is the twisted copy of B, curve B is B itself.
// Crossings are tagged by (strand, fiber): the base crossing whose pushed-off
// B arc the strand follows, and the base crossing whose B arc is crossed.
struct TwistedOverlay {
  Instance instance;
  std::vector<std::pair<int, int>> tags;
  std::vector<std::vector<int>> trails;  // per edge: base B-edges it runs beside outside the A band
  int base_crossings = 0;
  int exponent = 0;
};

namespace detail {

inline bool base_curves_twistable(const Instance& base, std::string* why) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  const SignedOverlay& o = base.overlay();
  if (o.crossings() == 0) return fail("curves are disjoint");
  if (curve_sidedness(o, Curve::A) != Sidedness::TwoSided) return fail("curve a is one-sided");
  if (curve_sidedness(o, Curve::B) != Sidedness::TwoSided) return fail("curve b is one-sided");
  if (find_bigon(base)) return fail("base pair is not in minimal position");
  return true;
}

}  // namespace detail

namespace detail {

// Curves drawn in the band around A: one fiber (arc of B) and one strand
// (arc of the twisted copy) per base crossing, optionally with the core A.
// Crossings 0..hits-1 are strand/fiber crossings in both variants; with the
// core, fiber j meets it at hits + j and strand i at hits + m + i.
struct BandDrawing {
  SignedOverlay overlay;
  std::vector<std::vector<int>> on_strand, on_fiber;  // crossings in order of increasing height
  std::vector<std::vector<int>> trails;
  int b_up = 1;
  int hits = 0;

  int up_slot(int crossing, bool fiber) const { return crossing < hits ? (fiber ? b_up : 0) : 1; }
};

inline BandDrawing draw_band(const SignedOverlay& base, const SegmentTable& table, int turns, int dir, bool with_core) {
  const int m = base.crossings();
  const auto& pos = table.a_order;
  const auto& mu = table.frame;
  const int circumference = 4 * m;
  const int length = circumference * turns;  // strands run for parameter T in (0, length)
  struct Hit {
    int strand, fiber, time;
  };
  std::vector<Hit> hits;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int offset = 4 * pos[i] + table.pushoff[i];
      const int r = (((4 * pos[j] - offset) * dir) % circumference + circumference) % circumference;
      for (int q = 0; q < turns; ++q) hits.push_back({i, j, r + q * circumference});
    }
  std::sort(hits.begin(), hits.end(),
            [](const Hit& x, const Hit& y) { return std::tie(x.strand, x.time) < std::tie(y.strand, y.time); });
  const int nh = static_cast<int>(hits.size());

  BandDrawing d;
  d.b_up = dir > 0 ? 1 : 3;
  d.hits = nh;
  d.on_strand.assign(m, {});
  d.on_fiber.assign(m, {});
  std::vector<int> time(nh + (with_core ? 2 * m : 0), 0);
  for (int x = 0; x < nh; ++x) {
    d.on_strand[hits[x].strand].push_back(x);
    d.on_fiber[hits[x].fiber].push_back(x);
    time[x] = hits[x].time;
  }
  // The core sits at half height; strand times there are even, hit times odd.
  std::vector<std::pair<int, int>> core;  // (position along the band, crossing)
  if (with_core)
    for (int i = 0; i < m; ++i) {
      d.on_fiber[i].push_back(nh + i);
      time[nh + i] = length / 2;
      core.push_back({4 * pos[i], nh + i});
      d.on_strand[i].push_back(nh + m + i);
      time[nh + m + i] = length / 2;
      const int x = ((4 * pos[i] + table.pushoff[i] + dir * (length / 2)) % circumference + circumference) % circumference;
      core.push_back({x, nh + m + i});
    }
  for (auto* lists : {&d.on_fiber, &d.on_strand})
    for (auto& l : *lists) std::sort(l.begin(), l.end(), [&](int x, int y) { return time[x] < time[y]; });

  // Slots: at strand/fiber crossings the strand leaves on 0 and the fiber
  // climbs on b_up; at core crossings the core leaves on 0 and the other
  // curve climbs on 1.
  auto up_slot = [&](int x, bool fiber) { return d.up_slot(x, fiber); };
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    const auto& s = d.on_strand[i];
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      edges.push_back(Edge{Curve::A, {Port{s[k], up_slot(s[k], false)}, Port{s[k + 1], slot_add(up_slot(s[k + 1], false), 2)}}, 1});
      d.trails.emplace_back();
    }
    const auto& f = d.on_fiber[i];
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
      edges.push_back(Edge{Curve::B, {Port{f[k], up_slot(f[k], true)}, Port{f[k + 1], slot_add(up_slot(f[k + 1], true), 2)}}, 1});
      d.trails.emplace_back();
    }
  }
  auto end_port = [&](const std::vector<int>& l, bool fiber, bool top) {
    return top ? Port{l.back(), up_slot(l.back(), fiber)} : Port{l.front(), slot_add(up_slot(l.front(), fiber), 2)};
  };
  for (int e = 0; e < static_cast<int>(base.edges().size()); ++e) {
    const Edge& ed = base.edge(e);
    if (ed.curve != Curve::B) continue;
    const int i = ed.ends[0].crossing, k = ed.ends[1].crossing;
    const bool top_i = table.is_top(ed.ends[0].halfedge()), top_k = table.is_top(ed.ends[1].halfedge());
    const int sign = mu[i] * ed.sign * mu[k];
    edges.push_back(Edge{Curve::B, {end_port(d.on_fiber[i], true, top_i), end_port(d.on_fiber[k], true, top_k)}, sign});
    d.trails.push_back({e});
    edges.push_back(Edge{Curve::A, {end_port(d.on_strand[i], false, top_i), end_port(d.on_strand[k], false, top_k)}, sign});
    d.trails.push_back({e});
  }
  if (with_core) {
    std::sort(core.begin(), core.end());
    for (std::size_t k = 0; k < core.size(); ++k)
      edges.push_back(Edge{Curve::C, {Port{core[k].second, 0}, Port{core[(k + 1) % core.size()].second, 2}}, 1});
  }
  d.overlay = SignedOverlay(static_cast<int>(time.size()), std::move(edges));
  return d;
}

}  // namespace detail

inline TwistedOverlay construct_twisted_overlay(const Instance& base, int n, bool flip_orientation = false) {
  if (n == 0) throw Error("twist exponent must be nonzero");
  std::string why;
  if (!detail::base_curves_twistable(base, &why)) throw Error(why);
  const SignedOverlay& o = base.overlay();
  const int m = o.crossings();
  const int dir = (flip_orientation ? -n : n) > 0 ? 1 : -1;
  const SegmentTable table = side_labels(base);
  const auto& mu = table.frame;

  // First the band with its core still drawn (as the third curve). Faces
  // there are disks except the collars of the base faces.
  detail::BandDrawing full = detail::draw_band(o, table, std::abs(n), dir, true);
  auto full_faces = std::make_shared<const FaceStructure>(trace_faces(full.overlay));
  const FaceStructure& ofs = base.faces();
  std::vector<int> owner(full_faces->faces.size(), -1);
  std::vector<Region> regions;
  for (const Region& r : base.regions()) {
    Region nr{r.surface, {}, {}};
    for (std::size_t idx = 0; idx < r.faces.size(); ++idx) {
      const Face& face = ofs.faces[r.faces[idx]];
      int flag = -1;
      for (int f : face.flags)
        if (o.curve_at(flag_halfedge(f)) == Curve::B) {
          flag = f;
          break;
        }
      // The collar sits beside the outer end of this B half-edge, on the
      // fiber or on the strand depending on where the parallel copy runs.
      const int h = flag_halfedge(flag), t = flag_side(flag);
      const int i = h / 4;
      const bool top = table.is_top(h);
      const bool face_left = (t == 0) == (mu[i] == 1);
      const bool copy_left = (top && table.pushoff[i] == -1) || (!top && table.pushoff[i] == 1);
      const bool on_fiber = face_left != copy_left;
      const auto& line = on_fiber ? full.on_fiber[i] : full.on_strand[i];
      const int x = top ? line.back() : line.front();
      const int up = full.up_slot(x, on_fiber);
      const int slot = top ? up : slot_add(up, 2);
      const int new_side = face_left ? 0 : 1;
      const int nflag = flag_of(4 * x + slot, new_side);
      const int nf = full_faces->face_of_flag[nflag];
      if (owner[nf] >= 0) throw Error("two base faces mapped into one twisted face");
      owner[nf] = static_cast<int>(regions.size());
      const bool same_orientation = (mu[i] * (t == 0 ? 1 : -1)) == (new_side == 0 ? 1 : -1);
      nr.faces.push_back(nf);
      nr.reversed.push_back(static_cast<std::uint8_t>(r.reversed[idx] ^ ofs.parity_of_flag[flag] ^
                                                      full_faces->parity_of_flag[nflag] ^ (same_orientation ? 0 : 1)));
    }
    regions.push_back(std::move(nr));
  }
  for (int nf = 0; nf < static_cast<int>(full_faces->faces.size()); ++nf)
    if (owner[nf] < 0) regions.push_back(Region{RegionSurface{}, {nf}, {0}});
  const Instance full_inst(full.overlay, full_faces, std::move(regions), std::nullopt);

  // Erasing the core glues the faces on its two sides along each core edge.
  std::vector<detail::RegionLink> links;
  for (const Edge& e : full.overlay.edges()) {
    if (e.curve != Curve::C) continue;
    const int h = e.ends[0].halfedge();
    int rel = 1;
    std::array<int, 2> side_region{};
    for (int t = 0; t < 2; ++t) {
      const int f = flag_of(h, t);
      const int g = full_faces->face_of_flag[f];
      const int r = full_inst.region_index(g);
      const Region& reg = full_inst.regions()[r];
      const auto p = std::find(reg.faces.begin(), reg.faces.end(), g) - reg.faces.begin();
      side_region[t] = r;
      rel ^= full_faces->parity_of_flag[f] ^ reg.reversed[p];
    }
    links.push_back({side_region[0], side_region[1], rel, -1});
  }

  detail::BandDrawing bare = detail::draw_band(o, table, std::abs(n), dir, false);
  if (const auto rep = validate_overlay(bare.overlay); !rep.ok()) throw Error("twisted overlay malformed: " + rep.str());
  auto nfs = std::make_shared<const FaceStructure>(trace_faces(bare.overlay));
  // Strand/fiber crossings keep their numbers and slots.
  std::vector<int> old_flag(bare.overlay.flags());
  std::iota(old_flag.begin(), old_flag.end(), 0);
  auto merged = detail::merge_regions(full_inst, *nfs, old_flag, links);

  TwistedOverlay tw;
  tw.base_crossings = m;
  tw.exponent = n;
  tw.trails = std::move(bare.trails);
  tw.tags.resize(bare.overlay.crossings());
  for (int i = 0; i < m; ++i)
    for (int x : bare.on_strand[i]) tw.tags[x].first = i;
  for (int j = 0; j < m; ++j)
    for (int x : bare.on_fiber[j]) tw.tags[x].second = j;
  tw.instance = Instance(std::move(bare.overlay), std::move(nfs), std::move(merged), std::nullopt);
  return tw;
}

// Removes one bigon, carrying tags and trails. The merged twisted-curve edge
// takes the trail of the B side of the bigon, since it now runs beside it.
inline TwistedOverlay remove_tracked(const TwistedOverlay& tw, const Bigon& bigon) {
  BigonRemoval rm = remove_bigon(tw.instance, bigon);
  TwistedOverlay out;
  out.base_crossings = tw.base_crossings;
  out.exponent = tw.exponent;
  out.instance = std::move(rm.result);
  out.tags.resize(out.instance.crossings());
  for (std::size_t v = 0; v < rm.vertex_map.size(); ++v)
    if (rm.vertex_map[v] >= 0) out.tags[rm.vertex_map[v]] = tw.tags[v];
  const SignedOverlay& before = tw.instance.overlay();
  for (const auto& src : rm.edge_sources) {
    if (src.size() == 1) {
      out.trails.push_back(tw.trails[src[0]]);
      continue;
    }
    std::vector<int> trail = tw.trails[src[0]];
    const int middle = before.edge(src[1]).curve == Curve::A ? bigon.b_edge : src[1];
    trail.insert(trail.end(), tw.trails[middle].begin(), tw.trails[middle].end());
    trail.insert(trail.end(), tw.trails[src[2]].begin(), tw.trails[src[2]].end());
    out.trails.push_back(std::move(trail));
  }
  return out;
}

// Fast paths mirroring the counting argument. Type I pushes a copy segment
// back across the B segment it follows; type II pushes it across the
// adjacent one-sided segment.
struct FastPathResult {
  TwistedOverlay reduced;
  int type_one = 0;
  int type_two = 0;
  bool bigon_left = false;
};

namespace detail {

inline std::optional<Bigon> find_tracked(const TwistedOverlay& tw, bool same_segment,
                                         const std::set<std::pair<int, int>>& adjacent) {
  for (const Bigon& b : find_bigons(tw.instance)) {
    const auto& ct = tw.trails[b.a_edge];
    const auto& bt = tw.trails[b.b_edge];
    if (ct.size() != 1 || bt.size() != 1) continue;
    if (same_segment && ct[0] == bt[0]) return b;
    if (!same_segment && ct[0] != bt[0] && adjacent.contains({std::min(ct[0], bt[0]), std::max(ct[0], bt[0])}))
      return b;
  }
  return std::nullopt;
}

}  // namespace detail

inline int reduce_type_one(TwistedOverlay& tw) {
  int count = 0;
  while (auto b = detail::find_tracked(tw, true, {})) {
    tw = remove_tracked(tw, *b);
    ++count;
  }
  return count;
}

// `base` is the pair the twisted overlay was built from; its Gamma supplies adjacency.
inline int reduce_type_two(TwistedOverlay& tw, const Instance& base) {
  const SegmentTable table = side_labels(base);
  const GammaGraph g = build_gamma(base, table);
  std::set<std::pair<int, int>> adjacent;
  for (const Adjacency& a : g.edges) {
    const int x = table.segments[a.first].edge, y = table.segments[a.second].edge;
    adjacent.insert({std::min(x, y), std::max(x, y)});
  }
  int count = 0;
  while (auto b = detail::find_tracked(tw, false, adjacent)) {
    tw = remove_tracked(tw, *b);
    ++count;
  }
  return count;
}

inline FastPathResult fast_path(const Instance& base, int n, bool flip_orientation = false) {
  FastPathResult r;
  r.reduced = construct_twisted_overlay(base, n, flip_orientation);
  r.type_one = reduce_type_one(r.reduced);
  r.type_two = reduce_type_two(r.reduced, base);
  r.bigon_left = find_bigon(r.reduced.instance).has_value();
  return r;
}

// After reduction with at least two base crossings, every fiber still meets a
// foreign strand and every strand a foreign fiber.
inline bool fibers_stay_crossed(const TwistedOverlay& tw) {
  const int m = tw.base_crossings;
  std::vector<char> fiber_ok(m, 0), strand_ok(m, 0);
  for (auto [strand, fiber] : tw.tags)
    if (strand != fiber) fiber_ok[fiber] = strand_ok[strand] = 1;
  for (int i = 0; i < m; ++i)
    if (!fiber_ok[i] || !strand_ok[i]) return false;
  return true;
}

inline int oracle_intersection(const Instance& base, int n, bool flip_orientation = false) {
  if (n == 0) throw Error("twist exponent must be nonzero");
  if (base.crossings() == 0) return 0;  // disjoint curves: the twist leaves b alone
  return minimal_position(construct_twisted_overlay(base, n, flip_orientation).instance).intersection;
}

}  // namespace dehn
