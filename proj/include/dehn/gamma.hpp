#pragma once

// Segments of curve B with respect to curve A, their side labels, adjacency
// faces, and the graph of one-sided segments.

#include "dehn/bigon.hpp"

namespace dehn {

enum class Side : std::uint8_t { E, F };

inline char side_letter(Side s) { return s == Side::E ? 'E' : 'F'; }

struct Segment {
  int edge = -1;                 // B-edge id
  std::array<int, 2> ends{};     // crossings at edge.ends[0], edge.ends[1]
  std::array<Side, 2> labels{};  // E/F corner each end sits at; meaningful only when B is two-sided
  Sidedness sidedness = Sidedness::TwoSided;
};

struct SegmentTable {
  std::vector<Segment> segments;     // one per B-edge, indexed by edge id (A-edges absent)
  std::vector<int> segment_of_edge;  // -1 for A-edges
  std::vector<int> a_order;          // crossing -> position along A
  std::vector<int> frame;            // crossing -> +1 if the crossing frame agrees with the A-band orientation
  std::vector<int> top_slot;         // crossing -> B slot on the chosen co-oriented side of A
  std::vector<int> pushoff;          // crossing -> side (+1 ahead along A, -1 behind) of the parallel copy of B
  bool labelled = false;             // B two-sided, so labels and pushoff are defined

  bool is_top(int halfedge) const { return halfedge % 4 == top_slot[halfedge / 4]; }
  // A corner is labelled E when the band orientation runs from it toward the
  // parallel copy of B along A.
  Side label_at(int halfedge) const {
    const bool top = is_top(halfedge);
    return (top ? pushoff[halfedge / 4] < 0 : pushoff[halfedge / 4] > 0) ? Side::E : Side::F;
  }
};

inline SegmentTable side_labels(const Instance& inst) {
  const SignedOverlay& o = inst.overlay();
  const int m = o.crossings();
  if (m == 0) throw Error("no crossings: segments undefined");
  if (curve_sidedness(o, Curve::A) != Sidedness::TwoSided) throw Error("curve a is one-sided: side labels undefined");
  if (find_bigon(inst)) throw Error("instance has a bigon: not in minimal position");

  SegmentTable t;
  t.a_order.assign(m, -1);
  t.frame.assign(m, 0);
  t.top_slot.assign(m, -1);
  const CurveWalk w = walk_curve(o, Curve::A);
  int eps = 1;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const int h = w.start_halfedges[i];
    const int v = h / 4, out = h % 4;
    t.a_order[v] = static_cast<int>(i);
    t.top_slot[v] = slot_add(out, eps > 0 ? 1 : -1);
    eps *= o.edge(w.edges[i]).sign;
  }
  // The co-orientation is fixed by putting the lowest B slot at crossing 0 on top.
  const int lowest_b = o.curve_at(0) == Curve::B ? 0 : 1;
  if (t.top_slot[0] != lowest_b)
    for (int& s : t.top_slot) s = slot_add(s, 2);
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const int h = w.start_halfedges[i];
    const int v = h / 4;
    t.frame[v] = t.top_slot[v] == slot_add(h % 4, 1) ? 1 : -1;
  }

  // Side of each B arc through the band on which the parallel copy runs,
  // carried along B. Travelling out of an end, omega is +1 when the copy is on
  // the left in band orientation.
  if (curve_sidedness(o, Curve::B) == Sidedness::TwoSided) {
    t.labelled = true;
    t.pushoff.assign(m, 0);
    const CurveWalk wb = walk_curve(o, Curve::B);
    const int first = wb.start_halfedges[0] / 4;
    t.pushoff[first] = 1;
    for (std::size_t i = 0; i < wb.edges.size(); ++i) {
      const int h = wb.start_halfedges[i];
      const int from = h / 4, arrive = o.opposite(h), to = arrive / 4;
      const int omega = (t.is_top(h) ? -t.pushoff[from] : t.pushoff[from]) * t.frame[from] *
                        o.edge(wb.edges[i]).sign * t.frame[to];
      const int next = t.is_top(arrive) ? omega : -omega;
      if (i + 1 == wb.edges.size()) {
        if (next != t.pushoff[first]) throw Error("parallel copy of b does not close up");
      } else {
        t.pushoff[to] = next;
      }
    }
    // Labels are fixed by putting the lowest B slot at crossing 0 in E.
    if (t.label_at(lowest_b) != Side::E)
      for (int& r : t.pushoff) r = -r;
  }

  // Sign of the arc of A from its start to each crossing.
  std::vector<int> prefix(m, 1);
  {
    int acc = 1;
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
      prefix[w.start_halfedges[i] / 4] = acc;
      acc *= o.edge(w.edges[i]).sign;
    }
  }
  t.segment_of_edge.assign(o.edges().size(), -1);
  for (int e = 0; e < static_cast<int>(o.edges().size()); ++e) {
    const Edge& ed = o.edge(e);
    if (ed.curve != Curve::B) continue;
    Segment s;
    s.edge = e;
    for (int k = 0; k < 2; ++k) {
      s.ends[k] = ed.ends[k].crossing;
      if (t.labelled) s.labels[k] = t.label_at(ed.ends[k].halfedge());
    }
    // Closing the segment with an arc of A gives a closed walk; its sidedness
    // is the product of the signs along it.
    const int closure = ed.sign * prefix[s.ends[0]] * prefix[s.ends[1]];
    s.sidedness = closure < 0 ? Sidedness::OneSided : Sidedness::TwoSided;
    t.segment_of_edge[e] = static_cast<int>(t.segments.size());
    t.segments.push_back(s);
  }
  return t;
}

struct Adjacency {
  int first = -1;   // segment index
  int second = -1;  // segment index
  int face_id = -1;
};

inline std::vector<Adjacency> find_adjacencies(const Instance& inst, const SegmentTable& table) {
  const SignedOverlay& o = inst.overlay();
  std::vector<Adjacency> out;
  for (int fi = 0; fi < static_cast<int>(inst.faces().faces.size()); ++fi) {
    const Face& f = inst.faces().faces[fi];
    if (f.length() != 4 || !inst.face_is_plain_disk(fi)) continue;
    const auto walk = f.walk(o);
    std::vector<int> bs;
    bool alternating = true;
    for (int i = 0; i < 4; ++i) {
      const Curve c = o.edge(walk[i]).curve;
      if (c == o.edge(walk[(i + 1) % 4]).curve) alternating = false;
      if (c == Curve::B) bs.push_back(walk[i]);
    }
    if (!alternating) continue;
    const int s0 = table.segment_of_edge[bs[0]], s1 = table.segment_of_edge[bs[1]];
    if (table.segments[s0].sidedness != Sidedness::OneSided || table.segments[s1].sidedness != Sidedness::OneSided)
      continue;
    out.push_back({std::min(s0, s1), std::max(s0, s1), f.id});
  }
  return out;
}

struct GammaGraph {
  std::vector<int> vertices;  // segment indices of one-sided segments
  std::vector<Adjacency> edges;
  std::vector<int> component_sizes;  // descending
  int max_degree = 0;
  int loops = 0;
  int multi_edges = 0;
  bool forest = true;
  std::vector<std::string> violations;

  bool well_formed() const { return violations.empty(); }
  int sum_sizes() const {
    int s = 0;
    for (int k : component_sizes) s += k;
    return s;
  }
  int sum_squares() const {
    int s = 0;
    for (int k : component_sizes) s += k * k;
    return s;
  }
};

inline GammaGraph build_gamma(const Instance& inst, const SegmentTable& table) {
  GammaGraph g;
  std::map<int, int> vertex_of_segment;
  for (int s = 0; s < static_cast<int>(table.segments.size()); ++s)
    if (table.segments[s].sidedness == Sidedness::OneSided) {
      vertex_of_segment[s] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(s);
    }
  g.edges = find_adjacencies(inst, table);
  const int nv = static_cast<int>(g.vertices.size());
  std::vector<int> degree(nv, 0), parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<std::pair<int, int>> seen;
  for (const Adjacency& a : g.edges) {
    const int x = vertex_of_segment.at(a.first), y = vertex_of_segment.at(a.second);
    ++degree[x];
    ++degree[y];
    if (x == y) {
      ++g.loops;
      g.forest = false;
      continue;
    }
    if (!seen.insert({x, y}).second) {
      ++g.multi_edges;
      g.forest = false;
      continue;
    }
    const int rx = find(x), ry = find(y);
    if (rx == ry) g.forest = false;
    else parent[rx] = ry;
  }
  std::map<int, int> sizes;
  for (int x = 0; x < nv; ++x) ++sizes[find(x)];
  for (auto [root, k] : sizes) g.component_sizes.push_back(k);
  std::stable_sort(g.component_sizes.begin(), g.component_sizes.end(), std::greater<>());
  for (int d : degree) g.max_degree = std::max(g.max_degree, d);
  if (g.max_degree > 2) g.violations.push_back("vertex of degree > 2");
  if (g.loops) g.violations.push_back("loop in gamma");
  if (g.multi_edges) g.violations.push_back("multiple edge in gamma");
  if (!g.forest) g.violations.push_back("cycle in gamma");
  return g;
}

inline GammaGraph build_gamma(const Instance& inst) { return build_gamma(inst, side_labels(inst)); }

inline std::string ks_text(const std::vector<int>& ks) {
  std::string s = "[";
  for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + std::to_string(ks[i]);
  return s + "]";
}

}  // namespace dehn
