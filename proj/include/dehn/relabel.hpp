#pragma once

// Relabelings that leave the embedded pair unchanged: crossing permutations,
// vertex re-signing flips, sign normalization.

#include "dehn/surface.hpp"

namespace dehn {

// Carries regions across an overlay change that preserves faces through a
// bijection of flags (`flag_map[old] = new`).
inline Instance transport(const Instance& inst, SignedOverlay fresh, const std::vector<int>& flag_map) {
  if (inst.crossings() == 0) return inst;
  auto nfs = std::make_shared<const FaceStructure>(trace_faces(fresh));
  const FaceStructure& ofs = inst.faces();
  std::vector<Region> regions;
  for (const Region& r : inst.regions()) {
    Region nr{r.surface, {}, {}};
    for (std::size_t i = 0; i < r.faces.size(); ++i) {
      const int old_flag = ofs.faces[r.faces[i]].id;
      const int new_flag = flag_map[old_flag];
      nr.faces.push_back(nfs->face_of_flag[new_flag]);
      nr.reversed.push_back(
          static_cast<std::uint8_t>(r.reversed[i] ^ ofs.parity_of_flag[old_flag] ^ nfs->parity_of_flag[new_flag]));
    }
    regions.push_back(std::move(nr));
  }
  return Instance(std::move(fresh), std::move(nfs), std::move(regions), inst.stored_ambient());
}

// Mirrors the rotation at one crossing and flips the signs of its edges.
inline Instance flip_vertex(const Instance& inst, int crossing) {
  const SignedOverlay& o = inst.overlay();
  std::vector<Edge> edges = o.edges();
  for (Edge& e : edges)
    for (Port& p : e.ends)
      if (p.crossing == crossing) {
        p.slot = slot_add(0, -p.slot);
        e.sign = -e.sign;
      }
  std::vector<int> fmap(o.flags());
  for (int f = 0; f < o.flags(); ++f) {
    const int h = flag_halfedge(f);
    fmap[f] = h / 4 == crossing ? flag_of(4 * crossing + slot_add(0, -(h % 4)), 1 - flag_side(f)) : f;
  }
  return transport(inst, SignedOverlay(o.crossings(), std::move(edges)), fmap);
}

// Rotates the slot numbering at one crossing by `shift` (slot s -> s + shift).
inline Instance rotate_vertex(const Instance& inst, int crossing, int shift) {
  const SignedOverlay& o = inst.overlay();
  std::vector<Edge> edges = o.edges();
  for (Edge& e : edges)
    for (Port& p : e.ends)
      if (p.crossing == crossing) p.slot = slot_add(p.slot, shift);
  std::vector<int> fmap(o.flags());
  for (int f = 0; f < o.flags(); ++f) {
    const int h = flag_halfedge(f);
    fmap[f] = h / 4 == crossing ? flag_of(4 * crossing + slot_add(h % 4, shift), flag_side(f)) : f;
  }
  return transport(inst, SignedOverlay(o.crossings(), std::move(edges)), fmap);
}

// Renumbers crossings (`perm[old] = new`) and reorders edges (`edge_order[new] = old`).
inline Instance relabel(const Instance& inst, const std::vector<int>& perm, const std::vector<int>& edge_order) {
  const SignedOverlay& o = inst.overlay();
  std::vector<Edge> edges;
  for (int old : edge_order) {
    Edge e = o.edge(old);
    for (Port& p : e.ends) p.crossing = perm[p.crossing];
    edges.push_back(e);
  }
  std::vector<int> fmap(o.flags());
  for (int f = 0; f < o.flags(); ++f) fmap[f] = 8 * perm[f / 8] + f % 8;
  return transport(inst, SignedOverlay(o.crossings(), std::move(edges)), fmap);
}

// Exchanges the roles of the two curves; faces and regions are untouched.
inline Instance swap_curves(const Instance& inst) {
  const SignedOverlay& o = inst.overlay();
  std::vector<Edge> edges = o.edges();
  for (Edge& e : edges) e.curve = other(e.curve);
  if (o.crossings() == 0)
    return Instance(SignedOverlay::free_loops(o.free_loop_sign(Curve::B), o.free_loop_sign(Curve::A)), nullptr, {},
                    inst.stored_ambient());
  return Instance(SignedOverlay(o.crossings(), std::move(edges)), inst.faces_ptr(), inst.regions(),
                  inst.stored_ambient());
}

// Re-signs so that curve A carries at most one negative edge.
inline Instance normalize_signs(const Instance& inst) {
  if (inst.crossings() == 0) return inst;
  int negatives = 0;
  for (const Edge& e : inst.overlay().edges()) negatives += e.curve == Curve::A && e.sign < 0;
  if (negatives <= 1) return inst;
  Instance cur = inst;
  const CurveWalk w = walk_curve(cur.overlay(), Curve::A);
  for (std::size_t i = 0; i + 1 < w.edges.size(); ++i) {
    const Edge& e = cur.overlay().edge(w.edges[i]);
    if (e.sign > 0) continue;
    // crossing numbers survive flips; slots do not
    cur = flip_vertex(cur, w.start_halfedges[i + 1] / 4);
  }
  return cur;
}

}  // namespace dehn
