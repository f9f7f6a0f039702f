#pragma once

// Bigon detection, removal, the inverse finger move, and reduction to
// minimal position.

#include <optional>
#include <random>
#include <set>

#include "dehn/surface.hpp"

namespace dehn {

struct Bigon {
  int face_id = -1;
  int a_edge = -1;
  int b_edge = -1;
  int u = -1;  // crossing at a_edge.ends[0]
  int v = -1;
};

namespace detail {

inline std::optional<Bigon> bigon_at(const Instance& inst, int face_index) {
  const Face& f = inst.faces().faces[face_index];
  if (f.length() != 2 || !inst.face_is_plain_disk(face_index)) return std::nullopt;
  const SignedOverlay& o = inst.overlay();
  const auto walk = f.walk(o);
  int ea = walk[0], eb = walk[1];
  if (o.edge(ea).curve == o.edge(eb).curve) return std::nullopt;
  if (o.edge(ea).curve == Curve::B) std::swap(ea, eb);
  const Edge& a = o.edge(ea);
  const Edge& b = o.edge(eb);
  const int u = a.ends[0].crossing, v = a.ends[1].crossing;
  if (u == v) return std::nullopt;
  const int bu = b.ends[0].crossing, bv = b.ends[1].crossing;
  if (!((bu == u && bv == v) || (bu == v && bv == u))) return std::nullopt;
  return Bigon{f.id, ea, eb, u, v};
}

inline int slot_of(const Edge& e, int crossing) {
  return e.ends[0].crossing == crossing ? e.ends[0].slot : e.ends[1].slot;
}

inline Port far_port(const Edge& e, int crossing) {
  return e.ends[0].crossing == crossing ? e.ends[1] : e.ends[0];
}

// Extra identification between two old regions made by a local move. With
// parity >= 0 it also fixes their relative orientation; `euler` is added to
// the merged class.
struct RegionLink {
  int x = 0;
  int y = 0;
  int parity = -1;
  int euler = 0;
};

// Rebuilds regions after a local move. `old_flag` maps each new flag to the
// corresponding old flag (or -1). Old regions touched by one new face are
// merged, along with `links`.
inline std::vector<Region> merge_regions(const Instance& old_inst, const FaceStructure& nfs,
                                         const std::vector<int>& old_flag, const std::vector<RegionLink>& links) {
  const FaceStructure& ofs = old_inst.faces();
  const int nold = static_cast<int>(old_inst.regions().size());
  std::vector<int> parent(nold);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
  for (const RegionLink& l : links) unite(l.x, l.y);
  const int nnew = static_cast<int>(nfs.faces.size());
  std::vector<int> some_region(nnew, -1);
  for (int nf = 0; nf < nnew; ++nf) {
    for (int flag : nfs.faces[nf].flags) {
      const int of = old_flag[flag];
      if (of < 0) continue;
      const int r = old_inst.region_index(ofs.face_of_flag[of]);
      if (some_region[nf] < 0) some_region[nf] = r;
      else unite(r, some_region[nf]);
    }
    if (some_region[nf] < 0) throw Error("local move produced a face with no surviving corner");
  }

  std::map<int, int> class_index;
  std::vector<Region> out;
  std::vector<std::vector<int>> members;
  for (int nf = 0; nf < nnew; ++nf) {
    const int root = find(some_region[nf]);
    auto [it, inserted] = class_index.try_emplace(root, static_cast<int>(out.size()));
    if (inserted) {
      out.emplace_back();
      members.emplace_back();
    }
    out[it->second].faces.push_back(nf);
  }
  for (int r = 0; r < nold; ++r) {
    auto it = class_index.find(find(r));
    if (it == class_index.end()) throw Error("local move lost a complementary region");
    members[it->second].push_back(r);
  }
  std::vector<int> euler(out.size(), 0);
  for (const RegionLink& l : links) euler[class_index.at(find(l.x))] += l.euler;

  for (std::size_t c = 0; c < out.size(); ++c) {
    Region& reg = out[c];
    bool orientable = true;
    std::map<int, int> var_of_old;
    for (int r : members[c]) {
      const Region& old = old_inst.regions()[r];
      euler[c] += old.euler();
      reg.surface.punctures += old.surface.punctures;
      reg.surface.boundaries += old.surface.boundaries;
      orientable = orientable && old.surface.orientable;
      var_of_old.emplace(r, static_cast<int>(var_of_old.size()));
    }

    // Orientation variables: old regions first, then new faces.
    const int base = static_cast<int>(var_of_old.size());
    ParityUnionFind uf(base + static_cast<int>(reg.faces.size()));
    for (const RegionLink& l : links)
      if (orientable && l.parity >= 0 && var_of_old.contains(l.x))
        orientable = uf.unite(var_of_old.at(l.x), var_of_old.at(l.y), l.parity);
    for (std::size_t i = 0; i < reg.faces.size() && orientable; ++i) {
      for (int flag : nfs.faces[reg.faces[i]].flags) {
        const int of = old_flag[flag];
        if (of < 0) continue;
        const int og = ofs.face_of_flag[of];
        const int r = old_inst.region_index(og);
        const Region& old = old_inst.regions()[r];
        const auto pos = std::find(old.faces.begin(), old.faces.end(), og) - old.faces.begin();
        const int rel = nfs.parity_of_flag[flag] ^ ofs.parity_of_flag[of] ^ old.reversed[pos];
        if (!uf.unite(base + static_cast<int>(i), var_of_old.at(r), rel)) {
          orientable = false;
          break;
        }
      }
    }
    reg.reversed.assign(reg.faces.size(), 0);
    if (orientable) {
      const int ref = uf.find(base).second;
      for (std::size_t i = 0; i < reg.faces.size(); ++i)
        reg.reversed[i] = static_cast<std::uint8_t>(uf.find(base + static_cast<int>(i)).second ^ ref);
    }
    reg.surface.orientable = orientable;
    const int k = static_cast<int>(reg.faces.size());
    const int closed = euler[c] + k + reg.surface.boundaries;
    if (orientable) {
      if ((2 - closed) % 2 != 0 || closed > 2) throw Error("merged region has inconsistent Euler characteristic");
      reg.surface.genus = (2 - closed) / 2;
    } else {
      if (closed > 1) throw Error("merged region has inconsistent Euler characteristic");
      reg.surface.genus = 2 - closed;
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<Bigon> find_bigons(const Instance& inst) {
  std::vector<Bigon> out;
  for (int i = 0; i < static_cast<int>(inst.faces().faces.size()); ++i)
    if (auto b = detail::bigon_at(inst, i)) out.push_back(*b);
  return out;
}

inline std::optional<Bigon> find_bigon(const Instance& inst) {
  for (int i = 0; i < static_cast<int>(inst.faces().faces.size()); ++i)
    if (auto b = detail::bigon_at(inst, i)) return b;
  return std::nullopt;
}

struct BigonRemoval {
  Instance result;
  std::vector<int> vertex_map;                // old crossing -> new crossing, -1 if removed
  std::vector<std::vector<int>> edge_sources;  // new edge -> old edges it replaces, in path order
};

inline BigonRemoval remove_bigon(const Instance& inst, const Bigon& bigon) {
  const int fidx = inst.faces().index_of_id(bigon.face_id);
  const auto check = fidx < 0 ? std::nullopt : detail::bigon_at(inst, fidx);
  if (!check || check->a_edge != bigon.a_edge || check->b_edge != bigon.b_edge)
    throw Error("stale bigon handle");
  const SignedOverlay& o = inst.overlay();
  const int m = o.crossings();
  const int u = bigon.u, v = bigon.v;
  BigonRemoval out;
  out.vertex_map.assign(m, -1);

  if (m == 2) {
    const int sa = sign_product(o, walk_curve(o, Curve::A).edges);
    const int sb = sign_product(o, walk_curve(o, Curve::B).edges);
    out.result = Instance(SignedOverlay::free_loops(sa, sb), nullptr, {}, classify_ambient(inst));
    return out;
  }

  const Edge& ea = o.edge(bigon.a_edge);
  const Edge& eb = o.edge(bigon.b_edge);
  auto continuation = [&](const Edge& e, int crossing) {
    return o.edge_at(Port{crossing, slot_add(detail::slot_of(e, crossing), 2)});
  };
  const int a1 = continuation(ea, u), a2 = continuation(ea, v);
  const int b1 = continuation(eb, u), b2 = continuation(eb, v);

  for (int w = 0, k = 0; w < m; ++w)
    if (w != u && w != v) out.vertex_map[w] = k++;
  auto remap = [&](Port p) { return Port{out.vertex_map[p.crossing], p.slot}; };

  std::vector<Edge> edges;
  const std::set<int> gone{bigon.a_edge, bigon.b_edge, a1, a2, b1, b2};
  for (int e = 0; e < static_cast<int>(o.edges().size()); ++e) {
    if (gone.contains(e)) continue;
    Edge ne = o.edge(e);
    ne.ends = {remap(ne.ends[0]), remap(ne.ends[1])};
    edges.push_back(ne);
    out.edge_sources.push_back({e});
  }
  auto joined = [&](Curve c, int first, int mid, int last) {
    const Edge& e1 = o.edge(first);
    const Edge& e2 = o.edge(last);
    Edge ne{c, {remap(detail::far_port(e1, u)), remap(detail::far_port(e2, v))},
            e1.sign * o.edge(mid).sign * e2.sign};
    edges.push_back(ne);
    out.edge_sources.push_back({first, mid, last});
  };
  joined(Curve::A, a1, bigon.a_edge, a2);
  joined(Curve::B, b1, bigon.b_edge, b2);

  SignedOverlay fresh(m - 2, std::move(edges));
  auto nfs = std::make_shared<const FaceStructure>(trace_faces(fresh));
  std::vector<int> old_flag(fresh.flags(), -1);
  for (int w = 0; w < m; ++w)
    if (out.vertex_map[w] >= 0)
      for (int k = 0; k < 8; ++k) old_flag[8 * out.vertex_map[w] + k] = 8 * w + k;

  // Corners opposite the bigon at u and v.
  auto opposite_corner = [&](int crossing) {
    const int sa = slot_add(detail::slot_of(ea, crossing), 2);
    const int sb = slot_add(detail::slot_of(eb, crossing), 2);
    const int flag = flag_of(4 * crossing + sa, slot_add(sa, 1) == sb ? 0 : 1);
    return inst.region_index(inst.faces().face_of_flag[flag]);
  };
  const int rb = inst.region_index(fidx);
  auto regions = detail::merge_regions(inst, *nfs, old_flag,
                                       {{rb, opposite_corner(u), -1, -1}, {rb, opposite_corner(v), -1, -1}});
  out.result = Instance(std::move(fresh), std::move(nfs), std::move(regions), std::nullopt);
  return out;
}

struct MinimalPosition {
  Instance result;
  int intersection = 0;
  int removals = 0;
};

// Canonical order removes the smallest bigon; with `rng`, a uniformly random one.
inline MinimalPosition minimal_position(const Instance& inst, std::mt19937_64* rng = nullptr) {
  MinimalPosition mp{inst, inst.crossings(), 0};
  while (true) {
    std::optional<Bigon> pick;
    if (rng) {
      const auto all = find_bigons(mp.result);
      if (!all.empty()) pick = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(*rng)];
    } else {
      pick = find_bigon(mp.result);
    }
    if (!pick) break;
    mp.result = remove_bigon(mp.result, *pick).result;
    ++mp.removals;
  }
  mp.intersection = mp.result.crossings();
  return mp;
}

// ---------------------------------------------------------------------------
// Finger move: pushes a tongue of an A-edge through a plain-disk face and
// across a B-edge of the same face, creating a bigon. `a_flag` and `b_flag`
// are flags of that face on the chosen A and B half-edges; the tongue leaves
// near the crossing of `a_flag` and crosses near the crossing of `b_flag`.
// Throws if the face is not a plain disk or either edge has the face on both
// sides at the chosen spot.

inline Instance finger_move(const Instance& inst, int a_flag, int b_flag) {
  const SignedOverlay& o = inst.overlay();
  const FaceStructure& fs = inst.faces();
  const int face = fs.face_of_flag.at(a_flag);
  if (fs.face_of_flag.at(b_flag) != face) throw Error("finger move flags lie in different faces");
  if (!inst.face_is_plain_disk(face)) throw Error("finger move needs a plain disk face");
  const int ha = flag_halfedge(a_flag), hb = flag_halfedge(b_flag);
  if (o.curve_at(ha) != Curve::A || o.curve_at(hb) != Curve::B) throw Error("finger move needs an A flag and a B flag");
  if (fs.face_of_flag[SignedOverlay::alpha2(a_flag)] == face || fs.face_of_flag[SignedOverlay::alpha2(b_flag)] == face)
    throw Error("finger move edge has the face on both sides");

  const int ea = o.edge_at(ha), eb = o.edge_at(hb);
  const Edge& A = o.edge(ea);
  const Edge& B = o.edge(eb);
  const Port a_near{ha / 4, ha % 4}, b_near{hb / 4, hb % 4};
  const Port a_far = A.ends[o.end_at(ha) ^ 1];
  const Port b_far = B.ends[o.end_at(hb) ^ 1];
  auto s = [](int t) { return t == 0 ? 1 : -1; };
  const int ta = flag_side(a_flag), tb = flag_side(b_flag);
  const bool same_class = fs.parity_of_flag[a_flag] == fs.parity_of_flag[b_flag];
  const int eps_a = s(ta);
  const int eps_b = s(tb) * (same_class ? 1 : -1);

  // New crossings p (first along the tongue) and q; rotation is the face's own
  // orientation with slots east, north, west, south and B running west to east
  // away from b_near.
  const int m = o.crossings();
  const int p = m, q = m + 1;
  std::vector<Edge> edges;
  for (int e = 0; e < static_cast<int>(o.edges().size()); ++e)
    if (e != ea && e != eb) edges.push_back(o.edge(e));
  constexpr int east = 0, north = 1, west = 2, south = 3;
  if (same_class) {
    // face above B: tongue descends at p (east) and rises at q (west)
    edges.push_back(Edge{Curve::A, {a_near, Port{p, north}}, eps_a});
    edges.push_back(Edge{Curve::A, {Port{p, south}, Port{q, south}}, 1});
    edges.push_back(Edge{Curve::A, {Port{q, north}, a_far}, eps_a * A.sign});
    edges.push_back(Edge{Curve::B, {b_near, Port{q, west}}, eps_b});
    edges.push_back(Edge{Curve::B, {Port{q, east}, Port{p, west}}, 1});
    edges.push_back(Edge{Curve::B, {Port{p, east}, b_far}, eps_b * B.sign});
  } else {
    // face below B: tongue rises at p (west) and descends at q (east)
    edges.push_back(Edge{Curve::A, {a_near, Port{p, south}}, eps_a});
    edges.push_back(Edge{Curve::A, {Port{p, north}, Port{q, north}}, 1});
    edges.push_back(Edge{Curve::A, {Port{q, south}, a_far}, eps_a * A.sign});
    edges.push_back(Edge{Curve::B, {b_near, Port{p, west}}, eps_b});
    edges.push_back(Edge{Curve::B, {Port{p, east}, Port{q, west}}, 1});
    edges.push_back(Edge{Curve::B, {Port{q, east}, b_far}, eps_b * B.sign});
  }
  SignedOverlay fresh(m + 2, std::move(edges));
  auto nfs = std::make_shared<const FaceStructure>(trace_faces(fresh));

  // Faces touching only the face being split become plain disks; the bigon is
  // a plain disk; every other face corresponds to exactly one old face and
  // joins that face's region.
  std::vector<Region> final_regions;
  std::map<int, int> region_slot;  // old region -> index in final_regions
  std::vector<int> seen_old(fs.faces.size(), 0);
  for (int nf = 0; nf < static_cast<int>(nfs->faces.size()); ++nf) {
    std::set<int> olds;
    int witness = -1;
    for (int flag : nfs->faces[nf].flags)
      if (flag < 8 * m) {
        olds.insert(fs.face_of_flag[flag]);
        witness = flag;
      }
    if (olds.empty() || (olds.size() == 1 && *olds.begin() == face)) {
      final_regions.push_back(Region{RegionSurface{}, {nf}, {0}});
      continue;
    }
    if (olds.size() != 1) throw Error("finger move merged faces");
    const int og = *olds.begin();
    if (seen_old[og]++) throw Error("finger move split a non-disk face");
    const int ri = inst.region_index(og);
    const Region& old = inst.regions()[ri];
    const auto pos = std::find(old.faces.begin(), old.faces.end(), og) - old.faces.begin();
    auto [it, inserted] = region_slot.try_emplace(ri, static_cast<int>(final_regions.size()));
    if (inserted) final_regions.push_back(Region{old.surface, {}, {}});
    Region& reg = final_regions[it->second];
    reg.faces.push_back(nf);
    reg.reversed.push_back(
        static_cast<std::uint8_t>(nfs->parity_of_flag[witness] ^ fs.parity_of_flag[witness] ^ old.reversed[pos]));
  }
  return Instance(std::move(fresh), std::move(nfs), std::move(final_regions), std::nullopt);
}

}  // namespace dehn
