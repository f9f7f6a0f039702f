#pragma once

// Exhaustive enumeration of small instances up to relabeling and re-signing.

#include <functional>

#include "dehn/gamma.hpp"
#include "dehn/relabel.hpp"

namespace dehn {

// ---------------------------------------------------------------------------
// Canonical form. A root (half-edge, orientation) fixes a numbering of all
// crossings and slots by breadth-first search, re-signing each newly reached
// crossing so the edge reaching it becomes positive.

struct RootedCode {
  std::vector<int> code;
  std::vector<int> flag_map;  // flag -> flag in the rooted numbering
};

inline RootedCode rooted_code(const SignedOverlay& o, int root, int orient) {
  const int m = o.crossings();
  std::vector<int> label(m, -1), start(m, 0), ori(m, 1), order;
  auto discover = [&](int v, int s, int w) {
    label[v] = static_cast<int>(order.size());
    start[v] = s;
    ori[v] = w;
    order.push_back(v);
  };
  discover(root / 4, root % 4, orient);
  RootedCode rc;
  rc.code.reserve(16 * m);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int v = order[k];
    for (int ns = 0; ns < 4; ++ns) {
      const int h = 4 * v + slot_add(start[v], ori[v] * ns);
      const int far = o.opposite(h);
      const int w = far / 4;
      if (label[w] < 0) discover(w, far % 4, ori[v] * o.sign_at(h));
      rc.code.push_back(index(o.curve_at(h)));
      rc.code.push_back(label[w]);
      rc.code.push_back(slot_add(0, ori[w] * (far % 4 - start[w])));
      rc.code.push_back(o.sign_at(h) * ori[v] * ori[w]);
    }
  }
  if (static_cast<int>(order.size()) != m) throw Error("overlay is disconnected");
  rc.flag_map.resize(o.flags());
  for (int f = 0; f < o.flags(); ++f) {
    const int h = flag_halfedge(f), v = h / 4;
    const int ns = slot_add(0, ori[v] * (h % 4 - start[v]));
    rc.flag_map[f] = flag_of(4 * label[v] + ns, ori[v] > 0 ? flag_side(f) : 1 - flag_side(f));
  }
  return rc;
}

struct CanonicalForm {
  std::vector<int> code;
  std::vector<std::vector<int>> flag_maps;  // one per root reaching the minimal code
};

inline CanonicalForm canonical_form(const SignedOverlay& o) {
  CanonicalForm cf;
  for (int h = 0; h < o.halfedges(); ++h)
    for (int orient : {1, -1}) {
      RootedCode rc = rooted_code(o, h, orient);
      if (cf.flag_maps.empty() || rc.code < cf.code) {
        cf.code = std::move(rc.code);
        cf.flag_maps.assign(1, std::move(rc.flag_map));
      } else if (rc.code == cf.code) {
        cf.flag_maps.push_back(std::move(rc.flag_map));
      }
    }
  return cf;
}

inline SignedOverlay overlay_from_code(int m, const std::vector<int>& code) {
  std::vector<Edge> edges;
  for (int v = 0; v < m; ++v)
    for (int s = 0; s < 4; ++s) {
      const int* c = &code[16 * v + 4 * s];
      if (std::make_pair(v, s) < std::make_pair(c[1], c[2]))
        edges.push_back(Edge{static_cast<Curve>(c[0]), {Port{v, s}, Port{c[1], c[2]}}, c[3]});
    }
  return SignedOverlay(m, std::move(edges));
}

// Face permutations induced by the automorphisms of the overlay.
inline std::vector<std::vector<int>> face_automorphisms(const Instance& inst) {
  const CanonicalForm cf = canonical_form(inst.overlay());
  const FaceStructure& fs = inst.faces();
  const auto& base = cf.flag_maps.front();
  std::vector<int> inverse(base.size());
  for (std::size_t f = 0; f < base.size(); ++f) inverse[base[f]] = static_cast<int>(f);
  std::set<std::vector<int>> perms;
  for (const auto& map : cf.flag_maps) {
    std::vector<int> perm(fs.faces.size());
    for (std::size_t i = 0; i < fs.faces.size(); ++i) perm[i] = fs.face_of_flag[inverse[map[fs.faces[i].id]]];
    perms.insert(perm);
  }
  return {perms.begin(), perms.end()};
}

// Canonical relabeling of an instance (sign-normalized afterwards).
inline Instance canonical_instance(const Instance& inst) {
  if (inst.crossings() == 0) return inst;
  const CanonicalForm cf = canonical_form(inst.overlay());
  const SignedOverlay fresh = overlay_from_code(inst.crossings(), cf.code);
  // Overlay automorphisms permute the caps; keep the smallest cap layout.
  auto layout = [](const Instance& x) {
    std::vector<std::vector<int>> key;
    for (const Region& r : x.regions()) {
      std::vector<int> row{r.surface.orientable, r.surface.genus, r.surface.punctures, r.surface.boundaries};
      for (int f : r.faces) row.push_back(x.faces().faces[f].id);
      for (auto rev : r.reversed) row.push_back(rev);
      key.push_back(std::move(row));
    }
    std::sort(key.begin(), key.end(), [](const auto& p, const auto& q) {
      return std::vector<int>(p.begin() + 4, p.end()) < std::vector<int>(q.begin() + 4, q.end());
    });
    return key;
  };
  std::optional<Instance> best;
  std::vector<std::vector<int>> best_key;
  for (const auto& map : cf.flag_maps) {
    Instance cand = normalize_signs(transport(inst, fresh, map));
    auto key = layout(cand);
    if (!best || key < best_key) {
      best_key = std::move(key);
      best = std::move(cand);
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Fast genericity for single-face regions: the cut skeleton depends only on
// the overlay; caps are added per assignment.

struct ComplementSkeleton {
  std::vector<int> component_of_face;
  std::vector<int> euler;   // vertex and edge pieces only
  std::vector<int> copies;  // boundary circles from the cut curve
  std::vector<char> nonorientable;
};

inline ComplementSkeleton complement_skeleton(const SignedOverlay& o, const FaceStructure& fs, Curve cut) {
  const int nf = o.flags();
  auto is_cut = [&](int flag) { return o.curve_at(flag_halfedge(flag)) == cut; };
  ParityUnionFind uf(nf);
  std::vector<int> bad;
  for (int f = 0; f < nf; ++f) {
    if (!uf.unite(f, o.alpha0(f), 1)) bad.push_back(f);
    if (!uf.unite(f, SignedOverlay::alpha1(f), 1)) bad.push_back(f);
    if (!is_cut(f) && !uf.unite(f, SignedOverlay::alpha2(f), 1)) bad.push_back(f);
  }
  ComplementSkeleton sk;
  std::map<int, int> comp;
  auto comp_of = [&](int flag) {
    auto [it, inserted] = comp.try_emplace(uf.root(flag), static_cast<int>(sk.euler.size()));
    if (inserted) {
      sk.euler.push_back(0);
      sk.copies.push_back(0);
      sk.nonorientable.push_back(0);
    }
    return it->second;
  };
  for (const Face& f : fs.faces) sk.component_of_face.push_back(comp_of(f.id));
  for (int f : bad) sk.nonorientable[comp_of(f)] = 1;
  std::vector<char> seen(nf, 0);
  for (int f = 0; f < nf; ++f) {  // vertex pieces
    if (seen[f]) continue;
    std::vector<int> stack{f};
    seen[f] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : {SignedOverlay::alpha1(x), is_cut(x) ? x : SignedOverlay::alpha2(x)})
        if (!seen[y]) seen[y] = 1, stack.push_back(y);
    }
    sk.euler[comp_of(f)] += 1;
  }
  for (const Edge& e : o.edges()) {  // edge pieces
    const int h = e.ends[0].halfedge();
    sk.euler[comp_of(flag_of(h, 0))] -= 1;
    if (e.curve == cut) sk.euler[comp_of(flag_of(h, 1))] -= 1;
  }
  std::fill(seen.begin(), seen.end(), 0);
  for (int f = 0; f < nf; ++f) {  // copies of the cut curve
    if (seen[f] || !is_cut(f)) continue;
    std::vector<int> stack{f};
    seen[f] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      const int h = flag_halfedge(x);
      const int straight = flag_of(4 * (h / 4) + slot_add(h % 4, 2), 1 - flag_side(x));
      for (int y : {o.alpha0(x), straight})
        if (!seen[y]) seen[y] = 1, stack.push_back(y);
    }
    sk.copies[comp_of(f)] += 1;
  }
  return sk;
}

inline bool generic_with_caps(const ComplementSkeleton& sk, const std::vector<RegionSurface>& caps) {
  const std::size_t nc = sk.euler.size();
  std::vector<int> euler = sk.euler, punct(nc, 0), bound(nc, 0);
  std::vector<char> nonori = sk.nonorientable;
  for (std::size_t f = 0; f < caps.size(); ++f) {
    const int c = sk.component_of_face[f];
    euler[c] += caps[f].euler(1);
    punct[c] += caps[f].punctures;
    bound[c] += caps[f].boundaries;
    if (!caps[f].orientable) nonori[c] = 1;
  }
  for (std::size_t c = 0; c < nc; ++c) {
    ComplementPiece p;
    p.curve_copies = sk.copies[c];
    p.kind.boundaries = bound[c] + sk.copies[c];
    p.kind.punctures = punct[c];
    p.kind.orientable = !nonori[c];
    const int closed = euler[c] + p.kind.boundaries;
    p.kind.genus = p.kind.orientable ? (2 - closed) / 2 : 2 - closed;
    if (bounds_excluded_piece(p)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Overlays

// All overlays with m crossings, one per relabel/re-sign class, each in
// canonical sign-normalized form.
inline std::vector<SignedOverlay> enumerate_overlays(int m) {
  std::vector<SignedOverlay> out;
  if (m <= 0) return out;
  std::set<std::vector<int>> seen;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  do {
    for (int dirs = 0; dirs < (1 << m); ++dirs)
      for (int signs = 0; signs < (1 << m); ++signs)
        for (int a_last : {1, -1}) {
          std::vector<Edge> edges;
          for (int i = 0; i < m; ++i)
            edges.push_back(Edge{Curve::A, {Port{i, 0}, Port{(i + 1) % m, 2}}, i + 1 == m ? a_last : 1});
          for (int t = 0; t < m; ++t) {
            const int v = order[t], w = order[(t + 1) % m];
            const int out_slot = (dirs >> v) & 1 ? 1 : 3;
            const int in_slot = (dirs >> w) & 1 ? 3 : 1;
            edges.push_back(Edge{Curve::B, {Port{v, out_slot}, Port{w, in_slot}}, (signs >> t) & 1 ? -1 : 1});
          }
          SignedOverlay o(m, std::move(edges));
          if (!validate_overlay(o).ok()) continue;
          CanonicalForm cf = canonical_form(o);
          if (!seen.insert(cf.code).second) continue;
          const SignedOverlay canon = overlay_from_code(m, cf.code);
          CapAssignment plain;
          for (const Face& f : trace_faces(canon).faces) plain[f.id] = Cap::plain_disk();
          out.push_back(normalize_signs(Instance(canon, plain)).overlay());
        }
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Instances

inline const std::vector<Cap>& cap_menu() {
  static const std::vector<Cap> menu{Cap::plain_disk(),       Cap::punctured_disk(1), Cap::punctured_disk(2),
                                     Cap::boundary_annulus(), Cap::moebius(0),        Cap::generic(1, 0, 0, 0),
                                     Cap::generic(0, 1, 0, 0)};
  return menu;
}

struct EnumerationFilters {
  bool minimal = true;
  bool a_two_sided = true;
  bool b_two_sided = true;  // required by the twist formula
  bool generic = true;

  static EnumerationFilters none() { return {false, false, false, false}; }
};

struct CorpusEntry {
  Instance instance;
  int overlay_index = 0;         // position in enumerate_overlays(m)
  int plain_mask = 0;            // bit i set if face i is a plain disk
  std::vector<int> cap_choice;   // menu index per face
  std::string provenance = "enumerated";
};

// Calls `visit` for every instance with exactly m crossings passing the filters.
inline void enumerate_instances(int m, const EnumerationFilters& filters,
                                const std::function<void(const CorpusEntry&)>& visit) {
  if (m == 0) {
    for (int sa : {1, -1})
      for (int sb : {1, -1}) {
        if ((filters.a_two_sided && sa < 0) || (filters.b_two_sided && sb < 0)) continue;
        CorpusEntry e;
        e.instance = Instance(SignedOverlay::free_loops(sa, sb), CapAssignment{});
        visit(e);
      }
    return;
  }
  const auto& menu = cap_menu();
  const int k = static_cast<int>(menu.size());
  std::vector<RegionSurface> menu_surface;
  for (const Cap& c : menu) menu_surface.push_back(c.surface());
  const auto overlays = enumerate_overlays(m);
  for (int oi = 0; oi < static_cast<int>(overlays.size()); ++oi) {
    const SignedOverlay& o = overlays[oi];
    if (filters.a_two_sided && curve_sidedness(o, Curve::A) != Sidedness::TwoSided) continue;
    if (filters.b_two_sided && curve_sidedness(o, Curve::B) != Sidedness::TwoSided) continue;
    const FaceStructure fs = trace_faces(o);
    const int nf = static_cast<int>(fs.faces.size());
    CapAssignment plain;
    for (const Face& f : fs.faces) plain[f.id] = Cap::plain_disk();
    const Instance skeleton(o, plain);
    const auto autos = face_automorphisms(skeleton);
    const ComplementSkeleton cut_a = complement_skeleton(o, fs, Curve::A);
    const ComplementSkeleton cut_b = complement_skeleton(o, fs, Curve::B);
    // Faces of length 2 that would be bigons if capped by a plain disk.
    std::vector<char> bigon_shape(nf, 0);
    for (int i = 0; i < nf; ++i) bigon_shape[i] = detail::bigon_at(skeleton, i).has_value();

    std::vector<int> choice(nf, 0);
    std::vector<RegionSurface> surf(nf);
    std::vector<int> image(nf);
    long total = 1;
    for (int i = 0; i < nf; ++i) total *= k;
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int i = nf - 1; i >= 0; --i) {
        choice[i] = static_cast<int>(c % k);
        c /= k;
      }
      bool minimal_rep = true;
      for (const auto& perm : autos) {
        for (int i = 0; i < nf; ++i) image[perm[i]] = choice[i];
        if (image < choice) {
          minimal_rep = false;
          break;
        }
      }
      if (!minimal_rep) continue;
      int mask = 0;
      bool has_bigon = false;
      for (int i = 0; i < nf; ++i) {
        surf[i] = menu_surface[choice[i]];
        if (choice[i] == 0) {
          mask |= 1 << i;
          if (bigon_shape[i]) has_bigon = true;
        }
      }
      if (filters.minimal && has_bigon) continue;
      if (filters.generic && (!generic_with_caps(cut_a, surf) || !generic_with_caps(cut_b, surf))) continue;
      CapAssignment caps;
      for (int i = 0; i < nf; ++i) caps[fs.faces[i].id] = menu[choice[i]];
      CorpusEntry e;
      e.instance = skeleton.with_caps(caps);
      e.overlay_index = oi;
      e.plain_mask = mask;
      e.cap_choice = choice;
      visit(e);
    }
  }
}

}  // namespace dehn
