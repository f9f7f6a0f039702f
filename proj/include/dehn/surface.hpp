#pragma once

// Caps glued onto overlay faces, the assembled surface, and its topology:
// classification, curve sidedness, complements and genericity.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dehn/overlay.hpp"

namespace dehn {

// Compact surface type; punctures are marked points and do not change euler().
struct SurfaceKind {
  bool orientable = true;
  int genus = 0;  // handles if orientable, crosscaps otherwise
  int boundaries = 0;
  int punctures = 0;

  int euler() const { return (orientable ? 2 - 2 * genus : 2 - genus) - boundaries; }
  friend bool operator==(const SurfaceKind&, const SurfaceKind&) = default;

  std::string str() const {
    std::ostringstream os;
    os << (orientable ? "orientable" : "nonorientable") << " genus=" << genus << " r=" << boundaries
       << " s=" << punctures;
    return os.str();
  }
};

inline std::ostream& operator<<(std::ostream& os, const SurfaceKind& k) { return os << k.str(); }

// The surface glued in along `attached` face walks. Boundaries count only the
// boundary components of the ambient surface lying in the region.
struct RegionSurface {
  bool orientable = true;
  int genus = 0;
  int punctures = 0;
  int boundaries = 0;

  int euler(int attached) const {
    return (orientable ? 2 - 2 * genus : 2 - genus) - attached - boundaries;
  }
  bool is_plain_disk() const { return orientable && genus == 0 && punctures == 0 && boundaries == 0; }
  friend bool operator==(const RegionSurface&, const RegionSurface&) = default;
};

enum class CapKind { PlainDisk, PuncturedDisk, BoundaryAnnulus, Moebius, Generic };

struct Cap {
  CapKind kind = CapKind::PlainDisk;
  int crosscaps = 0;
  int handles = 0;
  int punctures = 0;
  int boundaries = 0;

  static Cap plain_disk() { return {}; }
  static Cap punctured_disk(int k) { return {CapKind::PuncturedDisk, 0, 0, k, 0}; }
  static Cap boundary_annulus() { return {CapKind::BoundaryAnnulus, 0, 0, 0, 1}; }
  static Cap moebius(int k) { return {CapKind::Moebius, 1, 0, k, 0}; }
  static Cap generic(int c, int h, int p, int b) { return {CapKind::Generic, c, h, p, b}; }

  RegionSurface surface() const {
    if (crosscaps > 0) return {false, crosscaps + 2 * handles, punctures, boundaries};
    return {true, handles, punctures, boundaries};
  }

  // Canonical cap for a one-boundary region surface.
  static Cap from_surface(const RegionSurface& s) {
    if (s.orientable && s.genus == 0 && s.boundaries == 0)
      return s.punctures == 0 ? plain_disk() : punctured_disk(s.punctures);
    if (s.orientable && s.genus == 0 && s.punctures == 0 && s.boundaries == 1) return boundary_annulus();
    if (!s.orientable && s.genus == 1 && s.boundaries == 0) return moebius(s.punctures);
    return s.orientable ? generic(0, s.genus, s.punctures, s.boundaries)
                        : generic(s.genus, 0, s.punctures, s.boundaries);
  }

  friend bool operator==(const Cap& x, const Cap& y) { return x.surface() == y.surface(); }
};

// Keyed by canonical face id (minimal flag of the face).
using CapAssignment = std::map<int, Cap>;

// A complementary region: a surface glued along one or more face walks.
// `reversed[i]` records, for orientable regions, whether the region's
// orientation induces the non-canonical flag class on faces[i].
struct Region {
  RegionSurface surface;
  std::vector<int> faces;  // face indices
  std::vector<std::uint8_t> reversed;

  int euler() const { return surface.euler(static_cast<int>(faces.size())); }
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const {
    if (ok()) return "pass";
    std::string s;
    for (const auto& v : violations) s += (s.empty() ? "" : "; ") + v;
    return s;
  }
};

inline ValidationReport validate_overlay(const SignedOverlay& o) {
  ValidationReport r;
  const int m = o.crossings();
  if (m == 0) {
    if (!o.edges().empty()) r.violations.push_back("cycle structure: edges present with zero crossings");
    for (Curve c : {Curve::A, Curve::B})
      if (std::abs(o.free_loop_sign(c)) != 1) r.violations.push_back("sign: free loop sign must be +1 or -1");
    return r;
  }
  for (const Edge& e : o.edges())
    if (e.sign != 1 && e.sign != -1) r.violations.push_back("sign: edge sign must be +1 or -1");
  if (!o.ports_well_formed()) {
    r.violations.push_back("valence: every crossing needs exactly four distinct incident half-edges");
    return r;
  }
  for (int v = 0; v < m; ++v) {
    const int h = 4 * v;
    const Curve c0 = o.curve_at(h), c1 = o.curve_at(h + 1);
    if (c0 == c1 || o.curve_at(h + 2) != c0 || o.curve_at(h + 3) != c1) {
      r.violations.push_back("transversality: crossing " + std::to_string(v) +
                             " must have one curve on slots {0,2} and the other on {1,3}");
    }
  }
  if (!r.ok()) return r;
  for (Curve c : {Curve::A, Curve::B}) {
    int count = 0;
    for (const Edge& e : o.edges()) count += e.curve == c;
    try {
      const CurveWalk w = walk_curve(o, c);
      if (static_cast<int>(w.edges.size()) != count)
        r.violations.push_back(std::string("cycle structure: curve ") + curve_letter(c) + " is not a single cycle");
    } catch (const Error& ex) {
      r.violations.push_back(std::string("cycle structure: ") + ex.what());
    }
    if (count != m)
      r.violations.push_back(std::string("cycle structure: curve ") + curve_letter(c) + " must have exactly " +
                             std::to_string(m) + " edges");
  }
  return r;
}

inline ValidationReport validate(const SignedOverlay& o, const CapAssignment& caps) {
  ValidationReport r = validate_overlay(o);
  if (!r.ok() || o.crossings() == 0) {
    if (o.crossings() == 0 && !caps.empty()) r.violations.push_back("cap coverage: caps given for an overlay without faces");
    return r;
  }
  const FaceStructure fs = trace_faces(o);
  for (const Face& f : fs.faces)
    if (!caps.contains(f.id)) r.violations.push_back("cap coverage: face " + std::to_string(f.id) + " has no cap");
  for (const auto& [id, cap] : caps) {
    if (fs.index_of_id(id) < 0) r.violations.push_back("cap coverage: cap for unknown face " + std::to_string(id));
    const RegionSurface s = cap.surface();
    if (s.genus < 0 || s.punctures < 0 || s.boundaries < 0 || cap.handles < 0)
      r.violations.push_back("cap parameters must be nonnegative");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Instance: overlay + complementary regions. Immutable after construction.

class Instance {
 public:
  Instance() = default;

  // Every face gets its own single-face region from `caps`.
  Instance(SignedOverlay overlay, const CapAssignment& caps, std::optional<SurfaceKind> ambient = std::nullopt)
      : overlay_(std::move(overlay)), ambient_(ambient) {
    const ValidationReport rep = validate(overlay_, caps);
    if (!rep.ok()) throw Error("invalid instance: " + rep.str());
    if (overlay_.crossings() > 0) ambient_.reset();
    faces_ = std::make_shared<const FaceStructure>(trace_faces(overlay_));
    region_of_face_.resize(faces_->faces.size());
    for (std::size_t i = 0; i < faces_->faces.size(); ++i) {
      regions_.push_back(Region{caps.at(faces_->faces[i].id).surface(), {static_cast<int>(i)}, {0}});
      region_of_face_[i] = static_cast<int>(i);
    }
  }

  // General form; used by constructions that merge regions.
  Instance(SignedOverlay overlay, std::shared_ptr<const FaceStructure> faces, std::vector<Region> regions,
           std::optional<SurfaceKind> ambient)
      : overlay_(std::move(overlay)), faces_(std::move(faces)), regions_(std::move(regions)), ambient_(ambient) {
    if (!faces_) faces_ = std::make_shared<const FaceStructure>(trace_faces(overlay_));
    region_of_face_.assign(faces_->faces.size(), -1);
    for (std::size_t r = 0; r < regions_.size(); ++r)
      for (int f : regions_[r].faces) {
        if (region_of_face_.at(f) >= 0) throw Error("face assigned to two regions");
        region_of_face_[f] = static_cast<int>(r);
      }
    for (int r : region_of_face_)
      if (r < 0) throw Error("cap coverage: face without region");
  }

  // Same overlay, new caps; reuses the traced faces.
  Instance with_caps(const CapAssignment& caps) const {
    std::vector<Region> regs;
    for (std::size_t i = 0; i < faces_->faces.size(); ++i) {
      auto it = caps.find(faces_->faces[i].id);
      if (it == caps.end()) throw Error("cap coverage: face " + std::to_string(faces_->faces[i].id) + " has no cap");
      regs.push_back(Region{it->second.surface(), {static_cast<int>(i)}, {0}});
    }
    return Instance(overlay_, faces_, std::move(regs), ambient_);
  }

  const SignedOverlay& overlay() const { return overlay_; }
  const FaceStructure& faces() const { return *faces_; }
  std::shared_ptr<const FaceStructure> faces_ptr() const { return faces_; }
  const std::vector<Region>& regions() const { return regions_; }
  const Region& region_of_face(int face_index) const { return regions_[region_of_face_[face_index]]; }
  int region_index(int face_index) const { return region_of_face_[face_index]; }
  const std::optional<SurfaceKind>& stored_ambient() const { return ambient_; }
  int crossings() const { return overlay_.crossings(); }

  bool single_face_regions() const {
    return std::all_of(regions_.begin(), regions_.end(), [](const Region& r) { return r.faces.size() == 1; });
  }

  // Only defined when every region is a single face.
  CapAssignment caps() const {
    CapAssignment out;
    for (const Region& r : regions_) {
      if (r.faces.size() != 1) throw Error("region spans several faces; no per-face cap form");
      out[faces_->faces[r.faces[0]].id] = Cap::from_surface(r.surface);
    }
    return out;
  }

  // A face whose region is a plain disk glued along that face alone.
  bool face_is_plain_disk(int face_index) const {
    const Region& r = region_of_face(face_index);
    return r.faces.size() == 1 && r.surface.is_plain_disk();
  }

 private:
  SignedOverlay overlay_;
  std::shared_ptr<const FaceStructure> faces_ = std::make_shared<const FaceStructure>();
  std::vector<Region> regions_;
  std::vector<int> region_of_face_;
  std::optional<SurfaceKind> ambient_;
};

// ---------------------------------------------------------------------------
// Parity union-find: tracks whether two flags carry equal or opposite colours.

class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::pair<int, int> find(int x) {
    int p = 0;
    int r = x;
    while (parent_[r] != r) {
      p ^= parity_[r];
      r = parent_[r];
    }
    // path compression
    int acc = p;
    while (parent_[x] != x) {
      const int next = parent_[x];
      const int px = parity_[x];
      parent_[x] = r;
      parity_[x] = acc;
      acc ^= px;
      x = next;
    }
    return {r, p};
  }

  // Returns false on a parity contradiction.
  bool unite(int x, int y, int parity) {
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) return (px ^ py) == parity;
    parent_[rx] = ry;
    parity_[rx] = px ^ py ^ parity;
    return true;
  }

  int root(int x) { return find(x).first; }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

namespace detail {

// Adds the orientation constraint of every orientable multi-face region.
// Returns false if contradictory.
inline bool link_regions(const Instance& inst, ParityUnionFind& uf) {
  bool ok = true;
  for (const Region& r : inst.regions()) {
    if (!r.surface.orientable || r.faces.size() < 2) continue;
    const int f0 = inst.faces().faces[r.faces[0]].id;
    for (std::size_t i = 1; i < r.faces.size(); ++i) {
      const int fi = inst.faces().faces[r.faces[i]].id;
      ok = uf.unite(f0, fi, r.reversed[0] ^ r.reversed[i]) && ok;
    }
  }
  return ok;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ambient classification

inline SurfaceKind classify_ambient(const Instance& inst) {
  const SignedOverlay& o = inst.overlay();
  if (o.crossings() == 0) {
    if (!inst.stored_ambient()) throw Error("disjoint curves carry no ambient surface data");
    return *inst.stored_ambient();
  }
  const int nf = o.flags();
  ParityUnionFind uf(nf);
  bool orientable = true;
  for (int f = 0; f < nf; ++f) {
    orientable = uf.unite(f, o.alpha0(f), 1) && orientable;
    orientable = uf.unite(f, SignedOverlay::alpha1(f), 1) && orientable;
    orientable = uf.unite(f, SignedOverlay::alpha2(f), 1) && orientable;
  }
  orientable = detail::link_regions(inst, uf) && orientable;
  int euler = o.crossings() - static_cast<int>(o.edges().size());
  SurfaceKind k;
  for (const Region& r : inst.regions()) {
    euler += r.euler();
    if (!r.surface.orientable) orientable = false;
    k.boundaries += r.surface.boundaries;
    k.punctures += r.surface.punctures;
  }
  k.orientable = orientable;
  const int closed = euler + k.boundaries;  // 2 - 2g or 2 - g
  k.genus = orientable ? (2 - closed) / 2 : 2 - closed;
  if ((orientable && (2 - closed) % 2 != 0) || k.genus < 0 || (!orientable && k.genus < 1))
    throw Error("inconsistent Euler characteristic for assembled surface");
  return k;
}

// ---------------------------------------------------------------------------
// Sidedness of closed walks

enum class Sidedness { OneSided, TwoSided };

inline const char* to_string(Sidedness s) { return s == Sidedness::OneSided ? "one-sided" : "two-sided"; }

// `edges` must form a closed walk passing straight through every crossing.
inline Sidedness cycle_sidedness(const SignedOverlay& o, const std::vector<int>& edges) {
  if (edges.empty()) throw Error("empty walk");
  // Check straightness: consecutive edges meet at opposite slots of a crossing.
  const int n = static_cast<int>(edges.size());
  // Orient the first edge so that it connects to the second.
  auto ports_of = [&](int e) { return o.edge(e).ends; };
  int cur_end = 1;  // we leave edge 0 through its ends[cur_end]
  if (n > 1) {
    auto p0 = ports_of(edges[0]);
    auto p1 = ports_of(edges[1]);
    auto meets = [&](Port x, const std::array<Port, 2>& ys) {
      for (const Port& y : ys)
        if (y.crossing == x.crossing && slot_add(y.slot, 2) == x.slot) return true;
      return false;
    };
    if (meets(p0[1], p1)) cur_end = 1;
    else if (meets(p0[0], p1)) cur_end = 0;
    else throw Error("walk not straight-through");
  }
  for (int i = 0; i < n; ++i) {
    const Port out = ports_of(edges[i])[cur_end];
    const auto nxt = ports_of(edges[(i + 1) % n]);
    int next_end = -1;
    for (int k = 0; k < 2; ++k)
      if (nxt[k].crossing == out.crossing && slot_add(nxt[k].slot, 2) == out.slot) next_end = 1 - k;
    if (next_end < 0) throw Error("walk not straight-through");
    cur_end = next_end;
  }
  return sign_product(o, edges) < 0 ? Sidedness::OneSided : Sidedness::TwoSided;
}

inline Sidedness curve_sidedness(const SignedOverlay& o, Curve c) {
  if (o.crossings() == 0) return o.free_loop_sign(c) < 0 ? Sidedness::OneSided : Sidedness::TwoSided;
  const CurveWalk w = walk_curve(o, c);
  return sign_product(o, w.edges) < 0 ? Sidedness::OneSided : Sidedness::TwoSided;
}

// ---------------------------------------------------------------------------
// Complement of one curve

struct ComplementPiece {
  SurfaceKind kind;        // boundaries include the copies of the cut curve
  int curve_copies = 0;    // boundary circles coming from the cut curve
};

inline std::vector<ComplementPiece> classify_complement(const Instance& inst, Curve cut) {
  const SignedOverlay& o = inst.overlay();
  if (o.crossings() == 0) throw Error("disjoint curves carry no complement data");
  const int nf = o.flags();
  auto is_cut = [&](int flag) { return o.curve_at(flag_halfedge(flag)) == cut; };

  ParityUnionFind uf(nf);
  bool orientable_all = true;
  std::vector<std::uint8_t> bad_component;  // filled after
  std::vector<int> contradiction_flags;
  for (int f = 0; f < nf; ++f) {
    if (!uf.unite(f, o.alpha0(f), 1)) contradiction_flags.push_back(f);
    if (!uf.unite(f, SignedOverlay::alpha1(f), 1)) contradiction_flags.push_back(f);
    if (!is_cut(f) && !uf.unite(f, SignedOverlay::alpha2(f), 1)) contradiction_flags.push_back(f);
  }
  for (const Region& r : inst.regions()) {
    const int f0 = inst.faces().faces[r.faces[0]].id;
    for (std::size_t i = 1; i < r.faces.size(); ++i) {
      const int fi = inst.faces().faces[r.faces[i]].id;
      if (r.surface.orientable) {
        if (!uf.unite(f0, fi, r.reversed[0] ^ r.reversed[i])) contradiction_flags.push_back(f0);
      } else {
        // connect without constraining orientation: parity is irrelevant here
        // because the component is nonorientable anyway.
        const auto [ra, pa] = uf.find(f0);
        const auto [rb, pb] = uf.find(fi);
        if (ra != rb) uf.unite(f0, fi, 0);
      }
    }
  }
  (void)orientable_all;

  std::map<int, int> comp_index;
  std::vector<ComplementPiece> pieces;
  std::vector<int> euler;
  std::vector<bool> nonorientable;
  auto comp_of = [&](int flag) {
    const int root = uf.root(flag);
    auto [it, inserted] = comp_index.try_emplace(root, static_cast<int>(pieces.size()));
    if (inserted) {
      pieces.emplace_back();
      euler.push_back(0);
      nonorientable.push_back(false);
    }
    return it->second;
  };
  for (int f = 0; f < nf; ++f) comp_of(f);
  for (int f : contradiction_flags) nonorientable[comp_of(f)] = true;

  // vertex pieces: orbits of <a1, a2 on uncut half-edges> within each crossing
  {
    std::vector<std::uint8_t> seen(nf, 0);
    for (int f = 0; f < nf; ++f) {
      if (seen[f]) continue;
      std::vector<int> stack{f};
      seen[f] = 1;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        int nbrs[2] = {SignedOverlay::alpha1(x), is_cut(x) ? x : SignedOverlay::alpha2(x)};
        for (int y : nbrs)
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
      }
      euler[comp_of(f)] += 1;
    }
  }
  // edge pieces
  for (int e = 0; e < static_cast<int>(o.edges().size()); ++e) {
    const Edge& ed = o.edge(e);
    const int h = ed.ends[0].halfedge();
    if (ed.curve == cut) {
      euler[comp_of(flag_of(h, 0))] -= 1;
      euler[comp_of(flag_of(h, 1))] -= 1;
    } else {
      euler[comp_of(flag_of(h, 0))] -= 1;
    }
  }
  for (const Region& r : inst.regions()) {
    const int c = comp_of(inst.faces().faces[r.faces[0]].id);
    euler[c] += r.euler();
    pieces[c].kind.boundaries += r.surface.boundaries;
    pieces[c].kind.punctures += r.surface.punctures;
    if (!r.surface.orientable) nonorientable[c] = true;
  }
  // boundary circles from the cut: flags on cut half-edges, linked along edges
  // by a0 and straight through crossings.
  {
    std::vector<std::uint8_t> seen(nf, 0);
    for (int f = 0; f < nf; ++f) {
      if (seen[f] || !is_cut(f)) continue;
      std::vector<int> stack{f};
      seen[f] = 1;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        const int h = flag_halfedge(x), t = flag_side(x);
        const int v = h / 4, s = h % 4;
        const int straight = flag_of(4 * v + slot_add(s, 2), 1 - t);
        int nbrs[2] = {o.alpha0(x), straight};
        for (int y : nbrs)
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
      }
      pieces[comp_of(f)].curve_copies += 1;
    }
  }
  for (std::size_t c = 0; c < pieces.size(); ++c) {
    SurfaceKind& k = pieces[c].kind;
    k.boundaries += pieces[c].curve_copies;
    k.orientable = !nonorientable[c];
    const int closed = euler[c] + k.boundaries;
    k.genus = k.orientable ? (2 - closed) / 2 : 2 - closed;
    if ((k.orientable && (2 - closed) % 2 != 0) || k.genus < 0 || (!k.orientable && k.genus < 1))
      throw Error("inconsistent Euler characteristic in complement");
  }
  return pieces;
}

// True iff the piece is bounded by the cut curve alone and is a disk with at
// most one puncture or an unpunctured Moebius band.
inline bool bounds_excluded_piece(const ComplementPiece& p) {
  if (p.curve_copies != 1 || p.kind.boundaries != 1) return false;
  if (p.kind.orientable && p.kind.genus == 0 && p.kind.punctures <= 1) return true;
  if (!p.kind.orientable && p.kind.genus == 1 && p.kind.punctures == 0) return true;
  return false;
}

inline bool is_generic(const Instance& inst, Curve c) {
  for (const ComplementPiece& p : classify_complement(inst, c))
    if (bounds_excluded_piece(p)) return false;
  return true;
}

}  // namespace dehn
