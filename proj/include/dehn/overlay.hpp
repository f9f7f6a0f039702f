#pragma once

// Two transverse closed curves on a surface, stored as a signed rotation
// system on their 4-valent union, plus face tracing over the flag model.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dehn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// C appears only in intermediate three-curve overlays.
enum class Curve : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr Curve other(Curve c) { return c == Curve::A ? Curve::B : Curve::A; }
inline constexpr int index(Curve c) { return static_cast<int>(c); }
inline char curve_letter(Curve c) { return "abc"[index(c)]; }

// A half-edge slot: crossing id and rotation position 0..3.
struct Port {
  int crossing = 0;
  int slot = 0;

  int halfedge() const { return 4 * crossing + slot; }
  friend bool operator==(const Port&, const Port&) = default;
};

struct Edge {
  Curve curve = Curve::A;
  std::array<Port, 2> ends{};
  int sign = 1;  // -1: local orientation flips along the edge
};

inline int slot_add(int slot, int k) { return ((slot + k) % 4 + 4) % 4; }

// Flags are (half-edge, side); side 0 points toward slot+1 in the rotation at
// the half-edge's crossing, side 1 toward slot-1.
inline int flag_of(int halfedge, int side) { return 2 * halfedge + side; }
inline int flag_halfedge(int flag) { return flag / 2; }
inline int flag_side(int flag) { return flag % 2; }

class SignedOverlay {
 public:
  SignedOverlay() = default;

  SignedOverlay(int crossings, std::vector<Edge> edges)
      : crossings_(crossings), edges_(std::move(edges)) {
    if (crossings_ < 0) throw Error("negative crossing count");
    index_ports();
  }

  // m = 0: two disjoint loops carrying their own sidedness (+1 two-sided).
  static SignedOverlay free_loops(int sign_a, int sign_b) {
    SignedOverlay o;
    o.loop_sign_ = {sign_a, sign_b};
    return o;
  }

  int crossings() const { return crossings_; }
  int halfedges() const { return 4 * crossings_; }
  int flags() const { return 8 * crossings_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_.at(id); }
  int free_loop_sign(Curve c) const { return loop_sign_[index(c)]; }

  // -1 when the slot is unused (only possible for malformed input).
  int edge_at(int halfedge) const { return he_edge_[halfedge]; }
  int end_at(int halfedge) const { return he_end_[halfedge]; }
  int edge_at(Port p) const { return edge_at(p.halfedge()); }

  // Half-edge at the far end of the edge leaving `halfedge`.
  int opposite(int halfedge) const {
    const Edge& e = edges_[he_edge_[halfedge]];
    return e.ends[1 - he_end_[halfedge]].halfedge();
  }
  int sign_at(int halfedge) const { return edges_[he_edge_[halfedge]].sign; }
  Curve curve_at(int halfedge) const { return edges_[he_edge_[halfedge]].curve; }

  // Which slot parity (0 or 1) curve A occupies at a crossing; -1 if mixed.
  int a_parity(int crossing) const {
    const int h = 4 * crossing;
    if (he_edge_[h] < 0 || he_edge_[h + 1] < 0) return -1;
    return curve_at(h) == Curve::A ? 0 : 1;
  }

  bool ports_well_formed() const { return ports_ok_; }

  // Gmap involutions on flags.
  int alpha0(int flag) const {
    const int h = flag_halfedge(flag), t = flag_side(flag);
    const int t2 = sign_at(h) > 0 ? 1 - t : t;
    return flag_of(opposite(h), t2);
  }
  static int alpha1(int flag) {
    const int h = flag_halfedge(flag), t = flag_side(flag);
    const int v = h / 4, s = h % 4;
    return t == 0 ? flag_of(4 * v + slot_add(s, 1), 1) : flag_of(4 * v + slot_add(s, -1), 0);
  }
  static int alpha2(int flag) { return flag ^ 1; }

 private:
  void index_ports() {
    he_edge_.assign(4 * crossings_, -1);
    he_end_.assign(4 * crossings_, -1);
    ports_ok_ = true;
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      for (int k = 0; k < 2; ++k) {
        const Port& p = edges_[i].ends[k];
        if (p.crossing < 0 || p.crossing >= crossings_ || p.slot < 0 || p.slot > 3) {
          ports_ok_ = false;
          continue;
        }
        const int h = p.halfedge();
        if (he_edge_[h] >= 0) {
          ports_ok_ = false;
          continue;
        }
        he_edge_[h] = i;
        he_end_[h] = k;
      }
    }
    for (int h : he_edge_)
      if (h < 0) ports_ok_ = false;
  }

  int crossings_ = 0;
  std::vector<Edge> edges_;
  std::array<int, 2> loop_sign_{1, 1};
  std::vector<int> he_edge_;
  std::vector<int> he_end_;
  bool ports_ok_ = true;
};

// Straight-through traversal of one curve: the sequence of edges and, for each
// edge, the half-edge it is entered from.
struct CurveWalk {
  std::vector<int> edges;
  std::vector<int> start_halfedges;  // half-edge at which each edge is entered
};

// Walks the curve starting from the lowest-numbered half-edge it owns at the
// lowest crossing. Throws if the curve is not a single closed cycle covering
// `expected_edges` edges.
inline CurveWalk walk_curve(const SignedOverlay& o, Curve c) {
  CurveWalk w;
  if (o.crossings() == 0) return w;
  int start = -1;
  for (int h = 0; h < o.halfedges() && start < 0; ++h)
    if (o.edge_at(h) >= 0 && o.curve_at(h) == c) start = h;
  if (start < 0) throw Error(std::string("curve ") + curve_letter(c) + " has no edges");
  int h = start;
  const int limit = static_cast<int>(o.edges().size()) + 1;
  do {
    w.edges.push_back(o.edge_at(h));
    w.start_halfedges.push_back(h);
    const int arrive = o.opposite(h);
    const int v = arrive / 4, s = arrive % 4;
    h = 4 * v + slot_add(s, 2);
    if (o.edge_at(h) < 0 || o.curve_at(h) != c)
      throw Error(std::string("curve ") + curve_letter(c) + " does not pass straight through");
    if (static_cast<int>(w.edges.size()) > limit) throw Error("curve walk does not close");
  } while (h != start);
  return w;
}

inline int sign_product(const SignedOverlay& o, const std::vector<int>& edges) {
  int s = 1;
  for (int e : edges) s *= o.edge(e).sign;
  return s;
}

// ---------------------------------------------------------------------------
// Faces

struct Face {
  int id = 0;               // minimal flag in the orbit
  std::vector<int> flags;   // orbit order: f, a0 f, a1 a0 f, ...
  int length() const { return static_cast<int>(flags.size()) / 2; }
  // Edge ids in walk order.
  std::vector<int> walk(const SignedOverlay& o) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < flags.size(); i += 2) out.push_back(o.edge_at(flag_halfedge(flags[i])));
    return out;
  }
  // The flag class that contains `id` (even positions in the orbit).
  bool canonical_class(std::size_t pos) const { return pos % 2 == 0; }
};

struct FaceStructure {
  std::vector<Face> faces;          // sorted by id
  std::vector<int> face_of_flag;    // face index per flag
  std::vector<std::uint8_t> parity_of_flag;  // 0 if in the face's canonical class

  int index_of_id(int id) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i].id == id) return static_cast<int>(i);
    return -1;
  }
  int total_length() const {
    int s = 0;
    for (const Face& f : faces) s += f.length();
    return s;
  }
};

inline FaceStructure trace_faces(const SignedOverlay& o) {
  if (!o.ports_well_formed()) throw Error("malformed overlay: half-edge slots not matched");
  FaceStructure fs;
  const int nf = o.flags();
  fs.face_of_flag.assign(nf, -1);
  fs.parity_of_flag.assign(nf, 0);
  for (int f0 = 0; f0 < nf; ++f0) {
    if (fs.face_of_flag[f0] >= 0) continue;
    Face face;
    face.id = f0;
    const int idx = static_cast<int>(fs.faces.size());
    int f = f0;
    bool use0 = true;
    do {
      fs.face_of_flag[f] = idx;
      fs.parity_of_flag[f] = static_cast<std::uint8_t>(face.flags.size() % 2);
      face.flags.push_back(f);
      f = use0 ? o.alpha0(f) : SignedOverlay::alpha1(f);
      use0 = !use0;
    } while (f != f0);
    fs.faces.push_back(std::move(face));
  }
  // f0 ascending means ids are already sorted and each orbit starts at its min.
  return fs;
}

}  // namespace dehn
