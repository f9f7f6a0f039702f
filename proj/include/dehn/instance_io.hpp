#pragma once

// Line-oriented text format for instances ("surface-pair v1").

#include <fstream>
#include <iomanip>
#include <sstream>

#include "dehn/relabel.hpp"

namespace dehn {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Fact {
  std::string key;
  std::string value;
};

struct InstanceFile {
  Instance instance;
  std::vector<Fact> facts;

  const Fact* fact(const std::string& key) const {
    for (const Fact& f : facts)
      if (f.key == key) return &f;
    return nullptr;
  }
};

namespace detail {

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline int parse_int(const std::string& w, int line, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected integer for ") + what + ", got '" + w + "'");
  }
}

inline Port parse_port(const std::string& w, int line) {
  const auto dot = w.find('.');
  if (dot == std::string::npos) throw ParseError(line, "expected <crossing>.<slot>, got '" + w + "'");
  return Port{parse_int(w.substr(0, dot), line, "crossing"), parse_int(w.substr(dot + 1), line, "slot")};
}

inline int parse_sign(const std::string& w, int line) {
  if (w == "+") return 1;
  if (w == "-") return -1;
  throw ParseError(line, "expected sign + or -, got '" + w + "'");
}

inline Curve parse_curve(const std::string& w, int line) {
  if (w == "a") return Curve::A;
  if (w == "b") return Curve::B;
  throw ParseError(line, "expected curve a or b, got '" + w + "'");
}

inline Cap parse_cap(const std::vector<std::string>& w, int line) {
  const std::string& kind = w[2];
  auto want = [&](std::size_t n) {
    if (w.size() != 3 + n)
      throw ParseError(line, "cap kind " + kind + " takes " + std::to_string(n) + " parameter(s)");
  };
  auto nonneg = [&](std::size_t i, const char* what) {
    const int v = parse_int(w[i], line, what);
    if (v < 0) throw ParseError(line, std::string(what) + " must be nonnegative");
    return v;
  };
  if (kind == "PlainDisk") {
    want(0);
    return Cap::plain_disk();
  }
  if (kind == "PuncturedDisk") {
    want(1);
    const int k = nonneg(3, "puncture count");
    if (k < 1) throw ParseError(line, "PuncturedDisk needs at least one puncture");
    return Cap::punctured_disk(k);
  }
  if (kind == "BoundaryAnnulus") {
    want(0);
    return Cap::boundary_annulus();
  }
  if (kind == "Moebius") {
    want(1);
    return Cap::moebius(nonneg(3, "puncture count"));
  }
  if (kind == "Generic") {
    want(4);
    return Cap::generic(nonneg(3, "crosscaps"), nonneg(4, "handles"), nonneg(5, "punctures"), nonneg(6, "boundaries"));
  }
  throw ParseError(line, "unknown cap kind '" + kind + "'");
}

// Cyclic sequences equal up to rotation and reversal.
inline bool same_cycle(std::vector<int> x, const std::vector<int>& y) {
  if (x.size() != y.size()) return false;
  if (x.empty()) return true;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < x.size(); ++r) {
      if (std::equal(x.begin(), x.end(), y.begin())) return true;
      std::rotate(x.begin(), x.begin() + 1, x.end());
    }
    std::reverse(x.begin(), x.end());
  }
  return false;
}

}  // namespace detail

inline InstanceFile parse_instance(std::istream& in) {
  using namespace detail;
  struct EdgeLine {
    int id;
    Edge edge;
    int line;
  };
  struct CapLine {
    int face;
    std::vector<std::string> words;
    int line;
  };
  std::vector<EdgeLine> edge_lines;
  std::vector<CapLine> cap_lines;
  std::map<Curve, std::pair<std::vector<int>, int>> curve_lines;
  std::map<Curve, int> loops;
  std::optional<SurfaceKind> ambient;
  InstanceFile out;
  int crossings = -1, crossings_line = 0;
  bool header = false, in_facts = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto pct = raw.find('%'); pct != std::string::npos) raw.erase(pct);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (!header) {
      if (text != "surface-pair v1") throw ParseError(line, "expected header 'surface-pair v1'");
      header = true;
      continue;
    }
    if (in_facts) {
      const auto colon = text.find(':');
      if (colon == std::string::npos) throw ParseError(line, "fact lines have the form '<key>: <value>'");
      out.facts.push_back({trim(text.substr(0, colon)), trim(text.substr(colon + 1))});
      continue;
    }
    if (text == "facts:") {
      in_facts = true;
      continue;
    }
    auto w = split_words(text);
    const std::string& key = w[0];
    if (key == "crossings") {
      if (w.size() != 2) throw ParseError(line, "expected 'crossings <m>'");
      if (crossings >= 0) throw ParseError(line, "duplicate crossings line");
      crossings = parse_int(w[1], line, "crossing count");
      if (crossings < 0) throw ParseError(line, "crossing count must be nonnegative");
      crossings_line = line;
    } else if (key == "edge") {
      if (w.size() != 6) throw ParseError(line, "expected 'edge <id> <a|b> <v>.<slot> <v>.<slot> <+|->'");
      EdgeLine el{parse_int(w[1], line, "edge id"), {}, line};
      el.edge.curve = parse_curve(w[2], line);
      el.edge.ends = {parse_port(w[3], line), parse_port(w[4], line)};
      el.edge.sign = parse_sign(w[5], line);
      edge_lines.push_back(el);
    } else if (key == "curve") {
      if (w.size() < 2 || w[1].size() != 2 || w[1][1] != ':') throw ParseError(line, "expected 'curve <a|b>: <edges>'");
      const Curve c = parse_curve(w[1].substr(0, 1), line);
      if (curve_lines.contains(c)) throw ParseError(line, "duplicate curve line");
      std::vector<int> ids;
      for (std::size_t i = 2; i < w.size(); ++i) ids.push_back(parse_int(w[i], line, "edge id"));
      curve_lines[c] = {ids, line};
    } else if (key == "cap") {
      if (w.size() < 3) throw ParseError(line, "expected 'cap <faceId> <kind> [params]'");
      cap_lines.push_back({parse_int(w[1], line, "face id"), w, line});
    } else if (key == "loop") {
      if (w.size() != 3) throw ParseError(line, "expected 'loop <a|b> <+|->'");
      const Curve c = parse_curve(w[1], line);
      if (loops.contains(c)) throw ParseError(line, "duplicate loop line");
      loops[c] = parse_sign(w[2], line);
    } else if (key == "ambient") {
      if (w.size() != 5 || (w[1] != "orientable" && w[1] != "nonorientable"))
        throw ParseError(line, "expected 'ambient <orientable|nonorientable> <genus> <r> <s>'");
      SurfaceKind k;
      k.orientable = w[1] == "orientable";
      k.genus = parse_int(w[2], line, "genus");
      k.boundaries = parse_int(w[3], line, "boundaries");
      k.punctures = parse_int(w[4], line, "punctures");
      ambient = k;
    } else {
      throw ParseError(line, "unknown directive '" + key + "'");
    }
  }
  if (!header) throw ParseError(line, "empty file");
  if (crossings < 0) throw ParseError(line, "missing crossings line");

  if (crossings == 0) {
    if (!edge_lines.empty()) throw ParseError(edge_lines[0].line, "edges given with zero crossings");
    if (!cap_lines.empty()) throw ParseError(cap_lines[0].line, "cap references unknown face " + std::to_string(cap_lines[0].face));
    for (Curve c : {Curve::A, Curve::B})
      if (!loops.contains(c)) throw ParseError(crossings_line, std::string("missing 'loop ") + curve_letter(c) + "' line");
    out.instance = Instance(SignedOverlay::free_loops(loops[Curve::A], loops[Curve::B]), CapAssignment{}, ambient);
    return out;
  }
  if (!loops.empty()) throw ParseError(crossings_line, "loop lines are only allowed with zero crossings");
  if (ambient) throw ParseError(crossings_line, "ambient lines are only allowed with zero crossings");

  std::sort(edge_lines.begin(), edge_lines.end(), [](const EdgeLine& x, const EdgeLine& y) { return x.id < y.id; });
  std::map<int, int> index_of_id;
  std::vector<Edge> edges;
  for (const EdgeLine& el : edge_lines) {
    if (el.id < 0) throw ParseError(el.line, "edge id must be nonnegative");
    if (!index_of_id.emplace(el.id, static_cast<int>(edges.size())).second)
      throw ParseError(el.line, "duplicate edge id " + std::to_string(el.id));
    for (const Port& p : el.edge.ends)
      if (p.crossing < 0 || p.crossing >= crossings || p.slot < 0 || p.slot > 3)
        throw ParseError(el.line, "port out of range");
    edges.push_back(el.edge);
  }
  SignedOverlay overlay(crossings, std::move(edges));
  const ValidationReport structural = validate_overlay(overlay);
  if (!structural.ok()) throw ParseError(crossings_line, "invalid overlay: " + structural.str());

  for (Curve c : {Curve::A, Curve::B}) {
    auto it = curve_lines.find(c);
    if (it == curve_lines.end()) throw ParseError(line, std::string("missing 'curve ") + curve_letter(c) + ":' line");
    std::vector<int> idx;
    for (int id : it->second.first) {
      auto e = index_of_id.find(id);
      if (e == index_of_id.end()) throw ParseError(it->second.second, "curve references unknown edge " + std::to_string(id));
      if (overlay.edge(e->second).curve != c)
        throw ParseError(it->second.second, "edge " + std::to_string(id) + " belongs to the other curve");
      idx.push_back(e->second);
    }
    if (!same_cycle(idx, walk_curve(overlay, c).edges))
      throw ParseError(it->second.second, "curve edge list does not match the traversal order");
  }

  const FaceStructure fs = trace_faces(overlay);
  CapAssignment caps;
  for (const CapLine& cl : cap_lines) {
    if (fs.index_of_id(cl.face) < 0)
      throw ParseError(cl.line, "cap references unknown face " + std::to_string(cl.face));
    const Cap cap = parse_cap(cl.words, cl.line);
    if (!caps.emplace(cl.face, cap).second) throw ParseError(cl.line, "duplicate cap for face " + std::to_string(cl.face));
  }
  for (const Face& f : fs.faces)
    if (!caps.contains(f.id)) throw ParseError(line, "cap coverage: face " + std::to_string(f.id) + " has no cap");
  out.instance = normalize_signs(Instance(std::move(overlay), caps));
  return out;
}

inline InstanceFile parse_instance_text(const std::string& text) {
  std::istringstream is(text);
  return parse_instance(is);
}

inline InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_instance(in);
}

inline std::string cap_text(const Cap& c) {
  const Cap k = Cap::from_surface(c.surface());
  switch (k.kind) {
    case CapKind::PlainDisk: return "PlainDisk";
    case CapKind::PuncturedDisk: return "PuncturedDisk " + std::to_string(k.punctures);
    case CapKind::BoundaryAnnulus: return "BoundaryAnnulus";
    case CapKind::Moebius: return "Moebius " + std::to_string(k.punctures);
    case CapKind::Generic:
      return "Generic " + std::to_string(k.crosscaps) + " " + std::to_string(k.handles) + " " +
             std::to_string(k.punctures) + " " + std::to_string(k.boundaries);
  }
  return "";
}

inline std::string serialize(const Instance& inst, const std::vector<Fact>& facts = {}) {
  std::ostringstream os;
  const SignedOverlay& o = inst.overlay();
  os << "surface-pair v1\n";
  os << "crossings " << o.crossings() << "\n";
  if (o.crossings() == 0) {
    for (Curve c : {Curve::A, Curve::B})
      os << "loop " << curve_letter(c) << " " << (o.free_loop_sign(c) > 0 ? '+' : '-') << "\n";
    if (const auto& k = inst.stored_ambient())
      os << "ambient " << (k->orientable ? "orientable" : "nonorientable") << " " << k->genus << " "
         << k->boundaries << " " << k->punctures << "\n";
  } else {
    for (int e = 0; e < static_cast<int>(o.edges().size()); ++e) {
      const Edge& ed = o.edge(e);
      os << "edge " << e << " " << curve_letter(ed.curve) << " " << ed.ends[0].crossing << "." << ed.ends[0].slot
         << " " << ed.ends[1].crossing << "." << ed.ends[1].slot << " " << (ed.sign > 0 ? '+' : '-') << "\n";
    }
    for (Curve c : {Curve::A, Curve::B}) {
      os << "curve " << curve_letter(c) << ":";
      for (int e : walk_curve(o, c).edges) os << " " << e;
      os << "\n";
    }
    for (const auto& [id, cap] : inst.caps()) os << "cap " << id << " " << cap_text(cap) << "\n";
  }
  if (!facts.empty()) {
    os << "facts:\n";
    for (const Fact& f : facts) os << f.key << ": " << f.value << "\n";
  }
  return os.str();
}

inline std::string canonicalize(const std::string& text) {
  const InstanceFile f = parse_instance_text(text);
  return serialize(f.instance, f.facts);
}

}  // namespace dehn
