#pragma once

#include <string>
#include <vector>

#include "dehn/checks.hpp"
#include "dehn/corpus.hpp"

namespace dehn::testing {

inline Instance golden(const std::string& name) {
  return load_instance((corpus_dir() / "goldens" / name).string()).instance;
}

inline InstanceFile golden_file(const std::string& name) {
  return load_instance((corpus_dir() / "goldens" / name).string());
}

// Single-crossing pair with the given edge signs and one cap per face.
inline Instance one_crossing(int sign_a, int sign_b, const std::vector<Cap>& caps) {
  SignedOverlay o(1, {Edge{Curve::A, {Port{0, 0}, Port{0, 2}}, sign_a}, Edge{Curve::B, {Port{0, 1}, Port{0, 3}}, sign_b}});
  const FaceStructure fs = trace_faces(o);
  CapAssignment c;
  for (std::size_t i = 0; i < fs.faces.size(); ++i) c[fs.faces[i].id] = caps.at(i);
  return Instance(o, c);
}

// Filtered corpus for m = 0..max_m, built once per process.
inline const std::vector<Instance>& corpus(int max_m = 3) {
  static std::map<int, std::vector<Instance>> cache;
  auto& v = cache[max_m];
  if (v.empty())
    for (int m = 0; m <= max_m; ++m)
      enumerate_instances(m, EnumerationFilters{}, [&](const CorpusEntry& e) { v.push_back(e.instance); });
  return v;
}

inline std::string text(const Instance& inst) { return serialize(inst); }

}  // namespace dehn::testing
