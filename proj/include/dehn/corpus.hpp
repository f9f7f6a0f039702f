#pragma once

// Golden instance files on disk and the checks attached to them.

#include <cstdlib>
#include <filesystem>

#include "dehn/instance_io.hpp"
#include "dehn/twist.hpp"

#ifndef DEHN_DEFAULT_CORPUS_DIR
#define DEHN_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace dehn {

namespace fsys = std::filesystem;

// Search roots in order: $DEHN_CORPUS_DIR, then the built-in default.
inline std::vector<fsys::path> corpus_roots() {
  std::vector<fsys::path> roots;
  if (const char* env = std::getenv("DEHN_CORPUS_DIR"); env && *env) roots.emplace_back(env);
  roots.emplace_back(DEHN_DEFAULT_CORPUS_DIR);
  return roots;
}

inline fsys::path corpus_dir() {
  for (const fsys::path& r : corpus_roots())
    if (fsys::is_directory(r)) return r;
  return corpus_roots().front();
}

// A path as given, or relative to the first corpus root containing it.
inline fsys::path resolve_instance_path(const std::string& arg) {
  if (fsys::exists(arg)) return arg;
  for (const fsys::path& r : corpus_roots())
    if (fsys::exists(r / arg)) return r / arg;
  throw Error("no such instance file: " + arg);
}

inline std::vector<fsys::path> golden_files(const fsys::path& root = corpus_dir()) {
  std::vector<fsys::path> out;
  const fsys::path dir = root / "goldens";
  if (!fsys::is_directory(dir)) return out;
  for (const auto& e : fsys::directory_iterator(dir))
    if (e.path().extension() == ".sp") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Problems with one golden file: parse, provenance, minimality, recorded class.
inline std::vector<std::string> check_golden(const fsys::path& path) {
  std::vector<std::string> problems;
  InstanceFile f;
  try {
    f = load_instance(path.string());
  } catch (const std::exception& e) {
    return {e.what()};
  }
  const Fact* prov = f.fact("provenance");
  if (!prov || prov->value.rfind("golden:", 0) != 0) problems.push_back("missing golden provenance");
  if (find_bigon(f.instance)) problems.push_back("not in minimal position");
  const std::string actual = classify_ambient(f.instance).str();
  if (const Fact* rec = f.fact("ambient-class")) {
    if (rec->value != actual) problems.push_back("recorded class '" + rec->value + "' but computed '" + actual + "'");
  } else {
    problems.push_back("missing ambient-class fact");
  }
  return problems;
}

struct FactCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

namespace detail {

inline InstanceFile load_golden(const fsys::path& root, const std::string& name) {
  const fsys::path p = root / "goldens" / name;
  if (!fsys::exists(p)) throw Error("missing golden instance " + p.string());
  return load_instance(p.string());
}

inline FactCheck recorded(const InstanceFile& f, const std::string& file, const std::string& key,
                          const std::string& want) {
  const Fact* got = f.fact(key);
  return {file + " " + key, got && got->value == want, got ? got->value : "absent"};
}

}  // namespace detail

// Consequences checkable on the Klein bottle goldens; curve actions of slides
// are recorded facts, everything else is recomputed.
inline std::vector<FactCheck> klein_curve_facts(const fsys::path& root = corpus_dir()) {
  using detail::recorded;
  std::vector<FactCheck> out;
  const InstanceFile punct = detail::load_golden(root, "klein-punct.sp");
  const InstanceFile slide = detail::load_golden(root, "klein-punct2.sp");
  const InstanceFile closed = detail::load_golden(root, "klein-closed.sp");

  const SurfaceKind once_punctured{false, 2, 0, 1};
  for (const auto& [name, f] : {std::pair<std::string, const InstanceFile*>{"klein-punct", &punct},
                                {"klein-punct2", &slide}}) {
    const SurfaceKind k = classify_ambient(f->instance);
    out.push_back({name + " ambient", k == once_punctured, k.str()});
    out.push_back({name + " a generic two-sided",
                   curve_sidedness(f->instance.overlay(), Curve::A) == Sidedness::TwoSided &&
                       is_generic(f->instance, Curve::A),
                   ""});
  }
  const auto pieces = classify_complement(punct.instance, Curve::A);
  const bool cut_ok = pieces.size() == 1 && pieces[0].kind.orientable;
  out.push_back({"klein-punct complement of a connected and orientable", cut_ok,
                 pieces.empty() ? "" : pieces[0].kind.str()});
  // Punctured cylinder: orientable genus 0 with the two copies of a as boundary.
  const bool cylinder = cut_ok && pieces[0].kind.genus == 0 && pieces[0].curve_copies == 2 &&
                        pieces[0].kind.boundaries == 2 && pieces[0].kind.punctures == 1;
  out.push_back({"klein-punct2 cut along a is a punctured cylinder", cylinder, ""});
  out.push_back(recorded(punct, "klein-punct", "a-reversed-isotopic", "no"));
  out.push_back(recorded(punct, "klein-punct", "v-action-on-a", "a^-1"));
  out.push_back(recorded(punct, "klein-punct", "y-action-on-a", "a"));
  out.push_back(recorded(slide, "klein-punct2", "cut-along-a", "punctured cylinder"));
  out.push_back(recorded(slide, "klein-punct2", "y-action-on-a", "a"));

  const SurfaceKind klein{false, 2, 0, 0};
  const SurfaceKind kc = classify_ambient(closed.instance);
  out.push_back({"klein-closed ambient", kc == klein, kc.str()});
  out.push_back({"klein-closed a generic two-sided",
                 curve_sidedness(closed.instance.overlay(), Curve::A) == Sidedness::TwoSided &&
                     is_generic(closed.instance, Curve::A),
                 ""});
  // The only generic class meets a parallel copy of itself in I = 0.
  const Instance parallel(SignedOverlay::free_loops(1, 1), CapAssignment{}, klein);
  int moved = 0;
  for (int n : {1, 2, -1}) moved += oracle_intersection(parallel, n);
  out.push_back({"klein-closed test pair (a, a) has I = 0 under twists", moved == 0, std::to_string(moved)});
  out.push_back(recorded(closed, "klein-closed", "generic-two-sided-classes", "1"));
  out.push_back(recorded(closed, "klein-closed", "twist-order", "2"));
  return out;
}

}  // namespace dehn
