#pragma once

// Differential and invariant checks over instances, used by `enumerate --check`
// and the acceptance runner.

#include <thread>

#include "dehn/criteria.hpp"
#include "dehn/enumerate.hpp"
#include "dehn/instance_io.hpp"

namespace dehn {

struct Violation {
  std::string what;
  std::string dump;  // serialized instance
};

struct CheckTally {
  long instances = 0;
  long checks = 0;
  std::vector<Violation> violations;

  void merge(const CheckTally& other) {
    instances += other.instances;
    checks += other.checks;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  bool ok() const { return violations.empty(); }
};

inline const std::vector<int>& default_exponents() {
  static const std::vector<int> ns{1, -1, 2, -2, 3, -3};
  return ns;
}

namespace detail {

inline std::string dump(const Instance& inst) {
  try {
    return serialize(inst);
  } catch (const std::exception& e) {
    return std::string("<unserializable: ") + e.what() + ">";
  }
}

}  // namespace detail

// Gamma invariants: degree, forest, even total, E/F agreement with sign products.
inline void check_gamma(const Instance& inst, CheckTally& t) {
  if (inst.crossings() == 0) return;
  const SegmentTable table = side_labels(inst);
  const GammaGraph g = build_gamma(inst, table);
  auto fail = [&](const std::string& what) { t.violations.push_back({what, detail::dump(inst)}); };
  ++t.checks;
  if (g.max_degree > 2) fail("gamma vertex of degree " + std::to_string(g.max_degree));
  if (!g.forest) fail("gamma is not a forest");
  int total = 0;
  for (int k : g.component_sizes) total += k;
  if (total % 2 != 0) fail("sum of k_i is odd: " + ks_text(g.component_sizes));
  if (!table.labelled) return;
  for (const Segment& s : table.segments) {
    const bool equal = s.labels[0] == s.labels[1];
    if (equal != (s.sidedness == Sidedness::OneSided))
      fail("segment on edge " + std::to_string(s.edge) + ": labels " + side_letter(s.labels[0]) +
           side_letter(s.labels[1]) + " disagree with sign product");
  }
}

// Formula against oracle, ambient preservation, orientation independence,
// the empty-Gamma case, lower-bound clauses and the fast-path bookkeeping.
inline void check_twists(const Instance& inst, const std::vector<int>& exponents, CheckTally& t) {
  const int m = inst.crossings();
  auto fail = [&](const std::string& what) { t.violations.push_back({what, detail::dump(inst)}); };
  std::vector<int> ks;
  if (m > 0) ks = build_gamma(inst).component_sizes;
  SurfaceKind ambient;
  if (m > 0) ambient = classify_ambient(inst);
  long half = 0, triangular = 0;
  for (int k : ks) {
    half += k;
    triangular += static_cast<long>(k) * (k - 1) / 2;
  }
  for (int n : exponents) {
    const std::string at = " (n=" + std::to_string(n) + ")";
    const long predicted = formula_intersection(m, n, ks);
    ++t.checks;
    if (m == 0) {
      if (oracle_intersection(inst, n) != 0) fail("disjoint curves moved" + at);
      continue;
    }
    const TwistedOverlay tw = construct_twisted_overlay(inst, n);
    if (!(classify_ambient(tw.instance) == ambient)) fail("twist changed the ambient surface" + at);
    const long oracle = minimal_position(tw.instance).intersection;
    if (oracle != predicted)
      fail("oracle " + std::to_string(oracle) + " != formula " + std::to_string(predicted) + at);
    if (ks.empty() && oracle != static_cast<long>(std::abs(n)) * m * m) fail("empty gamma but I != |n| m^2" + at);
    if (oracle_intersection(inst, n, true) != oracle) fail("result depends on the band orientation" + at);

    const CriterionReport bounds = check_inter_bounds(inst, n);
    if (bounds.verdict == Verdict::Violated) fail(bounds.str() + at);

    const FastPathResult fp = fast_path(inst, n);
    if (2 * fp.type_one != half) fail("type I count " + std::to_string(fp.type_one) + at);
    if (fp.type_two != triangular) fail("type II count " + std::to_string(fp.type_two) + at);
    if (fp.bigon_left) fail("bigon left after fast path" + at);
    if (fp.reduced.instance.crossings() != predicted) fail("fast path ends off the formula" + at);
    if (m >= 2 && !fibers_stay_crossed(fp.reduced)) fail("a fiber lost its foreign crossings" + at);
  }
}

inline CheckTally check_instance(const Instance& inst, const std::vector<int>& exponents = default_exponents()) {
  CheckTally t;
  t.instances = 1;
  try {
    check_gamma(inst, t);
    check_twists(inst, exponents, t);
  } catch (const std::exception& e) {
    t.violations.push_back({std::string("exception: ") + e.what(), detail::dump(inst)});
  }
  return t;
}

// Enumerates m = 0..max_m and checks every entry; workers take stripes and the
// tallies are merged in enumeration order.
inline CheckTally check_corpus(int max_m, const std::vector<int>& exponents = default_exponents(),
                               unsigned workers = std::thread::hardware_concurrency()) {
  std::vector<Instance> entries;
  for (int m = 0; m <= max_m; ++m)
    enumerate_instances(m, EnumerationFilters{}, [&](const CorpusEntry& e) { entries.push_back(e.instance); });
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(entries.size())));
  std::vector<CheckTally> slots(entries.size());
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < entries.size(); i += workers) slots[i] = check_instance(entries[i], exponents);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  CheckTally total;
  for (const CheckTally& s : slots) total.merge(s);
  return total;
}

// Candidate finger moves: (A flag, B flag) pairs in plain-disk faces.
inline std::vector<std::pair<int, int>> finger_move_sites(const Instance& inst) {
  const SignedOverlay& o = inst.overlay();
  const FaceStructure& fs = inst.faces();
  std::vector<std::pair<int, int>> out;
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    if (!inst.face_is_plain_disk(f)) continue;
    std::vector<int> as, bs;
    for (int flag : fs.faces[f].flags) {
      if (fs.face_of_flag[SignedOverlay::alpha2(flag)] == f) continue;
      (o.curve_at(flag_halfedge(flag)) == Curve::A ? as : bs).push_back(flag);
    }
    for (int a : as)
      for (int b : bs) out.push_back({a, b});
  }
  return out;
}

// Applies `moves` random finger moves; nullopt when no site is available.
inline std::optional<Instance> perturb(const Instance& inst, int moves, std::mt19937_64& rng) {
  Instance cur = inst;
  for (int i = 0; i < moves; ++i) {
    const auto sites = finger_move_sites(cur);
    if (sites.empty()) return std::nullopt;
    const auto [a, b] = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
    cur = finger_move(cur, a, b);
  }
  return cur;
}

}  // namespace dehn
