// dehn: command-line front end for the surface-pair library.
//
// Every report ends with one machine-readable line "RESULT key=value ...".
// Exit codes: 0 success, 1 falsified invariant or bad input file, 2 usage.

#include <CLI11.hpp>
#include <iostream>

#include "dehn/checks.hpp"
#include "dehn/corpus.hpp"
#include "dehn/klein.hpp"

namespace {

using namespace dehn;

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUsage = 2;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

InstanceFile load(const std::string& arg) { return load_instance(resolve_instance_path(arg).string()); }

std::string sidedness_of(const Instance& inst, Curve c) { return to_string(curve_sidedness(inst.overlay(), c)); }

int cmd_validate(const std::string& file) {
  const InstanceFile f = load(file);
  const Instance& inst = f.instance;
  std::cout << "crossings " << inst.crossings() << ", faces " << inst.faces().faces.size() << "\n";
  const bool minimal = !find_bigon(inst);
  std::cout << (minimal ? "no bigon" : "has a bigon") << "\n";
  std::vector<std::string> problems;
  if (f.fact("provenance") && f.fact("provenance")->value.rfind("golden:", 0) == 0)
    problems = check_golden(resolve_instance_path(file));
  for (const std::string& p : problems) std::cout << "golden: " << p << "\n";
  std::cout << "RESULT valid=" << yes_no(problems.empty()) << " m=" << inst.crossings()
            << " faces=" << inst.faces().faces.size() << " minimal=" << yes_no(minimal) << "\n";
  if (!problems.empty()) {
    std::cout << serialize(inst);
    return kExitFalsified;
  }
  return kExitOk;
}

int cmd_classify(const std::string& file) {
  const Instance inst = load(file).instance;
  const SurfaceKind k = classify_ambient(inst);
  std::cout << "ambient: " << k << "\n";
  for (Curve c : {Curve::A, Curve::B}) {
    std::cout << "curve " << curve_letter(c) << ": " << sidedness_of(inst, c);
    if (inst.crossings() > 0) {
      std::cout << ", " << (is_generic(inst, c) ? "generic" : "not generic") << "; complement:";
      for (const ComplementPiece& p : classify_complement(inst, c))
        std::cout << " [" << p.kind << ", " << p.curve_copies << " copies]";
    }
    std::cout << "\n";
  }
  std::cout << "RESULT orientable=" << yes_no(k.orientable) << " genus=" << k.genus << " r=" << k.boundaries
            << " s=" << k.punctures << " a=" << sidedness_of(inst, Curve::A) << " b=" << sidedness_of(inst, Curve::B)
            << "\n";
  return kExitOk;
}

int cmd_gamma(const std::string& file) {
  const Instance inst = load(file).instance;
  if (inst.crossings() == 0) {
    std::cout << "curves are disjoint; no segments\n";
    std::cout << "RESULT vertices=0 edges=0 ks=[]\n";
    return kExitOk;
  }
  const SegmentTable table = side_labels(inst);
  const GammaGraph g = build_gamma(inst, table);
  for (const Segment& s : table.segments) {
    std::cout << "segment edge " << s.edge << ": " << s.ends[0] << " -> " << s.ends[1] << ", "
              << to_string(s.sidedness);
    if (table.labelled) std::cout << ", " << side_letter(s.labels[0]) << side_letter(s.labels[1]);
    std::cout << "\n";
  }
  for (const Adjacency& a : g.edges)
    std::cout << "adjacency face " << a.face_id << ": edge " << table.segments[a.first].edge << " ~ edge "
              << table.segments[a.second].edge << "\n";
  for (const std::string& v : g.violations) std::cout << "violation: " << v << "\n";
  std::cout << "RESULT vertices=" << g.vertices.size() << " edges=" << g.edges.size()
            << " ks=" << ks_text(g.component_sizes) << " forest=" << yes_no(g.forest) << " max_degree=" << g.max_degree
            << "\n";
  return g.violations.empty() ? kExitOk : kExitFalsified;
}

std::vector<int> ks_of(const Instance& inst) {
  return inst.crossings() == 0 ? std::vector<int>{} : build_gamma(inst).component_sizes;
}

void zero_note() { std::cout << "note: n = 0 is the identity, so the answer is I(b,b) = 0\n"; }

int cmd_predict(const std::string& file, int n) {
  const Instance inst = load(file).instance;
  const auto ks = ks_of(inst);
  long value = 0;
  if (n == 0) zero_note();
  else value = formula_intersection(inst.crossings(), n, ks);
  std::cout << "RESULT I=" << value << " m=" << inst.crossings() << " ks=" << ks_text(ks) << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& file, int n) {
  const Instance inst = load(file).instance;
  long value = 0;
  int removals = 0;
  if (n == 0) {
    zero_note();
  } else if (inst.crossings() > 0) {
    const TwistedOverlay tw = construct_twisted_overlay(inst, n);
    const MinimalPosition mp = minimal_position(tw.instance);
    std::cout << "twisted crossings " << tw.instance.crossings() << ", bigons removed " << mp.removals << "\n";
    value = mp.intersection;
    removals = mp.removals;
  }
  std::cout << "RESULT I=" << value << " m=" << inst.crossings() << " removals=" << removals << "\n";
  return kExitOk;
}

int cmd_compare(const std::string& file, int n) {
  const Instance inst = load(file).instance;
  const auto ks = ks_of(inst);
  long formula = 0, oracle = 0;
  if (n == 0) {
    zero_note();
  } else {
    formula = formula_intersection(inst.crossings(), n, ks);
    oracle = oracle_intersection(inst, n);
  }
  const bool match = formula == oracle;
  std::cout << "RESULT formula=" << formula << " oracle=" << oracle << " match=" << yes_no(match) << "\n";
  if (!match) {
    std::cout << serialize(inst);
    return kExitFalsified;
  }
  return kExitOk;
}

int cmd_props(const std::string& file, int j, int k) {
  if (j == 0 || k == 0) throw CLI::ValidationError("-j/-k", "twist exponents must be nonzero");
  const Instance inst = load(file).instance;
  const std::vector<CriterionReport> reports{check_inter_bounds(inst, j, file),
                                             distinct_twist_criterion(inst, j, k, file),
                                             commutation_criterion(inst, j, k, file), braid_criterion(inst, j, k, file)};
  bool violated = false;
  std::cout << "j=" << j << " k=" << k << "\n";
  for (const CriterionReport& r : reports) {
    std::cout << r.str() << "\n";
    for (const ClauseResult& c : r.clauses)
      if (!c.note.empty()) std::cout << "  " << c.name << ": " << c.note << "\n";
    violated = violated || r.verdict == Verdict::Violated;
  }
  std::cout << "RESULT";
  for (const CriterionReport& r : reports) std::cout << " " << r.criterion << "=" << to_string(r.verdict);
  std::cout << "\n";
  if (violated) {
    std::cout << serialize(inst);
    return kExitFalsified;
  }
  return kExitOk;
}

int cmd_enumerate(int max_m, bool check, bool print, unsigned workers) {
  if (check) {
    const CheckTally t = check_corpus(max_m, default_exponents(), workers);
    for (const Violation& v : t.violations) std::cout << "violation: " << v.what << "\n" << v.dump;
    std::cout << "RESULT m=" << max_m << " instances=" << t.instances << " checks=" << t.checks
              << " violations=" << t.violations.size() << "\n";
    return t.ok() ? kExitOk : kExitFalsified;
  }
  long total = 0;
  for (int m = 0; m <= max_m; ++m) {
    long count = 0;
    enumerate_instances(m, EnumerationFilters{}, [&](const CorpusEntry& e) {
      ++count;
      if (print) std::cout << "% m=" << m << " entry " << count << "\n" << serialize(e.instance);
    });
    std::cout << "m=" << m << ": " << count << " instances\n";
    total += count;
  }
  std::cout << "RESULT m=" << max_m << " instances=" << total << "\n";
  return kExitOk;
}

template <class G>
int klein_report(const std::string& query, const std::vector<std::string>& operands,
                 G (*parse)(const std::string&), const std::vector<G>& center_gens,
                 const std::vector<G>& centralizer_gens) {
  if (query == "center" || query == "centralizer") {
    if (!operands.empty()) throw CLI::ValidationError("klein", query + " takes no operands");
    const auto& gens = query == "center" ? center_gens : centralizer_gens;
    for (const G& g : gens) {
      const long order = element_order(g);
      std::cout << g.str() << ": " << (order ? "order " + std::to_string(order) : std::string("infinite order"))
                << "\n";
    }
    std::cout << "RESULT generators=" << generator_list(gens) << "\n";
    return kExitOk;
  }
  if (query == "mult") {
    if (operands.empty()) throw CLI::ValidationError("klein", "mult needs at least one element");
    G acc = G::identity();
    for (const std::string& s : operands) {
      try {
        acc = acc * parse(s);
      } catch (const Error& e) {
        throw CLI::ValidationError("klein", e.what());
      }
    }
    std::cout << "RESULT product=" << acc.str() << "\n";
    return kExitOk;
  }
  throw CLI::ValidationError("klein", "query must be center, centralizer or mult");
}

int cmd_klein(const std::string& model, const std::string& query, const std::vector<std::string>& operands) {
  if (model == "punct") return klein_report<KPunct>(query, operands, parse_punct, punct_center(), punct_twist_centralizer());
  if (model == "hole") return klein_report<KHole>(query, operands, parse_hole, hole_center(), hole_twist_centralizer());
  if (model == "facts") {
    bool ok = true;
    for (const FactCheck& f : klein_curve_facts()) {
      std::cout << (f.ok ? "ok   " : "FAIL ") << f.name;
      if (!f.detail.empty()) std::cout << " (" << f.detail << ")";
      std::cout << "\n";
      ok = ok && f.ok;
    }
    std::cout << "RESULT facts=" << (ok ? "ok" : "failed") << "\n";
    return ok ? kExitOk : kExitFalsified;
  }
  throw CLI::ValidationError("klein", "model must be punct, hole or facts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dehn twists and intersection numbers on surfaces"};
  app.require_subcommand(1);

  std::string file;
  int n = 0, j = 1, k = 1, max_m = 0, bound = 4;
  bool check = false, print = false;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string model, query;
  std::vector<std::string> operands;

  auto* validate = app.add_subcommand("validate", "parse and validate an instance file");
  auto* classify = app.add_subcommand("classify", "ambient surface and curve types");
  auto* gamma = app.add_subcommand("gamma", "segments, side labels and the graph of one-sided segments");
  auto* predict = app.add_subcommand("predict", "intersection number of t_a^n(b) and b from the formula");
  auto* oracle = app.add_subcommand("oracle", "intersection number by drawing the twist and removing bigons");
  auto* compare = app.add_subcommand("compare", "formula against oracle; exit 1 on mismatch");
  auto* props = app.add_subcommand("props", "intersection witnesses for the twist criteria");
  for (auto* sub : {validate, classify, gamma, predict, oracle, compare, props})
    sub->add_option("file", file, "instance file (also looked up under the corpus directory)")->required();
  for (auto* sub : {predict, oracle, compare}) sub->add_option("-n", n, "twist exponent")->required();
  props->add_option("-j", j, "exponent of t_a");
  props->add_option("-k", k, "exponent of t_b");

  auto* enumerate = app.add_subcommand("enumerate", "enumerate small instances");
  enumerate->add_option("-m", max_m, "maximum number of crossings")->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("--bound", bound, "largest accepted -m");
  enumerate->add_flag("--check", check, "run the differential and invariant suite");
  enumerate->add_flag("--print", print, "print every instance");
  enumerate->add_option("--workers", workers, "threads for --check")->check(CLI::PositiveNumber);

  auto* klein = app.add_subcommand("klein", "Klein bottle mapping class group models");
  klein->add_option("model", model, "punct, hole or facts")->required();
  klein->add_option("query", query, "center, centralizer or mult");
  klein->add_option("operands", operands, "elements for mult, e.g. (1,1,0)");

  try {
    app.parse(argc, argv);
    if (enumerate->parsed() && max_m > bound)
      throw CLI::ValidationError("-m", "exceeds the configured bound " + std::to_string(bound));
    if (klein->parsed() && model != "facts" && query.empty())
      throw CLI::ValidationError("klein", "missing query");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(file);
    if (classify->parsed()) return cmd_classify(file);
    if (gamma->parsed()) return cmd_gamma(file);
    if (predict->parsed()) return cmd_predict(file, n);
    if (oracle->parsed()) return cmd_oracle(file, n);
    if (compare->parsed()) return cmd_compare(file, n);
    if (props->parsed()) return cmd_props(file, j, k);
    if (enumerate->parsed()) return cmd_enumerate(max_m, check, print, workers);
    if (klein->parsed()) return cmd_klein(model, query, operands);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFalsified;
  }
  return kExitUsage;
}
