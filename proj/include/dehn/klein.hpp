#pragma once

// Normal-form models of two small mapping class groups of Klein bottles.
//
//   KPunct: (n, e, d) = t_a^n v^e sigma^d, the once-punctured Klein bottle.
//   KHole:  (n, k)    = t_a^n (sigma v)^k, the Klein bottle with one boundary circle.
//
// Centers and centralizers are solved symbolically: split on the torsion
// coordinates, then each commutation condition is linear in n.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dehn/overlay.hpp"

namespace dehn {

namespace detail {
inline long parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }
}  // namespace detail

struct KPunct {
  long n = 0;
  int e = 0;  // exponent of v
  int d = 0;  // exponent of sigma

  static KPunct identity() { return {}; }
  static KPunct twist() { return {1, 0, 0}; }
  static KPunct v() { return {0, 1, 0}; }
  static KPunct sigma() { return {0, 0, 1}; }
  static std::vector<KPunct> generators() { return {twist(), v(), sigma()}; }

  KPunct operator*(const KPunct& y) const {
    return {n + detail::parity_sign(e) * y.n, e ^ y.e, d ^ y.d};
  }
  KPunct inverse() const { return {-detail::parity_sign(e) * n, e, d}; }
  bool operator==(const KPunct&) const = default;
  std::string str() const {
    return "(" + std::to_string(n) + "," + std::to_string(e) + "," + std::to_string(d) + ")";
  }
};

struct KHole {
  long n = 0;
  long k = 0;  // exponent of sigma*v

  static KHole identity() { return {}; }
  static KHole twist() { return {1, 0}; }
  static KHole sigma_v() { return {0, 1}; }
  static KHole boundary_twist() { return {0, 2}; }
  static std::vector<KHole> generators() { return {twist(), sigma_v()}; }

  KHole operator*(const KHole& y) const { return {n + detail::parity_sign(k) * y.n, k + y.k}; }
  KHole inverse() const { return {-detail::parity_sign(k) * n, -k}; }
  bool operator==(const KHole&) const = default;
  std::string str() const { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; }
};

template <class G>
G power(G x, long e) {
  if (e < 0) {
    x = x.inverse();
    e = -e;
  }
  G acc = G::identity();
  while (e > 0) {
    if (e & 1) acc = acc * x;
    x = x * x;
    e >>= 1;
  }
  return acc;
}

template <class G>
bool commute(const G& x, const G& y) {
  return x * y == y * x;
}

// Order of x, or 0 when no power up to `limit` is trivial.
template <class G>
long element_order(const G& x, long limit = 64) {
  G acc = x;
  for (long i = 1; i <= limit; ++i) {
    if (acc == G::identity()) return i;
    acc = acc * x;
  }
  return 0;
}

// Solutions n of a system {coef * n == rhs}.
struct IntegerSolutions {
  bool all = true;
  std::optional<long> value;  // meaningful when !all
  bool empty = false;

  void add(long coef, long rhs) {
    if (empty) return;
    if (coef == 0) {
      if (rhs != 0) empty = true;
      return;
    }
    if (rhs % coef != 0) {
      empty = true;
      return;
    }
    const long v = rhs / coef;
    if (all) {
      all = false;
      value = v;
    } else if (*value != v) {
      empty = true;
    }
  }
  long representative() const { return all ? 0 : *value; }
};

namespace detail {

// x * g == g * x for x = (n, torsion t) reads n + s(t) g_n == g_n + s(g_t) n,
// i.e. (1 - s(g_t)) n == (1 - s(t)) g_n.
inline void add_commutation(IntegerSolutions& sol, long torsion_sign, long g_n, long g_sign) {
  sol.add(1 - g_sign, (1 - torsion_sign) * g_n);
}

inline std::vector<KPunct> punct_subgroup_generators(const std::vector<KPunct>& must_commute) {
  IntegerSolutions by_class[2][2];
  for (int e = 0; e < 2; ++e)
    for (int d = 0; d < 2; ++d)
      for (const KPunct& g : must_commute) add_commutation(by_class[e][d], parity_sign(e), g.n, parity_sign(g.e));
  std::vector<KPunct> gens;
  // Kernel of the projection to the torsion part.
  if (by_class[0][0].all) gens.push_back(KPunct::twist());
  // Torsion classes reached, lifted; skip classes already spanned.
  std::vector<std::pair<int, int>> spanned{{0, 0}};
  for (const auto& [e, d] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 1}}) {
    const IntegerSolutions& s = by_class[e][d];
    if (s.empty) continue;
    bool inside = false;
    for (const auto& p : spanned) inside = inside || (p.first == e && p.second == d);
    if (inside) continue;
    gens.push_back({s.representative(), e, d});
    const auto before = spanned;
    for (const auto& p : before) spanned.push_back({p.first ^ e, p.second ^ d});
  }
  return gens;
}

inline std::vector<KHole> hole_subgroup_generators(const std::vector<KHole>& must_commute) {
  IntegerSolutions by_parity[2];
  for (int p = 0; p < 2; ++p)
    for (const KHole& g : must_commute) add_commutation(by_parity[p], parity_sign(p), g.n, parity_sign(g.k));
  std::vector<KHole> gens;
  if (by_parity[0].all) gens.push_back(KHole::twist());
  // Image of the projection to k is 1Z when odd k occurs, else 2Z.
  if (!by_parity[1].empty) gens.push_back({by_parity[1].representative(), 1});
  else if (!by_parity[0].empty) gens.push_back({by_parity[0].representative(), 2});
  return gens;
}

}  // namespace detail

inline std::vector<KPunct> center(const std::vector<KPunct>& group_gens) {
  return detail::punct_subgroup_generators(group_gens);
}
inline std::vector<KHole> center(const std::vector<KHole>& group_gens) {
  return detail::hole_subgroup_generators(group_gens);
}

inline std::vector<KPunct> punct_center() { return center(KPunct::generators()); }
inline std::vector<KHole> hole_center() { return center(KHole::generators()); }
inline std::vector<KPunct> punct_twist_centralizer() { return detail::punct_subgroup_generators({KPunct::twist()}); }
inline std::vector<KHole> hole_twist_centralizer() { return detail::hole_subgroup_generators({KHole::twist()}); }

template <class G>
std::string generator_list(const std::vector<G>& gens) {
  std::string out = "[";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? "," : "") + gens[i].str();
  return out + "]";
}

// Accepts "(1,0,1)" or "1,0,1".
inline std::vector<long> parse_tuple(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') s += c;
  std::vector<long> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      throw Error("bad group element '" + text + "'");
    }
    if (used != part.size()) throw Error("bad group element '" + text + "'");
    out.push_back(v);
  }
  return out;
}

inline KPunct parse_punct(const std::string& text) {
  const auto t = parse_tuple(text);
  if (t.size() != 3 || t[1] < 0 || t[1] > 1 || t[2] < 0 || t[2] > 1)
    throw Error("punctured-model elements are (n,e,d) with e,d in {0,1}: '" + text + "'");
  return {t[0], static_cast<int>(t[1]), static_cast<int>(t[2])};
}

inline KHole parse_hole(const std::string& text) {
  const auto t = parse_tuple(text);
  if (t.size() != 2) throw Error("boundary-model elements are (n,k): '" + text + "'");
  return {t[0], t[1]};
}

}  // namespace dehn
