#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "macx/combinatorics.hpp"
#include "macx/simplicial.hpp"

namespace macx::testing {

/// Complex from 1-based facet lists.
inline SimplicialComplex cx(int m, std::initializer_list<std::initializer_list<int>> facets) {
  std::vector<Mask> fs;
  for (const auto& f : facets) {
    Mask s = 0;
    for (int v : f) s |= bit(v - 1);
    fs.push_back(s);
  }
  return SimplicialComplex(m, fs);
}

inline Mask set1(std::initializer_list<int> xs) {
  Mask s = 0;
  for (int v : xs) s |= bit(v - 1);
  return s;
}

inline SimplicialComplex four_cycle() { return cx(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}); }

/// Minimal 6-vertex triangulation of the real projective plane.
inline SimplicialComplex rp2_six() {
  return cx(6, {{1, 2, 4}, {1, 2, 6}, {1, 3, 4}, {1, 3, 5}, {1, 5, 6},
                {2, 3, 5}, {2, 3, 6}, {2, 4, 5}, {3, 4, 6}, {4, 5, 6}});
}

/// Random complex: a handful of random faces of random sizes, occasionally
/// leaving ghost vertices.
inline SimplicialComplex random_complex(std::mt19937_64& rng, int m, int max_faces = 8, int max_size = 4) {
  std::uniform_int_distribution<int> count(1, max_faces), size(1, max_size), vertex(0, m - 1);
  std::vector<Mask> faces;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Mask f = 0;
    const int s = size(rng);
    for (int j = 0; j < s; ++j) f |= bit(vertex(rng));
    faces.push_back(f);
  }
  return SimplicialComplex(m, faces);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int m) {
  std::vector<int> p(m);
  for (int i = 0; i < m; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}


namespace detail {

/// A family of subsets of {0..ground-1} as a bitset indexed by subset
/// (ground <= 6).
using Family = std::uint64_t;

inline Family family_closure(Family f, int ground) {
  const int n = 1 << ground;
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 1; a < n; ++a) {
      if (!(f >> a & 1)) continue;
      for (int b = 1; b < n; ++b)
        if ((f >> b & 1) && (a & b) && !(f >> (a | b) & 1)) {
          f |= Family{1} << (a | b);
          changed = true;
        }
    }
  }
  return f;
}

inline Family permute_family(Family f, const std::vector<int>& perm) {
  Family out = 0;
  for (int s = 1; f >> s; ++s) {
    if (!(f >> s & 1)) continue;
    int t = 0;
    for (int i : elements(static_cast<Mask>(s))) t |= 1 << perm[i];
    out |= Family{1} << t;
  }
  return out;
}

inline Family canonical_family(Family f, int ground) {
  std::vector<int> perm(ground);
  std::iota(perm.begin(), perm.end(), 0);
  Family best = f;
  do best = std::min(best, permute_family(f, perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline BuildingSet to_building_set(Family f, int ground) {
  std::vector<Mask> seeds;
  for (int s = 1; s < (1 << ground); ++s)
    if (f >> s & 1) seeds.push_back(static_cast<Mask>(s));
  return building_set_closure(ground, seeds);
}

/// Closure-DFS from the simplex building set, adding one subset at a time;
/// with `up_to_iso` only canonical representatives are kept.
inline std::vector<BuildingSet> connected_building_sets(int ground, bool up_to_iso) {
  const int n = 1 << ground;
  Family start = Family{1} << (n - 1);
  for (int i = 0; i < ground; ++i) start |= Family{1} << (1 << i);
  std::unordered_set<Family> seen{start};
  std::vector<Family> stack{start}, found;
  while (!stack.empty()) {
    const Family f = stack.back();
    stack.pop_back();
    found.push_back(f);
    for (int s = 3; s < n - 1; ++s) {
      if (std::popcount(static_cast<unsigned>(s)) < 2 || (f >> s & 1)) continue;
      Family next = family_closure(f | Family{1} << s, ground);
      if (up_to_iso) next = canonical_family(next, ground);
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<BuildingSet> out;
  for (Family f : found) out.push_back(to_building_set(f, ground));
  return out;
}

}  // namespace detail

/// Every connected building set on {0..ground-1}, ground <= 6.
inline std::vector<BuildingSet> all_connected_building_sets(int ground) {
  return detail::connected_building_sets(ground, false);
}

/// One connected building set per isomorphism class, ground <= 6.
inline std::vector<BuildingSet> connected_building_set_classes(int ground) {
  return detail::connected_building_sets(ground, true);
}

/// Every labeled graph on n vertices.
inline std::vector<Graph> all_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
  std::vector<Graph> out;
  for (Mask pick = 0; pick < bit(static_cast<int>(slots.size())); ++pick) {
    std::vector<std::pair<int, int>> e;
    for (int t : elements(pick)) e.push_back(slots[t]);
    out.emplace_back(n, e);
  }
  return out;
}

/// One graph per isomorphism class (brute force over permutations).
inline std::vector<Graph> graph_classes(int n) {
  std::vector<int> perm(n);
  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<Graph> out;
  for (const auto& g : all_graphs(n)) {
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<int, int>> best;
    bool first = true;
    do {
      auto e = relabel(g, perm).edges();
      std::sort(e.begin(), e.end());
      if (first || e < best) best = e;
      first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.push_back(g);
  }
  return out;
}

inline Graph graph1(int n, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<std::pair<int, int>> e;
  for (auto [a, b] : edges) e.emplace_back(a - 1, b - 1);
  return Graph(n, e);
}

}  // namespace macx::testing
