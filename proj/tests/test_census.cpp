#include "doctest.h"

#include <functional>
#include <map>

#include "macx/canonical.hpp"
#include "macx/census.hpp"
#include "macx/errors.hpp"
#include "support.hpp"

using namespace macx;
using namespace macx::testing;

namespace {

// Closed surface test written from scratch: every edge in exactly two
// triangles, every vertex link one cycle, χ = 2, connected.
bool brute_sphere(int v, const std::vector<Mask>& tris) {
  std::map<Mask, int> edge_count;
  for (Mask t : tris)
    for (int x : elements(t)) ++edge_count[t & ~bit(x)];
  for (const auto& [e, c] : edge_count)
    if (c != 2) return false;
  for (int w = 0; w < v; ++w) {
    std::map<int, std::vector<int>> nb;
    for (Mask t : tris)
      if (contains(t, w)) {
        const auto e = elements(t & ~bit(w));
        nb[e[0]].push_back(e[1]);
        nb[e[1]].push_back(e[0]);
      }
    if (nb.size() < 3) return false;
    // Walk the link once around.
    int start = nb.begin()->first, prev = -1, cur = start, steps = 0;
    do {
      const auto& ys = nb[cur];
      const int next = ys[0] != prev ? ys[0] : ys[1];
      prev = cur;
      cur = next;
      ++steps;
    } while (cur != start && steps <= v);
    if (steps != static_cast<int>(nb.size())) return false;
  }
  const long chi = v - static_cast<long>(edge_count.size()) + static_cast<long>(tris.size());
  if (chi != 2) return false;
  Mask reach = bit(0), frontier = bit(0);
  while (frontier) {
    Mask next = 0;
    for (Mask t : tris)
      if (t & frontier) next |= t;
    frontier = next & ~reach;
    reach |= next;
  }
  return reach == low_bits(v);
}

std::vector<Mask> sorted_triangles(const std::vector<Mask>& tris, const std::vector<int>& perm) {
  std::vector<Mask> out;
  for (Mask t : tris) {
    Mask r = 0;
    for (int x : elements(t)) r |= bit(perm[x]);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Isomorphism classes of 2-spheres on v vertices by picking 2v − 4
// triangles out of all of them, with dedup over every permutation.
std::vector<std::vector<Mask>> brute_sphere_classes(int v) {
  std::vector<Mask> all;
  for (Mask t = 0; t < bit(v); ++t)
    if (popcount(t) == 3) all.push_back(t);
  const int need = 2 * v - 4;
  std::set<std::vector<Mask>> seen;
  std::vector<std::vector<Mask>> out;
  std::vector<int> pick(need);
  std::function<void(int, int)> rec = [&](int depth, int from) {
    if (depth == need) {
      std::vector<Mask> tris;
      for (int i : pick) tris.push_back(all[i]);
      if (!brute_sphere(v, tris)) return;
      std::vector<int> perm(v);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<Mask> best = sorted_triangles(tris, perm);
      while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, sorted_triangles(tris, perm));
      if (seen.insert(best).second) out.push_back(tris);
      return;
    }
    for (int i = from; i < static_cast<int>(all.size()); ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

TEST_CASE("2-sphere recognition") {
  CHECK(is_2sphere(SimplicialComplex::simplex_boundary(4)));
  CHECK_FALSE(is_2sphere(SimplicialComplex::simplex_boundary(5)));
  CHECK_FALSE(is_2sphere(rp2_six()));
  CHECK(is_2sphere(pn_nerve(3)));
  CHECK_FALSE(is_2sphere(four_cycle()));
  // Two tetrahedron boundaries glued at a vertex.
  CHECK_FALSE(is_2sphere(cx(7, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {1, 5, 6}, {1, 5, 7}, {1, 6, 7}, {5, 6, 7}})));
  // Ghost vertex.
  CHECK_FALSE(is_2sphere(cx(5, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}})));
}

TEST_CASE("sphere census counts") {
  const std::vector<std::size_t> expected{1, 1, 2, 5, 14};
  for (int v = 4; v <= 8; ++v) {
    CAPTURE(v);
    const auto census = enumerate_2spheres(v);
    CHECK(census.kind == CensusKind::spheres);
    CHECK(census.vertex_count == v);
    REQUIRE(census.entries.size() == expected[v - 4]);
    std::set<std::string> prints;
    for (const auto& e : census.entries) {
      CHECK(is_2sphere(e.complex));
      const auto f = f_gamma_vectors(e.complex).f;
      REQUIRE(f.size() >= 3);
      CHECK(f[0] == v);
      CHECK(f[1] == 3 * v - 6);
      CHECK(f[2] == 2 * v - 4);
      CHECK(f_gamma_vectors(e.complex).h_symmetric);
      prints.insert(e.fingerprint);
      CHECK(e.fingerprint == canonical_form(e.complex).fingerprint());
    }
    CHECK(prints.size() == census.entries.size());
    for (std::size_t i = 0; i < census.entries.size(); ++i)
      for (std::size_t j = i + 1; j < census.entries.size(); ++j)
        CHECK_FALSE(isomorphic(census.entries[i].complex, census.entries[j].complex));
  }
  CHECK_THROWS_AS(enumerate_2spheres(3), InputError);
  CHECK_THROWS_AS(enumerate_2spheres(9), InputError);
}

TEST_CASE("small sphere census against brute force") {
  for (int v = 4; v <= 6; ++v) {
    CAPTURE(v);
    const auto brute = brute_sphere_classes(v);
    const auto census = enumerate_2spheres(v);
    REQUIRE(brute.size() == census.entries.size());
    for (const auto& tris : brute) {
      const SimplicialComplex k(v, tris);
      int matches = 0;
      for (const auto& e : census.entries) matches += isomorphic(k, e.complex);
      CHECK(matches == 1);
    }
  }
}

TEST_CASE("graph census against brute force") {
  const std::vector<std::size_t> expected{1, 2, 4, 11, 34, 156};
  for (int v = 1; v <= 6; ++v) {
    CAPTURE(v);
    const auto census = enumerate_graphs(v);
    CHECK(census.kind == CensusKind::graphs);
    CHECK(census.entries.size() == expected[v - 1]);
    for (const auto& e : census.entries) {
      CHECK(e.complex.vertex_count() == v);
      CHECK(e.complex.dimension() <= 1);
    }
    if (v > 5) continue;
    const auto classes = graph_classes(v);
    REQUIRE(classes.size() == census.entries.size());
    for (const auto& g : classes) {
      int matches = 0;
      for (const auto& e : census.entries) matches += isomorphic(graph_complex(g), e.complex);
      CHECK(matches == 1);
    }
  }
  CHECK_THROWS_AS(enumerate_graphs(0), InputError);
  CHECK_THROWS_AS(enumerate_graphs(7), InputError);
}

TEST_CASE("census is independent of the thread count") {
  const auto a = enumerate_2spheres(8, 1), b = enumerate_2spheres(8, 3);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) CHECK(a.entries[i].fingerprint == b.entries[i].fingerprint);
  const auto g1 = enumerate_graphs(6, 1), g2 = enumerate_graphs(6, 4);
  REQUIRE(g1.entries.size() == g2.entries.size());
  for (std::size_t i = 0; i < g1.entries.size(); ++i) CHECK(g1.entries[i].complex == g2.entries[i].complex);
}

TEST_CASE("Massey scan of small spheres") {
  const auto catalog = derive_obstruction_catalog();
  for (int v = 4; v <= 7; ++v) {
    const auto scan = scan_spheres_for_massey(enumerate_2spheres(v), catalog);
    for (const auto& e : scan.entries) {
      CHECK_FALSE(e.triple_massey.value());
      CHECK_FALSE(e.obstruction.value());
      CHECK(e.flag.has_value());
    }
  }
  const auto scan = scan_spheres_for_massey(enumerate_2spheres(8), catalog);
  REQUIRE(scan.entries.size() == 14);
  int positives = 0;
  for (const auto& e : scan.entries) {
    CHECK(*e.obstruction == *e.triple_massey);
    if (!*e.triple_massey) continue;
    ++positives;
    CHECK(isomorphic(e.complex, pn_nerve(3)));
    CHECK(*e.flag);
    REQUIRE(e.obstruction_witness.has_value());
    CHECK(popcount(*e.obstruction_witness) == 6);
  }
  CHECK(positives == 1);
  // Flagness by brute force: every clique of the 1-skeleton is a face.
  for (const auto& e : scan.entries) {
    const auto adj = e.complex.adjacency();
    bool flag = true;
    for (Mask s = 1; s < bit(8) && flag; ++s) {
      bool clique = true;
      for (int x : elements(s)) clique = clique && (adj[x] | bit(x) | s) == (adj[x] | bit(x));
      if (clique && !e.complex.is_face(s)) flag = false;
    }
    CHECK(*e.flag == flag);
  }
  CHECK_THROWS_AS(scan_spheres_for_massey(enumerate_graphs(3), catalog), InputError);
  CHECK_THROWS_AS(scan_spheres_for_massey(enumerate_2spheres(5), ObstructionCatalog{}), StateError);
}
