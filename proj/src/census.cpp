#include "macx/census.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "macx/canonical.hpp"
#include "macx/errors.hpp"
#include "macx/parallel.hpp"

namespace macx {

SimplicialComplex graph_complex(const Graph& g) {
  std::vector<Mask> faces;
  for (int v = 0; v < g.vertex_count(); ++v) faces.push_back(bit(v));
  for (auto [a, b] : g.edges()) faces.push_back(bit(a) | bit(b));
  return SimplicialComplex(g.vertex_count(), faces);
}

Graph one_skeleton(const SimplicialComplex& k) {
  std::vector<std::pair<int, int>> edges;
  const auto adj = k.adjacency();
  for (int a = 0; a < k.vertex_count(); ++a)
    for (int b : elements(adj[a]))
      if (a < b) edges.emplace_back(a, b);
  return Graph(k.vertex_count(), edges);
}

namespace {

std::vector<Mask> triangles_of(const SimplicialComplex& k) {
  const auto faces = k.faces_by_dimension();
  return faces.size() > 3 ? faces[3] : std::vector<Mask>{};
}

// Neighbors of w in the cyclic order of its link; empty if the link is not
// a single cycle.
std::vector<int> link_cycle(const std::vector<Mask>& triangles, int w) {
  std::map<int, std::vector<int>> nb;
  for (Mask t : triangles) {
    if (!contains(t, w)) continue;
    const auto e = elements(t & ~bit(w));
    nb[e[0]].push_back(e[1]);
    nb[e[1]].push_back(e[0]);
  }
  if (nb.size() < 3) return {};
  for (const auto& [x, ys] : nb)
    if (ys.size() != 2) return {};
  std::vector<int> cyc{nb.begin()->first};
  int prev = -1;
  while (true) {
    const auto& ys = nb[cyc.back()];
    const int next = ys[0] != prev ? ys[0] : ys[1];
    if (next == cyc.front()) break;
    prev = cyc.back();
    cyc.push_back(next);
    if (cyc.size() > nb.size()) return {};
  }
  if (cyc.size() != nb.size()) return {};
  return cyc;
}

CanonicalForm marked_form(const SimplicialComplex& k, Mask marked) {
  std::vector<int> colors(k.vertex_count(), 0);
  for (int v : elements(marked)) colors[v] = 1;
  return canonical_form(k, colors);
}

CensusEntry entry_of(const CanonicalForm& form) {
  CensusEntry e{form.complex(), form.fingerprint(), {}, {}, {}, {}};
  return e;
}

// Runs one augmentation level: children(parent) yields accepted children;
// their canonical forms are merged and sorted.
template <class Children>
std::vector<CanonicalForm> next_level(const std::vector<CanonicalForm>& parents, int threads, Children children) {
  std::vector<std::vector<CanonicalForm>> per(parents.size());
  parallel_for(
      parents.size(), thread_count(threads), [&](int, std::size_t i) { per[i] = children(parents[i].complex()); },
      1);
  std::vector<CanonicalForm> out;
  for (auto& v : per)
    for (auto& f : v) out.push_back(std::move(f));
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1]) throw ConsistencyError("canonical augmentation produced a duplicate");
  return out;
}

// Child accepted iff the new vertex is in the orbit of the vertex carrying
// the last canonical label.
std::vector<CanonicalForm> graph_children(const SimplicialComplex& parent) {
  const int n = parent.vertex_count();
  const Graph g = one_skeleton(parent);
  std::set<std::vector<Mask>> seen;
  std::vector<CanonicalForm> out;
  for (Mask s = 0; s < bit(n); ++s) {
    std::vector<std::pair<int, int>> edges = g.edges();
    for (int x : elements(s)) edges.emplace_back(x, n);
    const SimplicialComplex child = graph_complex(Graph(n + 1, edges));
    const CanonicalForm form = canonical_form(child);
    int last = 0;
    for (int v = 0; v <= n; ++v)
      if (form.relabeling[v] == n) last = v;
    if (!(marked_form(child, bit(n)) == marked_form(child, bit(last)))) continue;
    if (seen.insert(form.facets).second) out.push_back(form);
  }
  return out;
}

// Edges {a, b} whose links meet in exactly the two opposite vertices.
std::vector<Mask> contractible_edges(const SimplicialComplex& k) {
  const auto adj = k.adjacency();
  std::vector<Mask> out;
  for (int a = 0; a < k.vertex_count(); ++a)
    for (int b : elements(adj[a]))
      if (a < b && popcount(adj[a] & adj[b]) == 2) out.push_back(bit(a) | bit(b));
  return out;
}

std::vector<CanonicalForm> sphere_children(const SimplicialComplex& parent) {
  const int n = parent.vertex_count();
  const int x = n;  // the new vertex
  const auto triangles = triangles_of(parent);
  std::set<std::vector<Mask>> seen;
  std::vector<CanonicalForm> out;
  for (int w = 0; w < n; ++w) {
    const auto cyc = link_cycle(triangles, w);
    const int d = static_cast<int>(cyc.size());
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        std::vector<Mask> faces;
        for (Mask t : triangles)
          if (!contains(t, w)) faces.push_back(t);
        // w keeps the arc c_i..c_j, x takes c_j..c_i.
        for (int t = i; t < j; ++t) faces.push_back(bit(w) | bit(cyc[t]) | bit(cyc[t + 1]));
        for (int t = j; t < i + d; ++t) faces.push_back(bit(x) | bit(cyc[t % d]) | bit(cyc[(t + 1) % d]));
        faces.push_back(bit(w) | bit(x) | bit(cyc[i]));
        faces.push_back(bit(w) | bit(x) | bit(cyc[j]));
        const SimplicialComplex child(n + 1, faces);
        const CanonicalForm form = canonical_form(child);
        Mask best = 0;
        std::pair<int, int> best_key{n + 1, n + 1};
        for (Mask e : contractible_edges(child)) {
          const auto ends = elements(e);
          std::pair<int, int> key{form.relabeling[ends[0]], form.relabeling[ends[1]]};
          if (key.first > key.second) std::swap(key.first, key.second);
          if (key < best_key) {
            best_key = key;
            best = e;
          }
        }
        if (!(marked_form(child, bit(w) | bit(x)) == marked_form(child, best))) continue;
        if (seen.insert(form.facets).second) out.push_back(form);
      }
  }
  return out;
}

}  // namespace

bool is_2sphere(const SimplicialComplex& k) {
  const int m = k.vertex_count();
  if (m < 4 || k.dimension() != 2 || !k.is_pure()) return false;
  if (k.support() != low_bits(m)) return false;
  const auto faces = k.faces_by_dimension();
  const auto& edges = faces[2];
  const auto& triangles = faces[3];
  for (Mask e : edges) {
    int count = 0;
    for (Mask t : triangles)
      if (is_subset(e, t)) ++count;
    if (count != 2) return false;
  }
  for (int v = 0; v < m; ++v)
    if (link_cycle(triangles, v).empty()) return false;
  if (connected_component_count(k) != 1) return false;
  const long chi = static_cast<long>(m) - static_cast<long>(edges.size()) + static_cast<long>(triangles.size());
  return chi == 2;
}

CensusResult enumerate_graphs(int v, int threads) {
  if (v < 1 || v > 6) throw InputError("graph census supports 1 <= v <= 6");
  std::vector<CanonicalForm> level{canonical_form(graph_complex(Graph(1)))};
  for (int n = 2; n <= v; ++n) level = next_level(level, threads, graph_children);
  CensusResult out;
  out.kind = CensusKind::graphs;
  out.vertex_count = v;
  for (const auto& f : level) out.entries.push_back(entry_of(f));
  return out;
}

CensusResult enumerate_2spheres(int v, int threads) {
  if (v < 4 || v > 8) throw InputError("sphere census supports 4 <= v <= 8");
  std::vector<CanonicalForm> level{canonical_form(SimplicialComplex::simplex_boundary(4))};
  for (int n = 5; n <= v; ++n) level = next_level(level, threads, sphere_children);
  CensusResult out;
  out.kind = CensusKind::spheres;
  out.vertex_count = v;
  for (const auto& f : level) {
    if (!is_2sphere(f.complex())) throw ConsistencyError("census produced a non-sphere");
    out.entries.push_back(entry_of(f));
  }
  return out;
}

CensusResult scan_spheres_for_massey(const CensusResult& census, const ObstructionCatalog& catalog, int threads) {
  if (census.kind != CensusKind::spheres) throw InputError("Massey scan expects a sphere census");
  if (catalog.empty()) throw StateError("obstruction catalog is empty");
  CensusResult out = census;
  for (auto& e : out.entries) {
    e.flag = is_flag(e.complex).flag;
    const ObstructionWitness w = detect_obstruction(e.complex, catalog);
    e.obstruction = w.found;
    if (w.found) e.obstruction_witness = w.vertices;
    e.triple_massey = find_nontrivial_triple(e.complex, Coefficients::rationals(), threads).has_value();
    if (*e.obstruction != *e.triple_massey)
      throw ConsistencyError("obstruction detector and triple-product search disagree on " + e.fingerprint);
  }
  return out;
}

}  // namespace macx
