#include "macx/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "macx/errors.hpp"

namespace macx {

std::string to_string(Mask s) {
  std::string out = "{";
  bool first = true;
  for (int v : elements(s)) {
    if (!first) out += ",";
    out += std::to_string(v + 1);
    first = false;
  }
  return out + "}";
}

namespace {

void check_vertex_count(int m) {
  if (m < 0 || m > kMaxVertices)
    throw InputError("vertex count " + std::to_string(m) + " outside 0.." + std::to_string(kMaxVertices));
}

std::vector<Mask> maximal_members(std::vector<Mask> faces) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::stable_sort(faces.begin(), faces.end(), [](Mask a, Mask b) { return popcount(a) > popcount(b); });
  std::vector<Mask> kept;
  for (Mask f : faces) {
    bool covered = false;
    for (Mask g : kept)
      if (is_subset(f, g)) {
        covered = true;
        break;
      }
    if (!covered) kept.push_back(f);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

SimplicialComplex::SimplicialComplex(int m, std::vector<Mask> faces) : m_(m) {
  check_vertex_count(m);
  for (Mask f : faces)
    if (!is_subset(f, low_bits(m)))
      throw InputError("face " + to_string(f) + " has a vertex outside 1.." + std::to_string(m));
  if (faces.empty()) faces.push_back(0);
  facets_ = maximal_members(std::move(faces));
}

SimplicialComplex SimplicialComplex::void_complex(int m) {
  check_vertex_count(m);
  SimplicialComplex k;
  k.m_ = m;
  return k;
}

SimplicialComplex SimplicialComplex::simplex(int vertices) { return SimplicialComplex(vertices, {low_bits(vertices)}); }

SimplicialComplex SimplicialComplex::simplex_boundary(int vertices) {
  std::vector<Mask> faces;
  for (int v = 0; v < vertices; ++v) faces.push_back(low_bits(vertices) & ~bit(v));
  return SimplicialComplex(vertices, faces);
}

bool SimplicialComplex::is_face(Mask s) const {
  for (Mask f : facets_)
    if (is_subset(s, f)) return true;
  return false;
}

int SimplicialComplex::dimension() const {
  if (facets_.empty()) return -2;
  int d = -1;
  for (Mask f : facets_) d = std::max(d, popcount(f) - 1);
  return d;
}

Mask SimplicialComplex::support() const {
  Mask s = 0;
  for (Mask f : facets_) s |= f;
  return s;
}

bool SimplicialComplex::is_pure() const {
  for (Mask f : facets_)
    if (popcount(f) != popcount(facets_.front())) return false;
  return true;
}

std::vector<std::vector<Mask>> SimplicialComplex::faces_by_dimension() const {
  std::vector<Mask> all;
  for (Mask f : facets_) {
    Mask sub = f;
    for (;;) {
      all.push_back(sub);
      if (sub == 0) break;
      sub = (sub - 1) & f;
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<std::vector<Mask>> out(static_cast<std::size_t>(std::max(dimension() + 2, 0)));
  for (Mask s : all) out[popcount(s)].push_back(s);
  return out;
}

std::vector<Mask> SimplicialComplex::adjacency() const {
  std::vector<Mask> adj(m_, 0);
  for (Mask f : facets_)
    for (int v : elements(f)) adj[v] |= f & ~bit(v);
  return adj;
}

std::vector<Mask> SimplicialComplex::minimal_nonfaces() const {
  std::vector<Mask> out;
  if (is_void()) return out;
  const auto faces = faces_by_dimension();
  for (int v = 0; v < m_; ++v)
    if (!is_face(bit(v))) out.push_back(bit(v));
  const Mask verts = support();
  for (std::size_t size = 2; size <= faces.size(); ++size) {
    for (Mask f : faces[size - 1]) {
      const int top = 63 - std::countl_zero(f);
      for (int x = top + 1; x < m_; ++x) {
        if (!contains(verts, x)) continue;
        const Mask s = f | bit(x);
        if (is_face(s)) continue;
        bool minimal = true;
        for (int y : elements(f))
          if (!is_face(s & ~bit(y))) {
            minimal = false;
            break;
          }
        if (minimal) out.push_back(s);
      }
    }
  }
  std::sort(out.begin(), out.end(), card_lex_less);
  return out;
}

InducedSubcomplex induced_subcomplex(const SimplicialComplex& k, Mask subset) {
  if (!is_subset(subset, low_bits(k.vertex_count())))
    throw InputError("vertex subset " + to_string(subset) + " out of range 1.." + std::to_string(k.vertex_count()));
  std::vector<int> map = elements(subset);
  std::vector<int> position(k.vertex_count(), -1);
  for (std::size_t i = 0; i < map.size(); ++i) position[map[i]] = static_cast<int>(i);
  if (k.is_void()) return {SimplicialComplex::void_complex(static_cast<int>(map.size())), map};
  std::vector<Mask> faces;
  for (Mask f : k.facets()) {
    Mask g = 0;
    for (int v : elements(f & subset)) g |= bit(position[v]);
    faces.push_back(g);
  }
  return {SimplicialComplex(static_cast<int>(map.size()), faces), map};
}

SimplicialComplex restrict_to(const SimplicialComplex& k, Mask subset) {
  if (k.is_void()) return k;
  std::vector<Mask> faces;
  faces.reserve(k.facets().size());
  for (Mask f : k.facets()) faces.push_back(f & subset);
  return SimplicialComplex(k.vertex_count(), faces);
}

std::size_t HomologySummary::rank_in(int degree) const {
  const int idx = degree + 1;
  if (idx < 0 || idx >= static_cast<int>(rank.size())) return 0;
  return rank[idx];
}

std::vector<mpz_class> HomologySummary::torsion_in(int degree) const {
  const int idx = degree + 1;
  if (idx < 0 || idx >= static_cast<int>(torsion.size())) return {};
  return torsion[idx];
}

bool HomologySummary::has_torsion() const {
  for (const auto& t : torsion)
    if (!t.empty()) return true;
  return false;
}

IntMatrix coboundary_matrix(const std::vector<Mask>& lower, const std::vector<Mask>& upper) {
  IntMatrix m(upper.size(), lower.size());
  if (lower.empty() || upper.empty()) return m;
  std::unordered_map<Mask, std::size_t> index;
  index.reserve(lower.size() * 2);
  for (std::size_t i = 0; i < lower.size(); ++i) index.emplace(lower[i], i);
  for (std::size_t r = 0; r < upper.size(); ++r) {
    int t = 0;
    for (int v : elements(upper[r])) {
      auto it = index.find(upper[r] & ~bit(v));
      if (it != index.end()) m(r, it->second) = (t % 2 == 0) ? 1 : -1;
      ++t;
    }
  }
  return m;
}

HomologySummary reduced_cohomology(const SimplicialComplex& k, const Coefficients& coeff) {
  HomologySummary h;
  h.coefficients = coeff;
  if (k.is_void()) {
    h.rank = {0};
    h.torsion = {{}};
    return h;
  }
  const auto faces = k.faces_by_dimension();  // index = dimension + 1
  const std::size_t levels = faces.size();
  const Coefficients rank_field = coeff.is_field() ? coeff : Coefficients::rationals();
  // delta_rank[i]: rank of the coboundary from level i to level i+1.
  std::vector<std::size_t> delta_rank(levels, 0);
  std::vector<std::vector<mpz_class>> factors(levels);
  for (std::size_t i = 0; i + 1 < levels; ++i) {
    const IntMatrix d = coboundary_matrix(faces[i], faces[i + 1]);
    if (coeff.kind() == Coefficients::Kind::Integer) {
      factors[i] = invariant_factors(d);
      delta_rank[i] = factors[i].size();
    } else {
      delta_rank[i] = rank(rank_field, d);
    }
  }
  h.rank.resize(levels);
  h.torsion.resize(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    const std::size_t in = i > 0 ? delta_rank[i - 1] : 0;
    h.rank[i] = faces[i].size() - delta_rank[i] - in;
    if (coeff.kind() == Coefficients::Kind::Integer && i > 0)
      for (const auto& f : factors[i - 1])
        if (f > 1) h.torsion[i].push_back(f);
  }
  return h;
}

std::size_t reduced_cohomology_rank(const SimplicialComplex& k, int degree, const Coefficients& field) {
  if (k.is_void() || degree < -1 || degree > k.dimension()) return 0;
  if (degree == -1) return k.dimension() == -1 ? 1 : 0;
  if (degree == 0) return static_cast<std::size_t>(connected_component_count(k) - 1);
  const auto faces = k.faces_by_dimension();
  const std::size_t i = degree + 1;
  const std::size_t out = i + 1 < faces.size() ? rank(field, coboundary_matrix(faces[i], faces[i + 1])) : 0;
  const std::size_t in = rank(field, coboundary_matrix(faces[i - 1], faces[i]));
  return faces[i].size() - out - in;
}

int connected_component_count(const SimplicialComplex& k) {
  const int m = k.vertex_count();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Mask f : k.facets()) {
    if (f == 0) continue;
    const int root = find(lowest(f));
    for (int v : elements(f)) parent[find(v)] = root;
  }
  int count = 0;
  for (int v : elements(k.support()))
    if (find(v) == v) ++count;
  return count;
}

SimplicialComplex stellar_subdivision(const SimplicialComplex& k, Mask sigma) {
  if (sigma == 0 || !k.is_face(sigma))
    throw InputError("stellar subdivision: " + to_string(sigma) + " is not a nonempty face");
  const int m = k.vertex_count();
  if (m + 1 > kMaxVertices) throw ResourceError("stellar subdivision would exceed 64 vertices");
  const Mask w = bit(m);
  std::vector<Mask> faces;
  for (Mask f : k.facets()) {
    if (!is_subset(sigma, f)) {
      faces.push_back(f);
      continue;
    }
    for (int s : elements(sigma)) faces.push_back((f & ~bit(s)) | w);
  }
  return SimplicialComplex(m + 1, faces);
}

Subdivision barycentric_subdivision(const SimplicialComplex& k) {
  Subdivision out{SimplicialComplex::void_complex(0), {}};
  if (k.is_void()) return out;
  for (const auto& level : k.faces_by_dimension())
    for (Mask f : level)
      if (f != 0) out.labels.push_back(f);
  std::sort(out.labels.begin(), out.labels.end(), card_lex_less);
  if (out.labels.size() > static_cast<std::size_t>(kMaxVertices))
    throw ResourceError("barycentric subdivision has " + std::to_string(out.labels.size()) +
                        " vertices; at most 64 are supported");
  std::unordered_map<Mask, int> index;
  for (std::size_t i = 0; i < out.labels.size(); ++i) index.emplace(out.labels[i], static_cast<int>(i));
  std::vector<Mask> chains;
  for (Mask f : k.facets()) {
    std::vector<int> order = elements(f);
    do {
      Mask chain = 0, prefix = 0;
      for (int v : order) {
        prefix |= bit(v);
        chain |= bit(index.at(prefix));
      }
      chains.push_back(chain);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  out.complex = SimplicialComplex(static_cast<int>(out.labels.size()), chains);
  return out;
}

SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l) {
  const int m = k.vertex_count() + l.vertex_count();
  if (m > kMaxVertices) throw ResourceError("join would exceed 64 vertices");
  if (k.is_void() || l.is_void()) return SimplicialComplex::void_complex(m);
  std::vector<Mask> faces;
  for (Mask f : k.facets())
    for (Mask g : l.facets()) faces.push_back(f | (g << k.vertex_count()));
  return SimplicialComplex(m, faces);
}

FlagReport is_flag(const SimplicialComplex& k) {
  for (Mask s : k.minimal_nonfaces())
    if (popcount(s) >= 3) return {false, s};
  return {true, std::nullopt};
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != k.vertex_count()) throw InputError("relabel: permutation size mismatch");
  if (k.is_void()) return k;
  std::vector<Mask> faces;
  for (Mask f : k.facets()) {
    Mask g = 0;
    for (int v : elements(f)) g |= bit(perm[v]);
    faces.push_back(g);
  }
  return SimplicialComplex(k.vertex_count(), faces);
}

}  // namespace macx
