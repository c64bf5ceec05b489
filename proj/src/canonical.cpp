#include "macx/canonical.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>

#include "macx/errors.hpp"

namespace macx {

namespace {

using Coloring = std::vector<int>;

// Replaces arbitrary integer keys by their rank among the distinct keys.
template <typename Key>
Coloring rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  return out;
}

int class_count(const Coloring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

class Canonizer {
 public:
  explicit Canonizer(const SimplicialComplex& k) : k_(k), m_(k.vertex_count()) {
    incident_.resize(m_);
    for (std::size_t f = 0; f < k.facets().size(); ++f)
      for (int v : elements(k.facets()[f])) incident_[v].push_back(f);
  }

  Coloring refine(Coloring c) const {
    for (;;) {
      const int before = class_count(c);
      std::vector<std::pair<int, std::vector<std::vector<int>>>> sig(m_);
      for (int v = 0; v < m_; ++v) {
        sig[v].first = c[v];
        for (std::size_t f : incident_[v]) {
          std::vector<int> cols;
          for (int u : elements(k_.facets()[f])) cols.push_back(c[u]);
          std::sort(cols.begin(), cols.end());
          sig[v].second.push_back(std::move(cols));
        }
        std::sort(sig[v].second.begin(), sig[v].second.end());
      }
      c = rank_keys(sig);
      if (class_count(c) == before) return c;
    }
  }

  void search(const Coloring& c, std::vector<int>& path) {
    // Target cell: the lowest color that is shared by several vertices.
    std::vector<int> size(class_count(c), 0);
    for (int x : c) ++size[x];
    int target = -1;
    for (int col = 0; col < static_cast<int>(size.size()); ++col)
      if (size[col] > 1) {
        target = col;
        break;
      }
    if (target < 0) {
      leaf(c);
      return;
    }
    std::vector<int> cell;
    for (int v = 0; v < m_; ++v)
      if (c[v] == target) cell.push_back(v);
    std::vector<int> tried;
    for (int v : cell) {
      if (equivalent_to_tried(v, tried, path)) continue;
      tried.push_back(v);
      Coloring next(m_);
      for (int u = 0; u < m_; ++u) next[u] = 2 * c[u] + ((c[u] == target && u != v) ? 1 : 0);
      path.push_back(v);
      search(refine(rank_keys(next)), path);
      path.pop_back();
    }
  }

  std::vector<Mask> best_facets;
  std::vector<int> best_perm;

 private:
  void leaf(const Coloring& perm) {
    std::vector<Mask> facets;
    facets.reserve(k_.facets().size());
    for (Mask f : k_.facets()) {
      Mask g = 0;
      for (int v : elements(f)) g |= bit(perm[v]);
      facets.push_back(g);
    }
    std::sort(facets.begin(), facets.end());
    if (best_perm.empty() || facets < best_facets) {
      best_facets = std::move(facets);
      best_perm = perm;
    } else if (facets == best_facets) {
      // perm and best_perm send the complex to the same labeled complex.
      std::vector<int> inverse_best(m_);
      for (int v = 0; v < m_; ++v) inverse_best[best_perm[v]] = v;
      std::vector<int> automorphism(m_);
      for (int v = 0; v < m_; ++v) automorphism[v] = inverse_best[perm[v]];
      automorphisms_.push_back(std::move(automorphism));
    }
  }

  // v is skipped when an automorphism fixing the current path pointwise maps
  // some already-explored sibling onto it.
  bool equivalent_to_tried(int v, const std::vector<int>& tried, const std::vector<int>& path) const {
    if (tried.empty() || automorphisms_.empty()) return false;
    std::vector<int> parent(m_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& a : automorphisms_) {
      bool fixes = true;
      for (int p : path)
        if (a[p] != p) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int x = 0; x < m_; ++x) parent[find(x)] = find(a[x]);
    }
    for (int t : tried)
      if (find(t) == find(v)) return true;
    return false;
  }

  const SimplicialComplex& k_;
  int m_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace

bool CanonicalForm::operator<(const CanonicalForm& o) const {
  return std::tie(vertex_count, color_sizes, is_void, facets) <
         std::tie(o.vertex_count, o.color_sizes, o.is_void, o.facets);
}

std::string CanonicalForm::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(vertex_count));
  mix(is_void ? 1 : 0);
  for (int s : color_sizes) mix(static_cast<std::uint64_t>(s));
  mix(facets.size());
  for (Mask f : facets) mix(f);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SimplicialComplex CanonicalForm::complex() const {
  if (is_void) return SimplicialComplex::void_complex(vertex_count);
  return SimplicialComplex(vertex_count, facets);
}

CanonicalForm canonical_form(const SimplicialComplex& k, const std::vector<int>& colors) {
  const int m = k.vertex_count();
  if (!colors.empty() && static_cast<int>(colors.size()) != m)
    throw InputError("canonical_form: one color per vertex expected");
  CanonicalForm out;
  out.vertex_count = m;
  out.is_void = k.is_void();
  Coloring initial = colors.empty() ? Coloring(m, 0) : rank_keys(colors);
  for (int c = 0; c < class_count(initial); ++c)
    out.color_sizes.push_back(static_cast<int>(std::count(initial.begin(), initial.end(), c)));

  Canonizer canon(k);
  std::vector<int> path;
  canon.search(canon.refine(initial), path);
  if (m == 0) {
    out.facets = k.facets();
    return out;
  }
  out.facets = canon.best_facets;
  out.relabeling = canon.best_perm;
  return out;
}

bool isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count() || a.facets().size() != b.facets().size()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace macx
