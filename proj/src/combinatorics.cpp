#include "macx/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "macx/errors.hpp"

namespace macx {

namespace {

void check_ground(int ground) {
  if (ground < 1 || ground > kMaxVertices) throw InputError("ground set size must be in 1..64");
}

void sort_card_lex(std::vector<Mask>& xs) { std::sort(xs.begin(), xs.end(), card_lex_less); }

// Members of `family` contained in s that are maximal there.
std::vector<Mask> maximal_within(Mask s, const std::vector<Mask>& family) {
  std::vector<Mask> inside;
  for (Mask t : family)
    if (t && is_subset(t, s)) inside.push_back(t);
  std::vector<Mask> out;
  for (Mask t : inside) {
    bool maximal = true;
    for (Mask u : inside)
      if (u != t && is_subset(t, u)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

bool union_closed(const std::vector<Mask>& family) {
  std::unordered_set<Mask> present(family.begin(), family.end());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if ((family[i] & family[j]) && !present.count(family[i] | family[j])) return false;
  return true;
}

// Reorders a nerve so that its vertices follow card_lex order of the labels.
Nerve sorted_nerve(const SimplicialComplex& k, const std::vector<Mask>& labels) {
  std::vector<int> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return card_lex_less(labels[a], labels[b]); });
  std::vector<int> perm(labels.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) perm[order[pos]] = static_cast<int>(pos);
  Nerve out{relabel(k, perm), {}};
  for (int v : order) out.labels.push_back(labels[v]);
  return out;
}

Mask face_of_labels(const std::vector<Mask>& labels, const std::vector<Mask>& members) {
  Mask face = 0;
  for (Mask s : members) {
    auto it = std::find(labels.begin(), labels.end(), s);
    if (it == labels.end()) throw ConsistencyError("member " + to_string(s) + " is not a vertex of the nerve");
    face |= bit(static_cast<int>(it - labels.begin()));
  }
  return face;
}

}  // namespace

// ---------------------------------------------------------------- graphs

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n, 0) {
  if (n < 0 || n > kMaxVertices) throw InputError("graph vertex count must be in 0..64");
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("edge endpoint out of range");
    if (a == b) throw InputError("self-loops are not allowed");
    adj_[a] |= bit(b);
    adj_[b] |= bit(a);
  }
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b : elements(adj_[a] & ~low_bits(a + 1))) out.emplace_back(a, b);
  return out;
}

bool Graph::is_connected(Mask s) const {
  if (!s) return false;
  Mask seen = bit(lowest(s)), frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (int v : elements(frontier)) next |= adj_[v];
    next &= s & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == s;
}

std::vector<Mask> Graph::connected_subsets() const {
  if (n_ > 30) throw ResourceError("connected subset enumeration is limited to 30 vertices");
  std::vector<Mask> out;
  for (Mask s = 1; s <= low_bits(n_); ++s)
    if (is_connected(s)) out.push_back(s);
  sort_card_lex(out);
  return out;
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph cycle_graph(int n) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph star_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, e);
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> e;
  for (auto [a, b] : g.edges()) e.emplace_back(perm.at(a), perm.at(b));
  return Graph(g.vertex_count(), e);
}

// --------------------------------------------------------- building sets

bool BuildingSet::contains(Mask s) const {
  return std::binary_search(sets_.begin(), sets_.end(), s, card_lex_less);
}

std::vector<Mask> BuildingSet::proper_members() const {
  std::vector<Mask> out;
  for (Mask s : sets_)
    if (s != low_bits(ground_)) out.push_back(s);
  return out;
}

bool BuildingSet::is_subset_of(const BuildingSet& other) const {
  if (ground_ != other.ground_) return false;
  return std::all_of(sets_.begin(), sets_.end(), [&](Mask s) { return other.contains(s); });
}

BuildingSet building_set_closure(int ground, const std::vector<Mask>& seeds) {
  check_ground(ground);
  std::unordered_set<Mask> present;
  std::vector<Mask> family;
  auto add = [&](Mask s) {
    if (present.insert(s).second) family.push_back(s);
  };
  for (int i = 0; i < ground; ++i) add(bit(i));
  for (Mask s : seeds) {
    if (!s) throw InputError("building set members must be nonempty");
    if (!is_subset(s, low_bits(ground))) throw InputError("building set member " + to_string(s) + " exceeds the ground set");
    add(s);
  }
  // Each new member is paired against everything before it.
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const Mask a = family[i], b = family[j];
      if ((a & b) && !is_subset(a, b) && !is_subset(b, a)) add(a | b);
    }
  BuildingSet out;
  out.ground_ = ground;
  out.sets_ = std::move(family);
  sort_card_lex(out.sets_);
  return out;
}

BuildingSet graphical_building_set(const Graph& g) {
  if (g.vertex_count() < 1) throw InputError("graph must have at least one vertex");
  return building_set_closure(g.vertex_count(), g.connected_subsets());
}

BuildingSet simplex_building_set(int ground) {
  check_ground(ground);
  return building_set_closure(ground, {low_bits(ground)});
}

BuildingSet cube_building_set(int ground) {
  check_ground(ground);
  std::vector<Mask> seeds;
  for (int i = 2; i <= ground; ++i) seeds.push_back(low_bits(i));
  return building_set_closure(ground, seeds);
}

std::vector<Mask> pn_cut_list(int n) {
  if (n < 2) throw InputError("𝒫ⁿ needs n >= 2");
  std::vector<Mask> cuts;
  for (int i = 0; i <= n - 3; ++i)
    for (int k = 1; k <= n - 1 - i; ++k) cuts.push_back(low_bits(k) | bit(k + 1 + i));
  return cuts;
}

BuildingSet pn_building_set(int n) {
  std::vector<Mask> seeds = cube_building_set(n + 1).sets();
  for (Mask c : pn_cut_list(n)) seeds.push_back(c);
  return building_set_closure(n + 1, seeds);
}

std::vector<Mask> decompose(Mask s, const BuildingSet& b) {
  if (!is_subset(s, low_bits(b.ground()))) throw InputError("subset exceeds the ground set");
  return maximal_within(s, b.sets());
}

// ----------------------------------------------------------------- nerves

Nerve nerve_of_nestohedron(const BuildingSet& b) {
  if (b.ground() < 2) throw InputError("nestohedron needs a ground set of at least 2 elements");
  if (!b.connected()) throw InputError("building set is not connected; compose its components by join instead");
  const std::vector<Mask> members = b.proper_members();
  const int p = static_cast<int>(members.size());
  if (p > kMaxVertices) throw ResourceError("nerve would have more than 64 vertices");

  std::vector<Mask> compatible(p, 0);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      const Mask a = members[i], c = members[j];
      const bool nested = is_subset(a, c) || is_subset(c, a);
      const bool disjoint_ok = !(a & c) && !b.contains(a | c);
      if (nested || disjoint_ok) compatible[i] |= bit(j);
    }

  std::vector<Mask> facets;
  std::vector<int> face;
  // Unions of pairwise disjoint subfamilies of `face` together with `x`.
  std::function<bool(const std::vector<int>&, std::size_t, Mask)> union_ok =
      [&](const std::vector<int>& pool, std::size_t start, Mask acc) -> bool {
    for (std::size_t t = start; t < pool.size(); ++t) {
      const Mask s = members[pool[t]];
      if (s & acc) continue;
      if (b.contains(acc | s)) return false;
      if (!union_ok(pool, t + 1, acc | s)) return false;
    }
    return true;
  };
  std::function<void(int, Mask)> grow = [&](int next, Mask candidates) {
    bool extended = false;
    for (int x = next; x < p; ++x) {
      if (!contains(candidates, x)) continue;
      std::vector<int> pool;
      for (int y : face)
        if (!(members[y] & members[x])) pool.push_back(y);
      if (!union_ok(pool, 0, members[x])) continue;
      extended = true;
      face.push_back(x);
      grow(x + 1, candidates & compatible[x]);
      face.pop_back();
    }
    if (!extended) {
      Mask f = 0;
      for (int y : face) f |= bit(y);
      facets.push_back(f);
    }
  };
  grow(0, low_bits(p));
  return Nerve{SimplicialComplex(p, facets), members};
}

Nerve nerve_via_truncations(const BuildingSet& b0, const BuildingSet& b1) {
  if (!b0.is_subset_of(b1)) throw InputError("truncation base must be contained in the target building set");
  if (!b1.connected()) throw InputError("building set is not connected");
  Nerve start = nerve_of_nestohedron(b0);
  SimplicialComplex k = start.complex;
  std::vector<Mask> labels = start.labels;

  std::vector<Mask> extra;
  for (Mask s : b1.sets())
    if (!b0.contains(s)) extra.push_back(s);
  std::sort(extra.begin(), extra.end(), [](Mask a, Mask c) {
    if (popcount(a) != popcount(c)) return popcount(a) > popcount(c);
    return lex_less(a, c);
  });

  std::vector<Mask> current = b0.sets();
  for (std::size_t idx = 0; idx < extra.size(); ++idx) {
    const Mask s = extra[idx];
    for (std::size_t earlier = 0; earlier < idx; ++earlier)
      if (is_subset(extra[earlier], s)) throw ConsistencyError("truncation order is not inverse to inclusion");
    const std::vector<Mask> parts = maximal_within(s, current);
    Mask cover = 0;
    for (Mask t : parts) {
      if (cover & t) throw ConsistencyError("decomposition of " + to_string(s) + " is not disjoint");
      cover |= t;
    }
    if (cover != s || parts.size() < 2) throw ConsistencyError("cannot decompose " + to_string(s));
    const Mask sigma = face_of_labels(labels, parts);
    if (!k.is_face(sigma)) throw ConsistencyError("decomposition face of " + to_string(s) + " is absent");
    k = stellar_subdivision(k, sigma);
    labels.push_back(s);
    current.push_back(s);
  }
  return sorted_nerve(k, labels);
}

SimplicialComplex pn_nerve(int n) {
  if (n < 2) throw InputError("𝒫ⁿ needs n >= 2");
  const int cuts = n * (n - 1) / 2 - 1;
  if (2 * n + cuts > kMaxVertices) throw ResourceError("𝒫ⁿ nerve would exceed 64 vertices");
  std::vector<Mask> facets;
  for (Mask choice = 0; choice <= low_bits(n); ++choice) {
    Mask f = 0;
    for (int i = 0; i < n; ++i) f |= contains(choice, i) ? bit(n + i) : bit(i);
    facets.push_back(f);
  }
  SimplicialComplex k(2 * n, facets);
  for (int i = 0; i <= n - 3; ++i)
    for (int c = 1; c <= n - 1 - i; ++c) {
      // F_c and F_{n+c+1+i}.
      const Mask edge = bit(c - 1) | bit(n + c + i);
      if (!k.is_face(edge)) throw ConsistencyError("cut face " + to_string(edge) + " is absent");
      k = stellar_subdivision(k, edge);
    }
  return k;
}

// ----------------------------------------------------------- certificates

namespace {

class CertificateSearch {
 public:
  explicit CertificateSearch(const BuildingSet& b) : sets_(b.sets()) {
    if (sets_.size() > 64) throw ResourceError("certificate search supports at most 64 members");
    full_ = low_bits(static_cast<int>(sets_.size()));
    for (std::size_t i = 0; i < sets_.size(); ++i)
      if (popcount(sets_[i]) == 1 || sets_[i] == low_bits(b.ground())) fixed_ |= bit(static_cast<int>(i));
  }

  bool run() { return search(full_); }

  // Forward order: reverse of the removals.
  std::vector<TruncationStep> steps() const { return {removed_.rbegin(), removed_.rend()}; }
  std::vector<Mask> base() const {
    std::vector<Mask> out;
    for (int i : elements(final_state_))
      if (popcount(sets_[i]) > 1) out.push_back(sets_[i]);
    return out;
  }

 private:
  std::vector<Mask> family(Mask state) const {
    std::vector<Mask> out;
    for (int i : elements(state)) out.push_back(sets_[i]);
    return out;
  }

  bool is_cube(Mask state) const {
    const auto fam = family(state);
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        const Mask a = fam[i], c = fam[j];
        if ((a & c) && !is_subset(a, c) && !is_subset(c, a)) return false;
      }
    for (Mask s : fam)
      if (popcount(s) > 1) {
        std::vector<Mask> below;
        for (Mask t : fam)
          if (t != s && is_subset(t, s)) below.push_back(t);
        if (maximal_within(s, below).size() != 2) return false;
      }
    return true;
  }

  bool search(Mask state) {
    if (is_cube(state)) {
      final_state_ = state;
      return true;
    }
    if (failed_.count(state)) return false;
    // Try to undo the largest truncations first.
    std::vector<int> order = elements(state & ~fixed_);
    std::sort(order.begin(), order.end(), [&](int a, int c) { return card_lex_less(sets_[c], sets_[a]); });
    for (int idx : order) {
      const Mask s = sets_[idx];
      const Mask rest = state & ~bit(idx);
      const auto fam = family(rest);
      bool closed = true;
      for (std::size_t i = 0; i < fam.size() && closed; ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
          if ((fam[i] & fam[j]) && (fam[i] | fam[j]) == s) {
            closed = false;
            break;
          }
      if (!closed) continue;
      const auto parts = maximal_within(s, fam);
      if (parts.size() != 2) continue;
      removed_.push_back({s, parts[0], parts[1]});
      if (search(rest)) return true;
      removed_.pop_back();
    }
    failed_.insert(state);
    return false;
  }

  std::vector<Mask> sets_;
  Mask full_ = 0, fixed_ = 0, final_state_ = 0;
  std::unordered_set<Mask> failed_;
  std::vector<TruncationStep> removed_;
};

}  // namespace

TwoTruncatedCertificate two_truncated_cube_certificate(const BuildingSet& b) {
  if (!b.connected()) throw InputError("building set is not connected");
  TwoTruncatedCertificate cert;
  CertificateSearch search(b);
  if (search.run()) {
    cert.success = true;
    cert.base = search.base();
    cert.steps = search.steps();
    return cert;
  }
  const Nerve nerve = nerve_of_nestohedron(b);
  const FlagReport flag = is_flag(nerve.complex);
  if (flag.flag) throw ConsistencyError("flag nestohedron without a 2-truncation sequence");
  for (int v : elements(*flag.witness)) cert.witness.push_back(nerve.labels[v]);
  return cert;
}

bool validate_certificate(const BuildingSet& b, const TwoTruncatedCertificate& cert) {
  if (!cert.success) return false;
  std::vector<Mask> current;
  for (int i = 0; i < b.ground(); ++i) current.push_back(bit(i));
  for (Mask s : cert.base) current.push_back(s);
  if (!union_closed(current)) return false;
  const BuildingSet base = building_set_closure(b.ground(), cert.base);
  if (!base.connected() || static_cast<int>(base.sets().size()) != 2 * b.ground() - 1) return false;
  if (base.sets().size() != current.size()) return false;
  for (Mask s : base.sets())
    if (popcount(s) > 1 && maximal_within(s, [&] {
                             std::vector<Mask> below;
                             for (Mask t : base.sets())
                               if (t != s) below.push_back(t);
                             return below;
                           }())
                                   .size() != 2)
      return false;
  for (const auto& step : cert.steps) {
    const bool has_left = std::find(current.begin(), current.end(), step.left) != current.end();
    const bool has_right = std::find(current.begin(), current.end(), step.right) != current.end();
    const bool fresh = std::find(current.begin(), current.end(), step.added) == current.end();
    if (!has_left || !has_right || !fresh) return false;
    if ((step.left & step.right) || (step.left | step.right) != step.added) return false;
    current.push_back(step.added);
    if (!union_closed(current)) return false;
  }
  sort_card_lex(current);
  return current == b.sets();
}

Nerve nerve_from_certificate(const BuildingSet& b, const TwoTruncatedCertificate& cert) {
  if (!validate_certificate(b, cert)) throw InputError("certificate does not describe this building set");
  const Nerve cube = nerve_of_nestohedron(building_set_closure(b.ground(), cert.base));
  SimplicialComplex k = cube.complex;
  std::vector<Mask> labels = cube.labels;
  for (const auto& step : cert.steps) {
    const Mask edge = face_of_labels(labels, {step.left, step.right});
    if (!k.is_face(edge)) throw ConsistencyError("truncated edge is absent");
    k = stellar_subdivision(k, edge);
    labels.push_back(step.added);
  }
  return sorted_nerve(k, labels);
}

// ------------------------------------------------------ special subgraphs

int intersection_index(const Graph& g, Mask gamma) {
  int count = 0;
  for (Mask other : g.connected_subsets()) {
    const Mask common = gamma & other;
    if (common) {
      if (common != gamma && common != other) ++count;
    } else if (g.is_connected(gamma | other)) {
      ++count;
    }
  }
  return count;
}

SpecialSubgraphStats special_subgraph_stats(const Graph& g) {
  if (g.vertex_count() < 2) throw InputError("special subgraphs need at least 2 vertices");
  if (!g.connected()) throw InputError("graph is not connected");
  const auto subsets = g.connected_subsets();
  SpecialSubgraphStats out;
  for (Mask gamma : subsets) {
    int count = 0;
    for (Mask other : subsets) {
      const Mask common = gamma & other;
      if (common ? (common != gamma && common != other) : g.is_connected(gamma | other)) ++count;
    }
    if (count > out.i_max) {
      out.i_max = count;
      out.specials.clear();
    }
    if (count == out.i_max) out.specials.push_back(gamma);
  }
  out.s = static_cast<int>(out.specials.size());
  return out;
}

std::vector<Mask> extend_index_set(const std::vector<Mask>& j, const BuildingSet& b1, const BuildingSet& b2,
                                   ExtensionRule rule) {
  if (!b1.is_subset_of(b2)) throw InputError("first building set must be contained in the second");
  for (Mask s : j) {
    if (s == low_bits(b1.ground())) throw InputError("index set may not contain the whole ground set");
    if (!b1.contains(s)) throw InputError(to_string(s) + " is not a member of the first building set");
  }
  std::vector<Mask> out = j;
  for (Mask s : b2.proper_members()) {
    if (b1.contains(s)) continue;
    if (rule == ExtensionRule::any_member) {
      if (std::any_of(j.begin(), j.end(), [&](Mask t) { return t != s && is_subset(t, s); })) out.push_back(s);
    } else {
      const auto parts = decompose(s, b1);
      if (std::all_of(parts.begin(), parts.end(),
                      [&](Mask t) { return std::find(j.begin(), j.end(), t) != j.end(); }))
        out.push_back(s);
    }
  }
  sort_card_lex(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ------------------------------------------------------------ f and gamma

FGammaVectors f_gamma_vectors(const SimplicialComplex& k) {
  if (k.is_void()) throw InputError("void complex has no f-vector");
  if (!k.is_pure()) throw InputError("f/γ-vectors need a pure complex");
  const auto faces = k.faces_by_dimension();
  FGammaVectors out;
  for (std::size_t i = 1; i < faces.size(); ++i) out.f.push_back(static_cast<long long>(faces[i].size()));
  const int d = k.dimension() + 1;
  auto binom = [](long long n, long long r) {
    if (r < 0 || r > n) return 0LL;
    long long c = 1;
    for (long long t = 1; t <= r; ++t) c = c * (n - r + t) / t;
    return c;
  };
  for (int kk = 0; kk <= d; ++kk) {
    long long h = 0;
    for (int i = 0; i <= kk; ++i) {
      const long long f = static_cast<long long>(faces[i].size());  // f_{i-1}
      const long long term = binom(d - i, kk - i) * f;
      h += ((kk - i) % 2 == 0) ? term : -term;
    }
    out.h.push_back(h);
  }
  out.h_symmetric = std::equal(out.h.begin(), out.h.end(), out.h.rbegin());
  if (out.h_symmetric) {
    std::vector<long long> rem = out.h, gamma;
    for (int i = 0; 2 * i <= d; ++i) {
      const long long g = rem[i];
      gamma.push_back(g);
      for (int t = 0; t <= d - 2 * i; ++t) rem[i + t] -= g * binom(d - 2 * i, t);
    }
    if (std::any_of(rem.begin(), rem.end(), [](long long r) { return r != 0; }))
      throw ConsistencyError("γ-vector expansion left a remainder");
    out.gal_nonnegative = std::all_of(gamma.begin(), gamma.end(), [](long long g) { return g >= 0; });
    out.gamma = std::move(gamma);
  }
  return out;
}

}  // namespace macx
