#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "macx/bits.hpp"
#include "macx/simplicial.hpp"

namespace macx {

/// Simple graph on {0..n-1}, kept as adjacency masks.
class Graph {
 public:
  explicit Graph(int n, const std::vector<std::pair<int, int>>& edges = {});

  int vertex_count() const { return n_; }
  Mask neighbors(int v) const { return adj_[v]; }
  bool has_edge(int a, int b) const { return contains(adj_[a], b); }
  std::vector<std::pair<int, int>> edges() const;
  /// Whether the induced subgraph on s is connected (false for s = ∅).
  bool is_connected(Mask s) const;
  bool connected() const { return is_connected(low_bits(n_)); }
  /// Every s whose induced subgraph is connected, in card_lex order.
  std::vector<Mask> connected_subsets() const;

  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<Mask> adj_;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int n);
/// Vertex v is mapped to perm[v].
Graph relabel(const Graph& g, const std::vector<int>& perm);

/// A family of nonempty subsets of {0..ground-1} containing every singleton
/// and closed under unions of intersecting members. Members are kept in
/// card_lex order.
class BuildingSet {
 public:
  int ground() const { return ground_; }
  const std::vector<Mask>& sets() const { return sets_; }
  bool contains(Mask s) const;
  bool connected() const { return contains(low_bits(ground_)); }
  /// Members other than the whole ground set.
  std::vector<Mask> proper_members() const;
  bool is_subset_of(const BuildingSet& other) const;

  bool operator==(const BuildingSet&) const = default;

 private:
  friend BuildingSet building_set_closure(int ground, const std::vector<Mask>& seeds);
  int ground_ = 0;
  std::vector<Mask> sets_;
};

BuildingSet building_set_closure(int ground, const std::vector<Mask>& seeds);
BuildingSet graphical_building_set(const Graph& g);
/// Singletons and the ground set.
BuildingSet simplex_building_set(int ground);
/// Singletons and the initial segments {0,1}, {0,1,2}, ..., [ground].
BuildingSet cube_building_set(int ground);

/// Faces {1..k} ⊔ {k+2+i} (1-based) cut from the n-cube, in the order they
/// are performed: rows i = 0..n-3, k = 1..n-1-i.
std::vector<Mask> pn_cut_list(int n);
/// Union-closure of the cube building set on [n+1] and the cut list.
BuildingSet pn_building_set(int n);

/// The unique coarsest splitting of s into disjoint members of b.
std::vector<Mask> decompose(Mask s, const BuildingSet& b);

/// A nerve together with the building-set member carried by each vertex.
struct Nerve {
  SimplicialComplex complex;
  std::vector<Mask> labels;
};

/// Nested-set complex: vertices are the proper members in card_lex order.
Nerve nerve_of_nestohedron(const BuildingSet& b);
/// Starts from the nerve of b0 and performs one stellar subdivision per
/// member of b1 \ b0, largest first; vertices are returned in card_lex order
/// of their labels so the result is directly comparable with
/// nerve_of_nestohedron(b1).
Nerve nerve_via_truncations(const BuildingSet& b0, const BuildingSet& b1);

/// The 2-truncated cube 𝒫ⁿ: the cross-polytope on F_1..F_2n (F_i ∥ F_{n+i})
/// with the edges {F_k, F_{n+k+i}}, 1 <= i <= n-2, 1 <= k <= n-i, subdivided
/// in the order of pn_cut_list. Vertex v (0-based) is F_{v+1} for v < 2n,
/// then the new facets in cut order.
SimplicialComplex pn_nerve(int n);

/// One 2-truncation: `added` = `left` ⊔ `right`, both already present.
struct TruncationStep {
  Mask added = 0;
  Mask left = 0;
  Mask right = 0;
};

struct TwoTruncatedCertificate {
  bool success = false;
  /// Cube building set the chain starts from (its non-singleton members).
  std::vector<Mask> base;
  std::vector<TruncationStep> steps;
  /// On failure: building-set members forming a minimal non-face (size >= 3)
  /// of the nerve.
  std::vector<Mask> witness;
};

TwoTruncatedCertificate two_truncated_cube_certificate(const BuildingSet& b);
/// Replays a certificate; true iff every step is a legal 2-truncation that
/// ends at b.
bool validate_certificate(const BuildingSet& b, const TwoTruncatedCertificate& cert);
/// Nerve obtained by subdividing the edges named in a successful
/// certificate, starting from the cube; labeled as nerve_of_nestohedron.
Nerve nerve_from_certificate(const BuildingSet& b, const TwoTruncatedCertificate& cert);

struct SpecialSubgraphStats {
  int i_max = 0;
  std::vector<Mask> specials;
  int s = 0;
};

/// i(γ) for one connected vertex set γ.
int intersection_index(const Graph& g, Mask gamma);
SpecialSubgraphStats special_subgraph_stats(const Graph& g);

enum class ExtensionRule {
  /// Add S ∈ b2 \ b1 containing some member of J.
  any_member,
  /// Add S ∈ b2 \ b1 whose decomposition in b1 lies inside J. These are
  /// exactly the new vertices whose subdivided face lies in nerve(b1)_J, so
  /// nerve(b2)_{J̄} subdivides nerve(b1)_J.
  all_parts,
};

/// J̄ = J ⊔ (members of b2 \ b1 selected by `rule`), in card_lex order.
std::vector<Mask> extend_index_set(const std::vector<Mask>& j, const BuildingSet& b1, const BuildingSet& b2,
                                   ExtensionRule rule = ExtensionRule::any_member);

struct FGammaVectors {
  std::vector<long long> f;  // f_0, f_1, ...
  std::vector<long long> h;  // h_0..h_d
  bool h_symmetric = false;
  std::optional<std::vector<long long>> gamma;
  bool gal_nonnegative = false;
};

FGammaVectors f_gamma_vectors(const SimplicialComplex& k);

}  // namespace macx
