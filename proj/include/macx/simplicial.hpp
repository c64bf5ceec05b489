#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "macx/bits.hpp"
#include "macx/linalg.hpp"

namespace macx {

/// Finite simplicial complex on vertices {0..m-1}, stored by its facets.
///
/// Two degenerate complexes are distinguished: the *empty* complex {∅}, whose
/// only facet is the empty set, and the *void* complex with no faces at all.
/// Indices that lie in no face are ghost vertices.
class SimplicialComplex {
 public:
  /// Builds from any generating family of faces; non-maximal members are
  /// dropped. An empty family yields the empty complex {∅}.
  SimplicialComplex(int m, std::vector<Mask> faces);

  static SimplicialComplex void_complex(int m);
  static SimplicialComplex simplex(int vertices);
  static SimplicialComplex simplex_boundary(int vertices);

  int vertex_count() const { return m_; }
  const std::vector<Mask>& facets() const { return facets_; }
  bool is_void() const { return facets_.empty(); }
  bool is_face(Mask s) const;
  /// −1 for the empty complex, −2 for the void complex.
  int dimension() const;
  /// Union of all faces; ghost vertices are excluded.
  Mask support() const;
  bool is_pure() const;
  /// All faces grouped by dimension: entry d+1 holds the d-faces (the empty
  /// face sits at index 0 unless the complex is void). Faces ascend by mask.
  std::vector<std::vector<Mask>> faces_by_dimension() const;
  /// The edges (1-faces) as an adjacency list indexed by vertex.
  std::vector<Mask> adjacency() const;
  /// All minimal non-faces contained in the support plus ghost singletons.
  std::vector<Mask> minimal_nonfaces() const;

  bool operator==(const SimplicialComplex&) const = default;

 private:
  SimplicialComplex() = default;
  int m_ = 0;
  std::vector<Mask> facets_;
};

/// Induced subcomplex relabeled onto {0..|J|-1}; vertex_map[k] is the
/// original vertex carried by new vertex k.
struct InducedSubcomplex {
  SimplicialComplex complex;
  std::vector<int> vertex_map;
};

InducedSubcomplex induced_subcomplex(const SimplicialComplex& k, Mask subset);
/// K_J kept on the original vertex set (vertices outside J become ghosts).
SimplicialComplex restrict_to(const SimplicialComplex& k, Mask subset);

/// Reduced cohomology; rank[d+1] is the rank in degree d for d = −1..dim.
struct HomologySummary {
  Coefficients coefficients = Coefficients::rationals();
  std::vector<std::size_t> rank;
  /// Integer coefficients only: torsion[d+1] lists invariant factors > 1 of
  /// H^d.
  std::vector<std::vector<mpz_class>> torsion;

  std::size_t rank_in(int degree) const;
  std::vector<mpz_class> torsion_in(int degree) const;
  bool has_torsion() const;
};

HomologySummary reduced_cohomology(const SimplicialComplex& k, const Coefficients& coeff);
/// Fast path: rank of reduced cohomology in one degree over a field.
std::size_t reduced_cohomology_rank(const SimplicialComplex& k, int degree, const Coefficients& field);

/// Coboundary matrix delta^{d}: C^d -> C^{d+1} for d >= -1, with faces in
/// ascending mask order and the sign convention d[v0<..<vk] = Σ(−1)^t[..v̂t..].
IntMatrix coboundary_matrix(const std::vector<Mask>& lower, const std::vector<Mask>& upper);

/// Components of the 1-skeleton over faces (isolated vertices count; ghosts do not).
int connected_component_count(const SimplicialComplex& k);

/// Star of sigma replaced by the cone (new vertex m) over ∂sigma * lk(sigma).
SimplicialComplex stellar_subdivision(const SimplicialComplex& k, Mask sigma);

/// Vertices of the result are the nonempty faces of k, listed in
/// card_lex order in `labels`.
struct Subdivision {
  SimplicialComplex complex;
  std::vector<Mask> labels;
};
Subdivision barycentric_subdivision(const SimplicialComplex& k);

/// Vertices of l are shifted by k.vertex_count().
SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l);

/// Flag test; `witness` is a minimal non-face with at least three vertices.
struct FlagReport {
  bool flag = true;
  std::optional<Mask> witness;
};
FlagReport is_flag(const SimplicialComplex& k);

/// Relabel: new vertex perm[v] for old vertex v.
SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<int>& perm);

}  // namespace macx
