#pragma once

#include <optional>
#include <string>
#include <vector>

#include "macx/combinatorics.hpp"
#include "macx/massey.hpp"
#include "macx/simplicial.hpp"

namespace macx {

/// The graph as a 1-dimensional complex; every vertex is a 0-face.
SimplicialComplex graph_complex(const Graph& g);
Graph one_skeleton(const SimplicialComplex& k);

/// Pure 2-dimensional, every edge in exactly two triangles, every vertex
/// link a single cycle, connected, Euler characteristic 2, no ghosts.
bool is_2sphere(const SimplicialComplex& k);

enum class CensusKind { spheres, graphs };

struct CensusEntry {
  /// Canonically relabeled object (graphs as 1-dimensional complexes).
  SimplicialComplex complex;
  std::string fingerprint;
  std::optional<bool> flag;
  std::optional<bool> obstruction;
  std::optional<Mask> obstruction_witness;
  std::optional<bool> triple_massey;
};

struct CensusResult {
  CensusKind kind = CensusKind::graphs;
  int vertex_count = 0;
  /// Sorted by canonical form.
  std::vector<CensusEntry> entries;
};

/// Isomorphism classes of graphs on exactly v vertices (1 <= v <= 6),
/// by canonical augmentation one vertex at a time.
CensusResult enumerate_graphs(int v, int threads = 0);

/// Isomorphism classes of triangulated 2-spheres on exactly v vertices
/// (4 <= v <= 8), by canonical augmentation through vertex splits starting
/// from the tetrahedron boundary.
CensusResult enumerate_2spheres(int v, int threads = 0);

/// Annotates each sphere with flagness, the catalog detector and the direct
/// triple-product search; throws ConsistencyError when the two disagree.
CensusResult scan_spheres_for_massey(const CensusResult& census, const ObstructionCatalog& catalog,
                                     int threads = 0);

}  // namespace macx
