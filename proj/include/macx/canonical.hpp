#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macx/simplicial.hpp"

namespace macx {

/// Relabeling-invariant encoding of a complex: two (colored) complexes have
/// equal forms iff they are isomorphic by a color-preserving bijection.
struct CanonicalForm {
  int vertex_count = 0;
  /// Sizes of the vertex color classes in canonical order (one class when
  /// no colors were given).
  std::vector<int> color_sizes;
  bool is_void = false;
  /// Relabeled facets, ascending.
  std::vector<Mask> facets;
  /// relabeling[v] is the canonical label of original vertex v.
  std::vector<int> relabeling;

  bool operator==(const CanonicalForm& o) const {
    return vertex_count == o.vertex_count && color_sizes == o.color_sizes && is_void == o.is_void &&
           facets == o.facets;
  }
  bool operator<(const CanonicalForm& o) const;
  /// Stable 64-bit FNV-1a digest of the certificate, shown as hex.
  std::string fingerprint() const;
  SimplicialComplex complex() const;
};

/// `colors`, when given, has one entry per vertex; only its induced ordered
/// partition matters.
CanonicalForm canonical_form(const SimplicialComplex& k, const std::vector<int>& colors = {});

bool isomorphic(const SimplicialComplex& a, const SimplicialComplex& b);

}  // namespace macx
