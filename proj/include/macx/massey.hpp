#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "macx/combinatorics.hpp"
#include "macx/koszul.hpp"

namespace macx {

using Position = std::pair<int, int>;

/// Entries c_{k,l}, 1 <= k < l <= n+1, (k,l) != (1,n+1), of a defining
/// system for an n-fold product; c_{i,i+1} are the inputs.
struct DefiningSystem {
  int order = 0;
  std::map<Position, Cochain> entries;

  const Cochain& at(int k, int l) const;
  /// Σ_{k<r<l} c̄_{k,r} c_{r,l}.
  Cochain rhs(int k, int l) const;
  /// Σ_{1<r<n+1} c̄_{1,r} c_{r,n+1}.
  Cochain representative() const;
  /// First position (diagonal order) where d(c_{k,l}) != rhs(k,l), or an
  /// input that is not a cocycle.
  std::optional<Position> first_violation() const;
  bool valid() const { return !first_violation().has_value(); }
};

/// Signs ε_{k,l} = ±1 under which the rescaled system is valid. Positions
/// are fixed in diagonal order, trying +1 before −1.
std::optional<std::map<Position, int>> find_sign_fix(const DefiningSystem& system);
DefiningSystem apply_signs(const DefiningSystem& system, const std::map<Position, int>& signs);

/// Cohomology dimensions of the component an interior entry lives in.
struct ComponentCheck {
  Position position;
  Mask multidegree = 0;
  int u_count = 0;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  bool acyclic() const { return cocycle_dim == coboundary_dim; }
};

/// Every interior component has no cohomology, so all defining systems
/// give the same class.
struct UniquenessCertificate {
  std::vector<ComponentCheck> components;
};

struct MasseyOptions {
  /// Extra attempts with seeded random kernel shifts when the first-solution
  /// system gets stuck.
  int random_retries = 8;
  std::uint64_t seed = 1;
  /// Exhaustive F_2 enumeration of defining systems: off above this many
  /// systems.
  std::size_t exhaustive_bound = std::size_t{1} << 14;
};

struct MasseyVerdict {
  int order = 0;
  bool defined = false;
  /// Position whose equation had no solution in the found system.
  std::optional<Position> undefined_stage;
  std::optional<DefiningSystem> system;
  std::optional<Cochain> representative;
  std::optional<bool> contains_zero;
  std::optional<UniquenessCertificate> certificate;
  /// Triple products: cocycles spanning the indeterminacy modulo coboundaries.
  std::vector<Cochain> indeterminacy;
  /// How `contains_zero` (or undefinedness) was settled: "coset",
  /// "certificate", "coboundary", "exhaustive-f2" or "unresolved".
  std::string resolution;
  /// Set when the answer holds only for the systems that were examined.
  bool partial = false;
  /// Rational products without a certificate: the F_2 reduction, when the
  /// exhaustive enumeration completed.
  std::optional<bool> f2_contains_zero;
  std::optional<std::size_t> f2_class_count;
};

MasseyVerdict triple_massey(const Cochain& a1, const Cochain& a2, const Cochain& a3);
MasseyVerdict higher_massey(const std::vector<Cochain>& classes, const MasseyOptions& options = {});

/// v_i u_{n+i}, i = 1..n, on pn_nerve(n).
std::vector<Cochain> canonical_P_classes(int n, const Coefficients& field = Coefficients::rationals());

/// Whether the verdict's class equals +[f1][f2] or −[f1][f2].
bool decomposability_check(const MasseyVerdict& verdict, const Cochain& f1, const Cochain& f2);

// ------------------------------------------------------------ obstructions

/// Canonical code of a graph on 6 vertices: the least 15-bit edge mask over
/// all relabelings (pair {a<b} -> bit of its position in lex order).
std::uint16_t six_vertex_code(const Graph& g);
Graph graph_from_six_vertex_code(std::uint16_t code);

/// Three disjoint non-edges {a_t, b_t} (a_t < b_t) with a defined,
/// nontrivial ⟨[v_a1 u_b1], [v_a2 u_b2], [v_a3 u_b3]⟩.
struct TripleWitness {
  std::vector<std::pair<int, int>> pairs;
};

/// Searches every 6-vertex subset and every ordered triple of disjoint
/// non-edges inside it. Induced subcomplexes are memoized by canonical form.
std::optional<TripleWitness> find_nontrivial_triple(const SimplicialComplex& k,
                                                    const Coefficients& field = Coefficients::rationals(),
                                                    int threads = 0);

struct ObstructionCatalog {
  std::vector<std::uint16_t> codes;  // ascending

  bool empty() const { return codes.empty(); }
  bool contains(std::uint16_t code) const;
  std::vector<Graph> graphs() const;
};

/// Graphs on exactly 6 vertices (as 1-dimensional complexes) carrying a
/// defined nontrivial triple product of degree-3 monomial classes.
ObstructionCatalog derive_obstruction_catalog(int threads = 0);

enum class ObstructionReading {
  /// Only the induced 1-skeleton is compared (agrees with the direct
  /// triple-product search).
  one_skeleton,
  /// The 6 vertices must induce exactly the catalog graph (no triangles).
  strict,
};

struct ObstructionWitness {
  bool found = false;
  Mask vertices = 0;
};

ObstructionWitness detect_obstruction(const SimplicialComplex& k, const ObstructionCatalog& catalog,
                                      ObstructionReading reading = ObstructionReading::one_skeleton);

/// Some connected component has at least 4 vertices and is not K_4.
bool graph_associahedron_massey_predicate(const Graph& g);

// ---------------------------------------------------------- permutohedron

/// The 3-permutohedron example: its nerve relabeled so that vertex i−1
/// carries facet label i, the four classes a_i, and the transcribed
/// defining system (signs fixed).
struct PermutohedronExample {
  std::shared_ptr<const SimplicialComplex> complex;
  /// label_to_subset[i−1]: the building-set member carried by label i.
  std::vector<Mask> label_to_subset;
  std::vector<Cochain> classes;
  DefiningSystem system;
};

/// Searches labelings of nerve(Pe³) that fix a bottom hexagon (label 1), its
/// opposite (14), and the rings of neighbors of each (2..7, 8..13, cyclic).
/// Accepts the first under which the classes are cocycles of nonzero classes
/// and the transcribed system validates up to entry signs. nullopt if none.
std::optional<PermutohedronExample> solve_pe3_labeling();

}  // namespace macx
