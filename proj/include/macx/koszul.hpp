#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "macx/bits.hpp"
#include "macx/linalg.hpp"
#include "macx/simplicial.hpp"

namespace macx {

/// u_A v_I in R(K). Total degree |A| + 2|I|, bidegree (−|A|, 2|A ∪ I|).
struct Monomial {
  Mask u = 0;
  Mask v = 0;

  Mask multidegree() const { return u | v; }
  int degree() const { return popcount(u) + 2 * popcount(v); }
  bool operator==(const Monomial&) const = default;
};

/// Basis order inside a component: u-part lexicographic, then v-part.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.u != b.u) return lex_less(a.u, b.u);
    return lex_less(a.v, b.v);
  }
};

/// A linear combination of monomials of R(K), homogeneous in bidegree and
/// multidegree. Zero terms are never stored.
class Cochain {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialLess>;

  Cochain(std::shared_ptr<const SimplicialComplex> k, Coefficients field);
  /// Single monomial; zero when it vanishes in R(K).
  static Cochain monomial(std::shared_ptr<const SimplicialComplex> k, Coefficients field, Mask u, Mask v,
                          const Scalar& coefficient = 1);

  const std::shared_ptr<const SimplicialComplex>& complex() const { return k_; }
  const Coefficients& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Degree data of a nonzero cochain.
  int degree() const;
  int u_count() const;
  Mask multidegree() const;

  /// Adds c·m, checking homogeneity against existing terms.
  void add_term(const Monomial& m, const Scalar& c);
  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain scaled(const Scalar& c) const;
  /// (−1)^{deg} c.
  Cochain bar() const;

  bool operator==(const Cochain& o) const { return terms_ == o.terms_; }

  /// "+ v1 u3 - 2 v2 u1 u4"; "0" for zero.
  std::string to_string() const;

 private:
  void check_compatible(const Cochain& o) const;
  std::shared_ptr<const SimplicialComplex> k_;
  Coefficients field_;
  Terms terms_;
};

/// Parses the text form: signed terms, optional rational coefficient, then
/// generators v<i> / u<i> (1-based) in any order. Generators are sorted with
/// the sign of the permutation of the u's; monomials vanishing in R(K) drop.
Cochain parse_cochain(const std::string& text, std::shared_ptr<const SimplicialComplex> k, Coefficients field);

/// Moves c onto `target` along the vertex map v -> perm[v]; u-reordering
/// contributes its permutation sign.
Cochain relabel(const Cochain& c, std::shared_ptr<const SimplicialComplex> target, const std::vector<int>& perm);
/// Same terms with coefficients reduced into `field`.
Cochain change_field(const Cochain& c, const Coefficients& field);

Cochain multiply(const Cochain& a, const Cochain& b);
Cochain differential(const Cochain& a);

/// Basis of the component with multidegree j and |A| = i: u_A v_{J∖A} with
/// J∖A a face, in MonomialLess order.
std::vector<Monomial> component_basis(const SimplicialComplex& k, Mask j, int i);
/// Matrix of d from component (j, i) to (j, i−1).
IntMatrix koszul_differential_matrix(const SimplicialComplex& k, Mask j, int i);

std::vector<Scalar> to_vector(const Cochain& c, const std::vector<Monomial>& basis);
Cochain from_vector(const std::vector<Scalar>& x, const std::vector<Monomial>& basis,
                    std::shared_ptr<const SimplicialComplex> k, const Coefficients& field);

struct ComponentCohomology {
  Mask multidegree = 0;
  int i = 0;
  std::size_t cochain_dim = 0;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  std::size_t rank = 0;
  /// Cocycles whose classes form a basis of the component.
  std::vector<Cochain> representatives;
};

/// Cohomology of R(K) in bidegree (−i, 2|J|), multidegree J.
ComponentCohomology component_cohomology(std::shared_ptr<const SimplicialComplex> k, int i, Mask j,
                                         const Coefficients& field, bool with_representatives = true);

/// x with d(x) = c, inside c's component; nullopt when c is not a coboundary.
/// Zero maps to zero.
std::optional<Cochain> solve_coboundary(const Cochain& c);
bool is_cocycle(const Cochain& c);
bool is_coboundary(const Cochain& c);
/// λ·m with m a single monomial and c − λ·m a coboundary, trying monomials
/// in basis order; nullopt if none exists (or c is zero).
std::optional<Cochain> monomial_representative(const Cochain& c);

/// Bigraded (and optionally multigraded) Betti numbers of k[K].
struct BettiTable {
  Coefficients coefficients = Coefficients::rationals();
  int m = 0;
  bool strip_only = false;
  std::string fingerprint;
  /// (i, j) -> β^{−i,2j}; absent entries are zero.
  std::map<std::pair<int, int>, std::size_t> bigraded;
  /// (i, J) -> β^{−i,2J}, when requested.
  std::map<std::pair<int, Mask>, std::size_t> multigraded;
  /// Integer coefficients: (i, j) -> torsion invariant factors collected
  /// over all J with |J| = j.
  std::map<std::pair<int, int>, std::vector<mpz_class>> torsion;

  std::size_t at(int i, int j) const;
  /// β^p(Z_K) = Σ_{2j−i=p} β^{−i,2j}, p = 0..2m.
  std::vector<std::size_t> totals() const;
  std::string to_tsv() const;
};

struct HochsterOptions {
  bool strip_only = false;
  bool multigraded = false;
  /// Largest m accepted for the full table.
  int cap = 24;
  /// 0 = use MACX_THREADS or the hardware count.
  int threads = 0;
  /// Skip the canonical-form fingerprint (large symmetric complexes).
  bool fingerprint = true;
};

/// Hochster's formula: β^{−i,2J} = rank H̃^{|J|−i−1}(K_J). Strip mode fills
/// only β^{−i,2(i+1)} from connected-component counts.
BettiTable hochster_betti_table(const SimplicialComplex& k, const Coefficients& coeff,
                                const HochsterOptions& options = {});

/// Σ_{i=1}^{m−n} β^{−i,2(i+1)} with n = dim K + 1; K must be flag.
std::size_t pontryagin_generator_lower_bound(const SimplicialComplex& k, const Coefficients& coeff);

struct PoincareReport {
  bool symmetric = true;
  int dimension = 0;  // m + n
  std::vector<std::size_t> totals;
  std::optional<int> first_violation;
};

PoincareReport poincare_duality_check(const SimplicialComplex& k, const Coefficients& field,
                                      const HochsterOptions& options = {});

}  // namespace macx
