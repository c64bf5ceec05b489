#include "doctest.h"

#include "macx/canonical.hpp"
#include "macx/errors.hpp"
#include "macx/simplicial.hpp"
#include "support.hpp"

using namespace macx;
using namespace macx::testing;

namespace {

// gcd of all k x k minors, by cofactor expansion; only for tiny matrices.
mpz_class minor_det(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m(rows[0], cols[0]);
  mpz_class det = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<std::size_t> r(rows.begin() + 1, rows.end()), c;
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (t != j) c.push_back(cols[t]);
    const mpz_class sub = m(rows[0], cols[j]) * minor_det(m, r, c);
    det += (j % 2 == 0) ? sub : mpz_class(-sub);
  }
  return det;
}

void subsets_of_size(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                     std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_of_size(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors d_k / d_{k-1}.
std::vector<mpz_class> factors_by_minors(const IntMatrix& m) {
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets_of_size(m.rows(), k, 0, cur, rs);
    subsets_of_size(m.cols(), k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        mpz_class d = minor_det(m, r, c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST_CASE("normalization keeps maximal faces only") {
  const auto k = cx(4, {{1, 2, 3}, {1, 2}, {3, 4}, {4}});
  CHECK(k.facets() == std::vector<Mask>{set1({1, 2, 3}), set1({3, 4})});
  CHECK(k.dimension() == 2);
  CHECK(k.is_face(set1({2, 3})));
  CHECK_FALSE(k.is_face(set1({2, 4})));
  CHECK_THROWS_AS(cx(3, {{1, 4}}), InputError);
}

TEST_CASE("empty and void complexes are distinguished") {
  const SimplicialComplex empty(3, {});
  CHECK(empty.dimension() == -1);
  CHECK(reduced_cohomology(empty, Coefficients::rationals()).rank_in(-1) == 1);
  const auto vd = SimplicialComplex::void_complex(3);
  CHECK(vd.is_void());
  const auto h = reduced_cohomology(vd, Coefficients::rationals());
  CHECK(h.rank_in(-1) == 0);
  CHECK(connected_component_count(empty) == 0);
}

TEST_CASE("induced subcomplex") {
  const auto square = four_cycle();
  const auto two_points = induced_subcomplex(square, set1({1, 3}));
  CHECK(two_points.complex == cx(2, {{1}, {2}}));
  CHECK(two_points.vertex_map == std::vector<int>{0, 2});
  CHECK(connected_component_count(two_points.complex) == 2);
  CHECK(induced_subcomplex(square, low_bits(4)).complex == square);
  CHECK_THROWS_AS(induced_subcomplex(square, bit(5)), InputError);
}

TEST_CASE("reduced cohomology of small complexes") {
  const auto q = Coefficients::rationals();
  const auto circle = SimplicialComplex::simplex_boundary(3);
  const auto hc = reduced_cohomology(circle, q);
  CHECK(hc.rank_in(1) == 1);
  CHECK(hc.rank_in(0) == 0);
  CHECK(hc.rank_in(-1) == 0);

  const auto ball = SimplicialComplex::simplex(4);
  const auto hb = reduced_cohomology(ball, q);
  for (int d = -1; d <= 3; ++d) CHECK(hb.rank_in(d) == 0);
}

TEST_CASE("projective plane: 2-torsion over the integers") {
  const auto rp2 = rp2_six();
  const auto hz = reduced_cohomology(rp2, Coefficients::integers());
  CHECK(hz.torsion_in(2) == std::vector<mpz_class>{2});
  CHECK(hz.torsion_in(1).empty());
  CHECK(hz.rank_in(1) == 0);
  CHECK(hz.rank_in(2) == 0);
  // Universal coefficients: F_2 sees the torsion in two adjacent degrees.
  const auto h2 = reduced_cohomology(rp2, Coefficients::prime(2));
  CHECK(h2.rank_in(1) == 1);
  CHECK(h2.rank_in(2) == 1);
  CHECK(reduced_cohomology(rp2, Coefficients::prime(3)).rank_in(2) == 0);
}

TEST_CASE("Smith normal form agrees with determinantal divisors") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3), dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
    CHECK(invariant_factors(m) == factors_by_minors(m));
  }
  // Boundary of the projective plane: oracle on the real thing.
  const auto faces = rp2_six().faces_by_dimension();
  const IntMatrix d1 = coboundary_matrix(faces[2], faces[3]);
  std::vector<mpz_class> f = invariant_factors(d1);
  CHECK(f.size() == 10);
  CHECK(f.back() == 2);
}

TEST_CASE("rank over Q and F_p") {
  IntMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 4;
  m(1, 0) = 1;
  m(1, 1) = 3;
  CHECK(rank(Coefficients::rationals(), m) == 2);
  CHECK(rank(Coefficients::prime(2), m) == 1);
}

TEST_CASE("connected components") {
  CHECK(connected_component_count(cx(2, {{1}, {2}})) == 2);
  CHECK(connected_component_count(cx(5, {{1, 2}, {4, 5}})) == 2);  // vertex 3 is a ghost
  CHECK(connected_component_count(four_cycle()) == 1);
}

TEST_CASE("stellar subdivision") {
  const auto circle = SimplicialComplex::simplex_boundary(3);
  const auto sub = stellar_subdivision(circle, set1({1, 2}));
  CHECK(sub.vertex_count() == 4);
  CHECK(isomorphic(sub, four_cycle()));
  CHECK_THROWS_AS(stellar_subdivision(four_cycle(), set1({1, 3})), InputError);
  CHECK_THROWS_AS(stellar_subdivision(four_cycle(), 0), InputError);
}

TEST_CASE("barycentric subdivision") {
  const auto path = barycentric_subdivision(SimplicialComplex::simplex(2));
  CHECK(isomorphic(path.complex, cx(3, {{1, 2}, {2, 3}})));
  const auto hexagon = barycentric_subdivision(SimplicialComplex::simplex_boundary(3));
  CHECK(isomorphic(hexagon.complex, cx(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}})));
  const auto sd = barycentric_subdivision(SimplicialComplex::simplex_boundary(4));
  CHECK(sd.complex.vertex_count() == 14);
  CHECK(sd.complex.facets().size() == 24);
}

TEST_CASE("join") {
  const auto point = SimplicialComplex::simplex(1);
  CHECK(join(point, point) == SimplicialComplex::simplex(2));
  // I^2 x I^2 = I^4: nerve is the boundary of the 4-dimensional cross-polytope.
  const auto zero_sphere = cx(2, {{1}, {2}});
  auto cross = zero_sphere;
  for (int i = 0; i < 3; ++i) cross = join(cross, zero_sphere);
  CHECK(isomorphic(join(four_cycle(), four_cycle()), cross));
}

TEST_CASE("canonical forms") {
  const auto a = four_cycle();
  const auto b = relabel(a, {1, 3, 0, 2});
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK_FALSE(canonical_form(a) == canonical_form(cx(4, {{1, 2}, {2, 3}, {3, 4}})));
  CHECK(canonical_form(a).fingerprint() == canonical_form(b).fingerprint());
  // Colors are respected.
  CHECK_FALSE(canonical_form(a, {1, 0, 0, 0}) == canonical_form(a, {1, 1, 0, 0}));
  CHECK(canonical_form(a, {1, 0, 0, 0}) == canonical_form(a, {0, 0, 1, 0}));
}

TEST_CASE("flagness") {
  const auto triangle = SimplicialComplex::simplex_boundary(3);
  const auto r = is_flag(triangle);
  CHECK_FALSE(r.flag);
  CHECK(r.witness == set1({1, 2, 3}));
  CHECK(is_flag(four_cycle()).flag);
}

TEST_CASE("property: H~0 = cc - 1, Euler characteristic balances") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 7);
    const auto k = random_complex(rng, m);
    const Mask j = rng() & low_bits(m);
    const auto kj = restrict_to(k, j);
    const auto h = reduced_cohomology(kj, Coefficients::rationals());
    if (kj.dimension() >= 0) CHECK(h.rank_in(0) + 1 == static_cast<std::size_t>(connected_component_count(kj)));
    long euler_chain = 0, euler_betti = 0;
    const auto faces = kj.faces_by_dimension();
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const long sign = (i % 2 == 0) ? -1 : 1;  // level i is degree i-1
      euler_chain += sign * static_cast<long>(faces[i].size());
      euler_betti += sign * static_cast<long>(h.rank[i]);
    }
    CHECK(euler_chain == euler_betti);
  }
}

TEST_CASE("property: coboundary squares to zero") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = random_complex(rng, 7, 6, 5);
    const auto faces = k.faces_by_dimension();
    for (std::size_t i = 0; i + 2 < faces.size(); ++i) {
      const IntMatrix a = coboundary_matrix(faces[i], faces[i + 1]);
      const IntMatrix b = coboundary_matrix(faces[i + 1], faces[i + 2]);
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
          long s = 0;
          for (std::size_t t = 0; t < b.cols(); ++t) s += b(r, t) * a(t, c);
          CHECK(s == 0);
        }
    }
  }
}

TEST_CASE("property: barycentric subdivision preserves cohomology") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 6);
    const auto k = random_complex(rng, m, 5, 3);
    const auto sd = barycentric_subdivision(k).complex;
    const auto a = reduced_cohomology(k, Coefficients::rationals());
    const auto b = reduced_cohomology(sd, Coefficients::rationals());
    for (int d = -1; d <= k.dimension(); ++d) CHECK(a.rank_in(d) == b.rank_in(d));
  }
}

TEST_CASE("property: canonical form is invariant under relabeling") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 9);
    const auto k = random_complex(rng, m, 7, 4);
    const auto p = random_permutation(rng, m);
    const auto ck = canonical_form(k);
    CHECK(ck == canonical_form(relabel(k, p)));
    CHECK(relabel(k, ck.relabeling) == ck.complex());
  }
}

TEST_CASE("property: Kunneth shift for joins") {
  std::mt19937_64 rng(17);
  const auto q = Coefficients::rationals();
  for (int trial = 0; trial < 60; ++trial) {
    const auto k = random_complex(rng, 2 + static_cast<int>(rng() % 4), 4, 3);
    const auto l = random_complex(rng, 2 + static_cast<int>(rng() % 4), 4, 3);
    const auto hk = reduced_cohomology(k, q), hl = reduced_cohomology(l, q);
    const auto hj = reduced_cohomology(join(k, l), q);
    for (int d = -1; d <= k.dimension() + l.dimension() + 1; ++d) {
      std::size_t expected = 0;
      for (int p = -1; p <= k.dimension(); ++p) expected += hk.rank_in(p) * hl.rank_in(d - 1 - p);
      CHECK(hj.rank_in(d) == expected);
    }
  }
}

TEST_CASE("property: stellar subdivision preserves component count") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = random_complex(rng, 6, 5, 3);
    const auto faces = k.faces_by_dimension();
    if (faces.size() < 2) continue;
    const Mask sigma = faces[1 + rng() % (faces.size() - 1)].front();
    CHECK(connected_component_count(stellar_subdivision(k, sigma)) == connected_component_count(k));
  }
}
