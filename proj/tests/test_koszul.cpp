#include "doctest.h"

#include "macx/combinatorics.hpp"
#include "macx/errors.hpp"
#include "macx/koszul.hpp"
#include "support.hpp"

using namespace macx;
using namespace macx::testing;

namespace {

using KPtr = std::shared_ptr<const SimplicialComplex>;

KPtr share(SimplicialComplex k) { return std::make_shared<const SimplicialComplex>(std::move(k)); }

const Coefficients Q = Coefficients::rationals();

Cochain parse(const std::string& text, const KPtr& k, const Coefficients& f = Q) { return parse_cochain(text, k, f); }

// Random nonzero monomial of R(K), or nullopt if the draw vanished.
std::optional<Cochain> random_monomial(std::mt19937_64& rng, const KPtr& k) {
  const int m = k->vertex_count();
  const Mask j = rng() & low_bits(m);
  const Mask u = rng() & j;
  auto c = Cochain::monomial(k, Q, u, j & ~u, Scalar(static_cast<long>(rng() % 5) - 2));
  if (c.is_zero()) return std::nullopt;
  return c;
}

SimplicialComplex associahedron_nerve(int n) { return nerve_of_nestohedron(graphical_building_set(path_graph(n + 1))).complex; }

}  // namespace

TEST_CASE("monomials and text form") {
  const auto k = share(pn_nerve(3));
  const auto c = parse("+ v1 u14", share(SimplicialComplex::simplex(14)));
  CHECK(c.to_string() == "+ v1 u14");
  // u-order is normalized with the sign of the permutation.
  const auto pe = share(nerve_of_nestohedron(graphical_building_set(complete_graph(4))).complex);
  const auto a = parse("- v6 u1 u14 u10", pe);
  CHECK(a.to_string() == "+ v6 u1 u10 u14");
  CHECK(parse("v1 u3 + 2 v1 u3", k).to_string() == "+ 3 v1 u3");
  CHECK(parse("+ v1 u3 - v1 u3", k).is_zero());
  CHECK(parse("0", k).is_zero());
  CHECK(parse("v1 u1", k).is_zero());  // u_i v_i = 0
  CHECK(parse("u2 u2", k).is_zero());
  CHECK(parse("v1 v4", k).is_zero());  // non-face
  CHECK(parse("-v2 u5 +1/2 v2 u5", k).to_string() == "- 1/2 v2 u5");
  CHECK_THROWS_AS(parse("+ v9 u1", k), InputError);
  CHECK_THROWS_AS(parse("+ w1", k), InputError);
  CHECK_THROWS_AS(parse("v1 u3 v2 u4 +", k), InputError);
  CHECK_THROWS_AS(parse("v1 u5 + u2", k), InputError);  // mixed bidegree
  const auto one = parse("+ v1 u3", k);
  CHECK(one.degree() == 3);
  CHECK(one.u_count() == 1);
  CHECK(one.multidegree() == set1({1, 3}));
  CHECK(parse("+ v1 u3", k, Coefficients::prime(3)).scaled(2).to_string() == "- v1 u3");
}

TEST_CASE("multiplication") {
  const auto k = share(pn_nerve(3));
  CHECK(multiply(parse("v1 u5", k), parse("v1 u6", k)).is_zero());
  CHECK(multiply(parse("u1", k), parse("u2", k)).to_string() == "+ u1 u2");
  CHECK(multiply(parse("u2", k), parse("u1", k)).to_string() == "- u1 u2");
  CHECK(multiply(parse("u1", k), parse("v1", k)).is_zero());
  CHECK(multiply(parse("v1", k), parse("v4", k)).is_zero());
  CHECK(multiply(parse("v1", k), parse("v2", k)).to_string() == "+ v1 v2");
  const auto other = share(SimplicialComplex::simplex(8));
  CHECK_THROWS_AS(multiply(parse("v1", k), parse("v2", other)), InputError);

  for (int n = 2; n <= 5; ++n) {
    const auto p = share(pn_nerve(n));
    std::string f1 = "v1", f2 = "v" + std::to_string(2 * n), prod = "v1 v" + std::to_string(2 * n);
    for (int i = n + 1; i <= 2 * n - 1; ++i) f1 += " u" + std::to_string(i);
    for (int i = 2; i <= n; ++i) f2 += " u" + std::to_string(i);
    for (int i = 2; i <= 2 * n - 1; ++i) prod += " u" + std::to_string(i);
    const auto product = multiply(parse(f1, p), parse(f2, p));
    const auto expected = parse(prod, p);
    CHECK((product == expected || product == -expected));
  }
}

TEST_CASE("differential") {
  const auto k = share(pn_nerve(4));
  CHECK(differential(parse("u1", k)).to_string() == "+ v1");
  CHECK(differential(parse("u1 u2", k)).to_string() == "- v2 u1 + v1 u2");
  CHECK(differential(parse("v1 u5", k)).is_zero());  // {1,5} non-face
  // The three-fold relation of the n = 4 worked example, up to a global sign.
  const auto lhs = multiply(parse("v1 u5", k), parse("- v2 u3 u6 u7", k)) -
                   multiply(parse("v1 u2 u5 u6", k), parse("v3 u7", k));
  const auto rhs = differential(parse("v1 u2 u3 u5 u6 u7", k));
  CHECK_FALSE(rhs.is_zero());
  CHECK((lhs == rhs || lhs == -rhs));
}

TEST_CASE("property: d∘d = 0 and the Leibniz rule") {
  std::mt19937_64 rng(29);
  int tested = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 7);
    const auto k = share(random_complex(rng, m, 6, 4));
    auto x = random_monomial(rng, k);
    if (!x) continue;
    ++tested;
    CHECK(differential(differential(*x)).is_zero());
    auto y = random_monomial(rng, k);
    if (!y) continue;
    const auto lhs = differential(multiply(*x, *y));
    const auto left = multiply(differential(*x), *y);
    const auto right = multiply(*x, differential(*y));
    const Cochain rhs = (x->degree() % 2 ? left - right : left + right);
    CHECK((lhs - rhs).is_zero());
  }
  CHECK(tested > 300);
}

TEST_CASE("component cohomology") {
  const auto square = share(four_cycle());
  const auto two_points = component_cohomology(square, 1, set1({1, 3}), Q);
  CHECK(two_points.rank == 1);
  REQUIRE(two_points.representatives.size() == 1);
  const auto& rep = two_points.representatives[0];
  CHECK((rep.to_string() == "+ v1 u3" || rep.to_string() == "+ v3 u1" || rep.to_string() == "- v3 u1"));
  CHECK(is_cocycle(rep));
  CHECK_FALSE(is_coboundary(rep));
  // d(u1 u3) = v1 u3 - v3 u1.
  CHECK(is_coboundary(parse("v1 u3 - v3 u1", square)));
  CHECK_FALSE(is_coboundary(parse("v1 u3 + v3 u1", square)));

  const auto simplex = share(SimplicialComplex::simplex(4));
  for (Mask j = 1; j < 16; ++j)
    for (int i = 1; i <= popcount(j); ++i) CHECK(component_cohomology(simplex, i, j, Q).rank == 0);

  const auto p4 = share(pn_nerve(4));
  const auto top = component_cohomology(p4, 6, low_bits(8), Q);
  CHECK(top.rank == 1);
  CHECK(is_cocycle(parse("v1 v8 u2 u3 u4 u5 u6 u7", p4)));
  CHECK_FALSE(is_coboundary(parse("v1 v8 u2 u3 u4 u5 u6 u7", p4)));
}

TEST_CASE("oracle equivalence: Koszul components vs reduced cohomology of K_J") {
  std::mt19937_64 rng(31);
  int mismatches = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 6);
    const auto k = share(random_complex(rng, m, 6, 4));
    for (Mask j = 0; j <= low_bits(m); ++j) {
      const auto kj = restrict_to(*k, j);
      for (int i = 0; i <= popcount(j); ++i) {
        const auto c = component_cohomology(k, i, j, Q, false);
        if (c.rank != reduced_cohomology_rank(kj, popcount(j) - i - 1, Q)) ++mismatches;
      }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("Hochster table of the square") {
  const auto t = hochster_betti_table(four_cycle(), Q);
  CHECK(t.at(0, 0) == 1);
  CHECK(t.at(1, 2) == 2);
  CHECK(t.at(2, 4) == 1);
  CHECK(t.totals() == std::vector<std::size_t>{1, 0, 0, 2, 0, 0, 1, 0, 0});
  // Brute force over the 16 subsets by connected components and H̃^1.
  std::size_t strip = 0, top = 0;
  for (Mask j = 0; j < 16; ++j) {
    const auto kj = restrict_to(four_cycle(), j);
    if (popcount(j) == 2) strip += connected_component_count(kj) - 1;
    if (j == 15) top = reduced_cohomology_rank(kj, 1, Q);
  }
  CHECK(t.at(1, 2) == strip);
  CHECK(t.at(2, 4) == top);
  CHECK(t.to_tsv().find("total\t1\t0\t0\t2\t0\t0\t1") != std::string::npos);
  CHECK(pontryagin_generator_lower_bound(four_cycle(), Q) == 2);
}

TEST_CASE("multigraded table sums to the bigraded one") {
  HochsterOptions o;
  o.multigraded = true;
  const auto t = hochster_betti_table(pn_nerve(3), Q, o);
  std::map<std::pair<int, int>, std::size_t> sums;
  for (const auto& [key, value] : t.multigraded) sums[{key.first, popcount(key.second)}] += value;
  for (const auto& [key, value] : t.bigraded) CHECK(sums[key] == value);
}

TEST_CASE("associahedron strips") {
  HochsterOptions strip;
  strip.strip_only = true;
  const auto as3 = associahedron_nerve(3);
  CHECK(as3.vertex_count() == 9);
  const auto t3 = hochster_betti_table(as3, Q, strip);
  CHECK(t3.at(4, 5) == 3);
  for (int i = 5; i <= 9; ++i) CHECK(t3.at(i, i + 1) == 0);
  const auto as4 = associahedron_nerve(4);
  CHECK(as4.vertex_count() == 14);
  const auto t4 = hochster_betti_table(as4, Q, strip);
  CHECK(t4.at(6, 7) == 7);
  for (int i = 7; i <= 14; ++i) CHECK(t4.at(i, i + 1) == 0);
  // Strip vanishing lines up with the special subgraphs.
  for (int n = 3; n <= 4; ++n) {
    const auto stats = special_subgraph_stats(path_graph(n + 1));
    const auto t = n == 3 ? t3 : t4;
    CHECK(t.at(stats.i_max, stats.i_max + 1) == static_cast<std::size_t>(stats.s));
  }
}

TEST_CASE("property: strip mode equals the full table on graph-associahedra") {
  HochsterOptions strip;
  strip.strip_only = true;
  strip.fingerprint = false;
  HochsterOptions full;
  full.fingerprint = false;
  for (int n = 2; n <= 4; ++n)
    for (const auto& g : all_graphs(n)) {
      if (!g.connected()) continue;
      const auto k = nerve_of_nestohedron(graphical_building_set(g)).complex;
      const auto a = hochster_betti_table(k, Q, strip), b = hochster_betti_table(k, Q, full);
      for (int i = 0; i <= k.vertex_count(); ++i) CHECK(a.at(i, i + 1) == b.at(i, i + 1));
    }
  // 5-vertex graphs with few connected subsets (the full table has 2^m).
  int done = 0;
  for (const auto& g : graph_classes(5)) {
    if (!g.connected()) continue;
    const auto k = nerve_of_nestohedron(graphical_building_set(g)).complex;
    if (k.vertex_count() > 15) continue;
    ++done;
    const auto a = hochster_betti_table(k, Q, strip), b = hochster_betti_table(k, Q, full);
    for (int i = 0; i <= k.vertex_count(); ++i) CHECK(a.at(i, i + 1) == b.at(i, i + 1));
  }
  CHECK(done > 0);
}

TEST_CASE("Poincaré duality of moment-angle manifolds") {
  const auto sq = poincare_duality_check(four_cycle(), Q);
  CHECK(sq.symmetric);
  CHECK(sq.dimension == 6);
  const auto p3 = poincare_duality_check(pn_nerve(3), Q);
  CHECK(p3.symmetric);
  CHECK(p3.dimension == 11);
  const auto p4 = poincare_duality_check(pn_nerve(4), Q);
  CHECK(p4.symmetric);
  CHECK(p4.dimension == 17);
  CHECK(p4.totals[10] > 0);
  // Not a sphere: a path.
  CHECK_FALSE(poincare_duality_check(cx(3, {{1, 2}, {2, 3}}), Q).symmetric);
}

TEST_CASE("Hochster errors and integer torsion") {
  HochsterOptions capped;
  capped.cap = 5;
  CHECK_THROWS_AS(hochster_betti_table(pn_nerve(3), Q, capped), ResourceError);
  CHECK_THROWS_AS(pontryagin_generator_lower_bound(SimplicialComplex::simplex_boundary(3), Q), InputError);
  const auto t = hochster_betti_table(rp2_six(), Coefficients::integers());
  // H̃^2(RP²) ⊗ torsion Z/2 sits in i = 6 - 2 - 1 = 3, j = 6.
  REQUIRE(t.torsion.count({3, 6}));
  CHECK(t.torsion.at({3, 6}) == std::vector<mpz_class>{2});
}

TEST_CASE("Hochster tables do not depend on the thread count") {
  HochsterOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto k = associahedron_nerve(3);
  CHECK(hochster_betti_table(k, Q, one).bigraded == hochster_betti_table(k, Q, many).bigraded);
}
