#include "doctest.h"

#include "macx/canonical.hpp"
#include "macx/errors.hpp"
#include "macx/io.hpp"
#include "support.hpp"

using namespace macx;
using namespace macx::testing;

TEST_CASE("complex and graph round trips") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto k = random_complex(rng, 1 + static_cast<int>(rng() % 9));
    const Json j = complex_to_json(k);
    CHECK(complex_from_json(Json::parse(dump(j))) == k);
  }
  // Non-maximal facets normalize on load.
  const auto k = complex_from_json(Json::parse(R"({"m": 3, "facets": [[1,2],[1],[2,3],[1,2]]})"));
  CHECK(k == cx(3, {{1, 2}, {2, 3}}));
  CHECK(complex_to_json(k) == Json::parse(R"({"m": 3, "facets": [[1,2],[2,3]]})"));
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"m": 2, "facets": [[1,3]]})")), InputError);
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"facets": []})")), InputError);
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"m": 2, "facets": [["a"]]})")), InputError);

  const Graph g = graph1(5, {{1, 2}, {2, 3}, {4, 5}});
  CHECK(graph_from_json(graph_to_json(g)) == g);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 3, "edges": [[1,1]]})")), InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 3, "edges": [[1,2,3]]})")), InputError);
}

TEST_CASE("building sets and nerves") {
  const BuildingSet b = pn_building_set(3);
  CHECK(building_set_from_json(building_set_to_json(b)) == b);
  // {1,2} and {2,3} intersect, so {1,2,3} must be listed.
  CHECK_THROWS_AS(building_set_from_json(Json::parse(R"({"ground": 3, "sets": [[1,2],[2,3]]})")), InputError);
  CHECK(building_set_from_json(Json::parse(R"({"ground": 3, "sets": [[1,2],[2,3],[1,2,3]]})")).connected());

  const Nerve n = nerve_of_nestohedron(graphical_building_set(path_graph(3)));
  const Json j = nerve_to_json(n);
  CHECK(j.at("m") == 5);
  CHECK(j.at("labels").at("1") == Json::array({1}));
  CHECK(j.at("labels").size() == 5);
}

TEST_CASE("cochain lists") {
  const auto k = std::make_shared<const SimplicialComplex>(four_cycle());
  const auto list = parse_cochain_list("v1 u3  # first\n\n v2 u4; -v1 u3\n", k, Coefficients::rationals());
  REQUIRE(list.size() == 3);
  CHECK(list[2].to_string() == "- v1 u3");
  CHECK_THROWS_AS(parse_cochain_list("v1 u3\nv9 u1", k, Coefficients::rationals()), InputError);
}

TEST_CASE("verdict and census JSON") {
  const auto v = higher_massey(canonical_P_classes(4));
  const Json j = verdict_to_json(v);
  CHECK(j.at("verdict") == "nontrivial");
  CHECK(j.at("defined") == true);
  CHECK(j.at("contains_zero") == false);
  CHECK(j.at("certificate").at("granted") == true);
  const std::string mono = j.at("monomial_representative");
  CHECK((mono == "+ v1 v8 u2 u3 u4 u5 u6 u7" || mono == "- v1 v8 u2 u3 u4 u5 u6 u7"));

  const auto sq = std::make_shared<const SimplicialComplex>(four_cycle());
  const auto a = parse_cochain("v1 u3", sq, Coefficients::rationals());
  const auto b = parse_cochain("v2 u4", sq, Coefficients::rationals());
  const Json u = verdict_to_json(triple_massey(a, b, a));
  CHECK(u.at("verdict") == "undefined");
  CHECK(u.at("undefined_stage") == Json::array({1, 3}));
  CHECK(u.at("representative").is_null());

  const Json c = census_to_json(enumerate_graphs(4));
  CHECK(c.at("count") == 11);
  CHECK(c.at("objects").size() == 11);
  CHECK(c.at("objects")[0].contains("edges"));
  const Json s = census_to_json(enumerate_2spheres(6));
  CHECK(s.at("objects")[0].contains("facets"));
}

TEST_CASE("catalog file") {
  const auto derived = derive_obstruction_catalog();
  const Json j = catalog_to_json(derived);
  CHECK(j.at("derived_by") == "triple-massey oracle");
  CHECK(j.at("vertex_count") == 6);
  CHECK(catalog_from_json(j).codes == derived.codes);
  // The shipped file is the derivation's output.
  const auto shipped = catalog_from_json(read_json_file(MACX_SOURCE_DIR "/data/obstruction_catalog.json"));
  CHECK(shipped.codes == derived.codes);

  Json bad = j;
  bad["derived_by"] = "hand";
  CHECK_THROWS_AS(catalog_from_json(bad), InputError);
  bad = j;
  bad["vertex_count"] = 5;
  CHECK_THROWS_AS(catalog_from_json(bad), InputError);
  // A relabeled graph maps to the same code.
  Json moved = j;
  moved["graphs"] = Json::array({Json::parse("[[2,5],[2,6],[2,1],[4,3],[4,6],[4,1],[3,5]]")});
  const auto one = catalog_from_json(moved);
  REQUIRE(one.codes.size() == 1);
  CHECK(derived.contains(one.codes[0]));
}

TEST_CASE("compact dump") {
  const Json j = Json::parse(R"({"a": [1, 2], "b": {"c": [[1, 2], [3]]}, "d": []})");
  CHECK(dump(j) == "{\n  \"a\": [1,2],\n  \"b\": {\n    \"c\": [[1,2],[3]]\n  },\n  \"d\": []\n}\n");
  CHECK(Json::parse(dump(j)) == j);
}
