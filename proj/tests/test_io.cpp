#include <gtest/gtest.h>

#include "finitetop/io.hpp"

using namespace finitetop;
using namespace finitetop::io;

TEST(PosetJson, RoundTrip) {
  const auto j = parse_json(R"({"elements":["c","a","b","d"],"covers":[["a","c"],["a","d"],["b","c"],["b","d"]]})",
                            "circle.json");
  const auto p = poset_from_json(j);
  EXPECT_EQ(p.ids(), (std::vector<std::string>{"a", "b", "c", "d"}));
  const auto out = poset_to_json(p);
  EXPECT_EQ(out.dump(),
            R"({"covers":[["a","c"],["a","d"],["b","c"],["b","d"]],"elements":["a","b","c","d"],"t0":true})");
  const auto again = poset_from_json(out);
  EXPECT_EQ(poset_to_json(again), out);
}

TEST(PosetJson, IntegerIdsAndEquivalentPoints) {
  const auto p = poset_from_json(json::parse(R"({"elements":[1,2,3],"covers":[[1,2],[1,3],[2,3],[3,2]]})"));
  EXPECT_FALSE(is_t0(p));
  const auto out = poset_to_json(p);
  EXPECT_EQ(out["covers"].dump(), R"([["1","2"],["1","3"],["2","3"],["3","2"]])");
  EXPECT_EQ(out["t0"], false);
}

TEST(PosetJson, Errors) {
  EXPECT_THROW(poset_from_json(json::parse(R"({"covers":[]})")), DomainError);
  EXPECT_THROW(poset_from_json(json::parse(R"({"elements":["a","a"]})")), DomainError);
  EXPECT_THROW(poset_from_json(json::parse(R"({"elements":["a"],"covers":[["a","z"]]})")), DomainError);
  EXPECT_THROW(poset_from_json(json::parse(R"({"elements":["a"],"covers":[["a"]]})")), DomainError);
  EXPECT_THROW(poset_from_json(json::parse(R"({"elements":[1.5]})")), DomainError);
  EXPECT_THROW(poset_from_json(json::parse(R"([1,2])")), DomainError);
  try {
    poset_from_json(json::parse(R"({"elements":["x","y"],"covers":[["x","y"],["y","x"]],"t0":true})"), "p.json");
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("'x' and 'y'"), std::string::npos);
  }
  EXPECT_THROW(parse_json("{not json", "bad.json"), DomainError);
}

TEST(HyperspaceJson, RequestAndOutput) {
  const auto r = hyperspace_request_from_json(json::parse(R"({"ground":["a","b","c"],"cap":2})"));
  EXPECT_EQ(r.cap, std::optional<std::size_t>(2));
  const auto h = MaterializedHyperspace::build(r.ground, r.cap);
  const auto out = hyperspace_to_json(h);
  EXPECT_EQ(out["size"], 6);
  EXPECT_EQ(out["cap"], 2);
  EXPECT_EQ(out["points"].dump(), R"([["a"],["b"],["c"],["a","b"],["a","c"],["b","c"]])");
  EXPECT_TRUE(hyperspace_to_json(power_finite(2))["cap"].is_null());
  EXPECT_THROW(hyperspace_request_from_json(json::parse(R"({"ground":["a"],"cap":0})")), DomainError);
  EXPECT_THROW(hyperspace_request_from_json(json::parse(R"({"ground":["a"],"cap":-1})")), DomainError);
}

TEST(ComplexJson, RoundTrip) {
  const auto k = complex_from_json(json::parse(R"({"vertices":["v2","v10","v1"],"maximal":[["v10","v1"],["v2"]]})"));
  EXPECT_EQ(complex_to_json(k).dump(), R"({"maximal":[["v2"],["v1","v10"]],"vertices":["v1","v2","v10"]})");
  EXPECT_EQ(complex_from_json(complex_to_json(k)), k);
  EXPECT_THROW(complex_from_json(json::parse(R"({"vertices":["a"],"maximal":[["b"]]})")), DomainError);
  EXPECT_THROW(complex_from_json(json::parse(R"({"vertices":["a"],"maximal":[[]]})")), DomainError);
  EXPECT_THROW(complex_from_json(json::parse(R"({"vertices":["a"]})")), DomainError);
}

TEST(NeighborhoodJson, StrictAndClosing) {
  const auto j = json::parse(R"({"vertices":["a","b","c"],"members":[["a","b","c"]]})");
  EXPECT_EQ(neighborhood_from_json(j, false).size(), 7u);
  EXPECT_THROW(neighborhood_from_json(j, true), DomainError);
  const auto u = neighborhood_from_json(j, false);
  EXPECT_EQ(neighborhood_to_json(u)["members"].size(), 7u);
  EXPECT_EQ(neighborhood_from_json(neighborhood_to_json(u), true).size(), 7u);
}

TEST(CoverJson, Sets) {
  const auto c = cover_from_json(json::parse(R"({"sets":{"U":["1","2"],"V":[2,3]}})"));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1].second, (std::vector<std::string>{"2", "3"}));
  EXPECT_THROW(cover_from_json(json::parse(R"({"sets":{"U":[]}})")), DomainError);
  EXPECT_THROW(cover_from_json(json::parse(R"({"sets":[["1"]]})")), DomainError);
}

TEST(Reports, Homology) {
  HomologyResult h;
  h.betti = {1, 0, 0};
  h.torsion = {{}, {BigInt(2)}, {}};
  EXPECT_EQ(homology_to_json(h).dump(), R"({"betti":[1,0,0],"torsion":[[],[2],[]]})");
  h.torsion[1] = {BigInt(1) << 70};
  EXPECT_EQ(homology_to_json(h)["torsion"][1][0], "1180591620717411303424");
}

TEST(Reports, ShapeScan) {
  std::vector<std::vector<double>> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto rep = shape_scan(FiniteMetricSpace::from_points(pts), {0.5, 1.2});
  const auto j = shape_report_to_json(rep);
  EXPECT_EQ(j["homology"], "unreduced");
  EXPECT_EQ(j["stages"][0]["betti"].dump(), "[4]");
  EXPECT_EQ(j["stages"][1]["betti"].dump(), "[1,1]");
  EXPECT_EQ(j["stages"][1]["simplices"], 8);
  EXPECT_EQ(j["transitions"][0]["rank"].dump(), "[1]");
}
