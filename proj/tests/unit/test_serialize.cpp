#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "manin/serialize.hpp"

using namespace manin;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(MANIN_FIXTURE_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string schema_path(const std::string& text) {
  try {
    parse_pair_spec(text);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(PairDocument, APlusBFixtureHasRankTwoOverAPoint) {
  const Pair p = build_pair(parse_pair_spec(fixture("a-plus-b.json")));
  EXPECT_EQ(p.rank(), 2u);
  EXPECT_EQ(p.coordinates().size(), 0u);
  EXPECT_EQ(p.A(), a_plus_b(1, 2, 3, 4).A());
  EXPECT_EQ(p.Astar(), a_plus_b(1, 2, 3, 4).Astar());
}

TEST(PairDocument, PoissonFixtureMatchesTheConstructor) {
  const Pair p = build_pair(parse_pair_spec(fixture("poisson-x1.json")));
  const Coordinates c = Coordinates::standard(2);
  const Polynomial x1 = parse_polynomial("x1", c);
  const Pair q = poisson_double({c, {{Polynomial(c), x1}, {-x1, Polynomial(c)}}});
  EXPECT_EQ(p.A(), q.A());
  EXPECT_EQ(p.Astar(), q.Astar());
}

TEST(PairDocument, ExportRoundTrips) {
  for (const char* name : {"abelian.json", "a-plus-b.json", "poisson-x1.json", "broken-rank3.json"}) {
    const Pair p = build_pair(parse_pair_spec(fixture(name)));
    const std::string once = export_pair(p);
    const Pair q = build_pair(parse_pair_spec(once));
    EXPECT_EQ(p.A(), q.A()) << name;
    EXPECT_EQ(p.Astar(), q.Astar()) << name;
    EXPECT_EQ(once, export_pair(q)) << name;
  }
}

TEST(PairDocument, ConstructedPairsRoundTrip) {
  const ExactPair e = book_triangular();
  const Pair q = build_pair(parse_pair_spec(export_pair(e.pair)));
  EXPECT_EQ(e.pair.Astar(), q.Astar());
}

TEST(PairDocument, DefaultCoordinatesAndDensity) {
  const PairSpec s = parse_pair_spec(R"({"base_dim": 2, "rank": 1, "A": {}, "Astar": {}})");
  EXPECT_EQ(s.coords.names(), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(s.frame.s_density, 1);
}

TEST(PairDocument, IntegerPolynomialsAccepted) {
  const PairSpec s = parse_pair_spec(
      R"({"base_dim": 0, "rank": 2, "A": {"brackets": {"1,2": [1, -2]}}, "Astar": {}})");
  EXPECT_EQ(s.a.bracket(0, 1).to_string(), "e1 - 2*e2");
}

TEST(PairDocument, SchemaErrorsCarryTheirPath) {
  EXPECT_EQ(schema_path(fixture("bad-bracket-key.json")), "A.brackets.2,1");
  EXPECT_EQ(schema_path(R"({"base_dim": 0, "rank": 1, "A": {}})"), "Astar");
  EXPECT_EQ(schema_path(R"({"base_dim": 0, "rank": 1, "A": {}, "Astar": {}, "extra": 1})"), "extra");
  EXPECT_EQ(schema_path(R"({"base_dim": 0, "rank": 2, "A": {"brackets": {"1,3": ["1", "0"]}},
                            "Astar": {}})"),
            "A.brackets.1,3");
  EXPECT_EQ(schema_path(R"({"base_dim": 1, "rank": 1, "A": {"anchor": [["1", "0"]]}, "Astar": {}})"),
            "A.anchor[0]");
  EXPECT_EQ(schema_path(R"({"base_dim": 0, "rank": 1, "A": {}, "Astar": {},
                            "frame": {"s_density": "0"}})"),
            "frame.s_density");
  EXPECT_EQ(schema_path(R"({"base_dim": 1, "rank": 1, "A": {}, "Astar": {}, "frame": {"s_density": "x1"}})"),
            "frame.s_density");
  EXPECT_EQ(schema_path(R"({"base_dim": 1, "coordinates": ["x", "x"], "rank": 1, "A": {}, "Astar": {}})"),
            "coordinates");
}

TEST(PairDocument, UndeclaredCoordinateIsAParseError) {
  try {
    parse_pair_spec(fixture("bad-polynomial.json"));
    FAIL() << "accepted an undeclared coordinate";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("A.anchor[0][0]"), std::string::npos) << e.what();
  }
}

TEST(PairDocument, MalformedJsonIsAParseError) {
  EXPECT_THROW(parse_pair_spec("{\"rank\": "), ParseError);
}

TEST(PairDocument, JacobiFailureRefusesToBuild) {
  const PairSpec s = parse_pair_spec(fixture("jacobi-broken.json"));
  try {
    build_pair(s);
    FAIL() << "built a pair whose dual violates Jacobi";
  } catch (const StructureError& e) {
    EXPECT_TRUE(e.a_report().ok());
    EXPECT_FALSE(e.astar_report().jacobi_ok);
    ASSERT_FALSE(e.astar_report().witnesses.empty());
  }
}

TEST(PairDocument, OptionalDual) {
  const PairSpec s = parse_pair_spec(fixture("heisenberg-A.json"), false);
  EXPECT_FALSE(s.astar.has_value());
  EXPECT_EQ(s.a, heisenberg());
  EXPECT_THROW(build_pair(s), SchemaError);
}

TEST(Bivectors, ParseAndRejectLowerKeys) {
  const Coordinates c = Coordinates::standard(1);
  const Multivector l = parse_bivector(R"({"1,3": "x1", "2,3": 2})", 3, c);
  EXPECT_EQ(l.to_string(), "x1*e1^e3 + 2*e2^e3");
  EXPECT_THROW(parse_bivector(R"({"3,1": "1"})", 3, c), SchemaError);
  EXPECT_THROW(parse_bivector(R"({"1,4": "1"})", 3, c), SchemaError);
}

TEST(Matrices, ParseShapeChecked) {
  const Coordinates c = Coordinates::standard(1);
  const Matrix m = parse_matrix(R"([["x1", "0"], ["1", "2"]])", 2, c);
  EXPECT_EQ(m[0][0].to_string(), "x1");
  EXPECT_EQ(m[1][1].to_string(), "2");
  EXPECT_THROW(parse_matrix(R"([["1", "0"]])", 2, c), SchemaError);
  EXPECT_THROW(parse_matrix(R"([["1"], ["0"]])", 2, c), SchemaError);
}

TEST(Reports, IdentityReportIsDeterministicJson) {
  const Pair p = a_plus_b(1, 2, 3, 4);
  const std::string r1 = report_json(theorem_c_suite(p));
  const std::string r2 = report_json(theorem_c_suite(p));
  EXPECT_EQ(r1, r2);
  EXPECT_NE(r1.find("\"thm-c/a\""), std::string::npos);
  EXPECT_NE(r1.find("\"thm-c/l\""), std::string::npos);
}
