#include <gtest/gtest.h>

#include <random>

#include "polyrank/families.hpp"
#include "polyrank/io.hpp"
#include "test_support.hpp"

using namespace polyrank;
using io::Json;
using test::rat;

namespace {

Polyhedron pts(std::size_t n, std::vector<RatVector> v) { return Polyhedron::from_points(n, v); }

ErrorKind kind_of(const std::string& text) {
  try {
    io::parse_polyhedron_text(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvariantViolation;
}

}  // namespace

TEST(Parse, VertexDocument) {
  auto d = io::parse_polyhedron_text(R"({"vrep":{"vertices":[["0","0"],["0","1"],["2","1/2"]]}})");
  EXPECT_EQ(d.polyhedron, gen_qt(2));
}

TEST(Parse, ConstraintDocument) {
  auto d = io::parse_polyhedron_text(R"({"name":"tri","hrep":{"A":[[-1,0],[0,-1],[1,1]],"b":[0,0,2]}})");
  EXPECT_EQ(d.name, "tri");
  EXPECT_EQ(d.polyhedron, pts(2, {{rat(0), rat(0)}, {rat(2), rat(0)}, {rat(0), rat(2)}}));
}

TEST(Parse, Errors) {
  EXPECT_EQ(kind_of(R"({"vrep":{"vertices":[["1/0","0"]]}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"vrep":{"vertices":[[0.5,0]]}})"), ErrorKind::IrrationalData);
  EXPECT_EQ(kind_of(R"({"hrep":{"A":[[1.0]],"b":[1]}})"), ErrorKind::IrrationalData);
  EXPECT_EQ(kind_of(R"({"name":"x"})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"hrep":{"A":[[1,0],[1]],"b":[1,1]}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"hrep":{"A":[[1]],"b":[1,2]}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"vrep":{"vertices":[["a"]]}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"vrep": )"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"vrep":{"vertices":[["0"]]},"hrep":{"A":[[1]],"b":[5]}})"), ErrorKind::ParseError);
}

TEST(Parse, FieldIsNamedInDiagnostics) {
  try {
    io::parse_polyhedron_text(R"({"vrep":{"vertices":[["0","0"],["1","2/0"]]}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("vrep.vertices[1][1]"), std::string::npos);
  }
}

TEST(Parse, EmptyAndUnbounded) {
  auto e = io::parse_polyhedron_text(R"({"ambient_dim":2,"hrep":{"A":[[1,0],[-1,0]],"b":[0,-1]}})");
  EXPECT_TRUE(e.polyhedron.is_empty());
  auto h = io::parse_polyhedron_text(R"({"vrep":{"vertices":[["0","0"]],"rays":[[1,0]],"lines":[[0,1]]}})");
  EXPECT_EQ(h.polyhedron, Polyhedron::from_constraints(2, {{{-1, 0}, 0}}));
}

TEST(RoundTrip, RandomPolyhedra) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + test::uniform(rng, 0, 2);
    VRep rep;
    for (int i = 0; i < 3; ++i) {
      RatVector v(n);
      for (auto& x : v) x = test::random_rational(rng, -3, 3, 5);
      rep.vertices.push_back(v);
    }
    if (test::uniform(rng, 0, 1)) {
      IntVector r(n);
      for (auto& x : r) x = test::uniform(rng, -2, 2);
      if (!is_zero(r)) rep.rays.push_back(r);
    }
    Polyhedron p = Polyhedron::from_vrep(n, rep);
    Json doc = io::emit_polyhedron(p, "p", {{"trial", trial}});
    auto back = io::parse_polyhedron_text(doc.dump());
    EXPECT_EQ(back.polyhedron, p);
    EXPECT_EQ(back.metadata["trial"], trial);
    // Each half of the document alone describes the same set.
    Json only_h = doc, only_v = doc;
    only_h.erase("vrep");
    only_v.erase("hrep");
    EXPECT_EQ(io::parse_polyhedron(only_h).polyhedron, p);
    EXPECT_EQ(io::parse_polyhedron(only_v).polyhedron, p);
  }
}

TEST(RoundTrip, LargeIntegersAsStrings) {
  Integer big("123456789012345678901234567890");
  Polyhedron p = Polyhedron::from_constraints(1, {{{1}, big}, {{-1}, 0}});
  Json doc = io::emit_polyhedron(p);
  EXPECT_TRUE(doc["hrep"]["b"][1].is_string() || doc["hrep"]["b"][0].is_string());
  EXPECT_EQ(io::parse_polyhedron(doc).polyhedron, p);
}

TEST(Verdict, RoundTrip) {
  Polyhedron strip = Polyhedron::from_constraints(2, {{{0, -1}, 0}, {{0, 1}, 1}});
  for (const auto& p : {strip, gen_01_segment(2), gen_unit_simplex(2)}) {
    RcgrVerdict v = decide_rcgr(p);
    RcgrVerdict back = io::parse_verdict(Json::parse(io::emit_verdict(v).dump()));
    EXPECT_EQ(back.outcome, v.outcome);
    EXPECT_EQ(back.reason, v.reason);
    EXPECT_EQ(back.witness, v.witness);
    EXPECT_EQ(back.covering_level, v.covering_level);
    ASSERT_EQ(back.trace.size(), v.trace.size());
    for (std::size_t i = 0; i < v.trace.size(); ++i) EXPECT_EQ(back.trace[i].U, v.trace[i].U);
    EXPECT_EQ(verify_verdict(p, back), "");
  }
}

TEST(Cuts, Serialized) {
  Json j = io::emit_cuts(closure_cuts(gen_qt(2)));
  EXPECT_EQ(j["ambient_dim"], 2);
  ASSERT_FALSE(j["cuts"].empty());
  for (const auto& c : j["cuts"]) {
    EXPECT_TRUE(c.contains("c"));
    EXPECT_TRUE(c.contains("rhs"));
    EXPECT_TRUE(c["provenance"].is_string());
  }
}
