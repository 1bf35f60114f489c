#include <gtest/gtest.h>

#include <random>
#include <set>

#include "polyrank/closure.hpp"
#include "test_support.hpp"

using namespace polyrank;
using test::rat;

namespace {

Polyhedron pts(std::size_t n, std::vector<RatVector> v) { return Polyhedron::from_points(n, v); }

Polyhedron q_t(long t) { return pts(2, {{rat(0), rat(0)}, {rat(0), rat(1)}, {rat(t), rat(1, 2)}}); }

Polyhedron segment01() { return pts(2, {{rat(0), rat(0)}, {rat(0), rat(1)}}); }

Polyhedron random_polygon(std::mt19937& rng) {
  std::vector<RatVector> v;
  const int count = 3 + static_cast<int>(test::uniform(rng, 0, 2));
  for (int i = 0; i < count; ++i) v.push_back({test::random_rational(rng, -3, 3, 4), test::random_rational(rng, -3, 3, 4)});
  return pts(2, v);
}

}  // namespace

TEST(Closure, IntegralPolytopeIsFixed) {
  Polyhedron t = pts(2, {{rat(0), rat(0)}, {rat(2), rat(0)}, {rat(0), rat(2)}});
  EXPECT_EQ(elementary_closure(t), t);
  EXPECT_EQ(elementary_closure(segment01()), segment01());
}

TEST(Closure, FractionalIntervalVanishes) {
  Polyhedron q = pts(1, {{rat(1, 3)}, {rat(2, 3)}});
  EXPECT_TRUE(elementary_closure(q).is_empty());
  EXPECT_TRUE(closure_oracle(q, 1).is_empty());
}

TEST(Closure, Q2) {
  // Cuts x - 3y <= 0 and x + 3y <= 3 meet at the new apex.
  Polyhedron expect = pts(2, {{rat(0), rat(0)}, {rat(0), rat(1)}, {rat(3, 2), rat(1, 2)}});
  EXPECT_EQ(elementary_closure(q_t(2)), expect);
  EXPECT_EQ(closure_oracle(q_t(2), 15), expect);
}

TEST(Closure, UnboundedRejected) {
  Polyhedron quadrant = Polyhedron::from_constraints(2, {{{-1, 0}, 0}, {{0, -1}, 0}});
  EXPECT_THROW(elementary_closure(quadrant), Error);
  EXPECT_THROW(closure_oracle(quadrant, 2), Error);
}

TEST(Closure, CutsHaveNonzeroNormalsAndNoDuplicates) {
  CutSet cs = closure_cuts(q_t(3));
  std::set<IntVector> seen;
  for (const auto& c : cs.cuts) {
    EXPECT_FALSE(is_zero(c.normal));
    EXPECT_TRUE(seen.insert(c.normal).second);
    EXPECT_EQ(c.rhs, floor_of(max_over_vertices(q_t(3), c.normal)));
    EXPECT_FALSE(c.provenance.empty());
  }
}

TEST(Closure, LowerDimensionalInput) {
  // Segment from (0,1/2) to (3,1/2): no integer points, closure empties it.
  Polyhedron q = pts(2, {{rat(0), rat(1, 2)}, {rat(3), rat(1, 2)}});
  EXPECT_TRUE(elementary_closure(q).is_empty());
  // Segment on the line x2 = x1 / 2 from (0,0) to (3,3/2).
  Polyhedron r = pts(2, {{rat(0), rat(0)}, {rat(3), rat(3, 2)}});
  EXPECT_EQ(elementary_closure(r), pts(2, {{rat(0), rat(0)}, {rat(2), rat(1)}}));
}

TEST(Closure, PropertiesOnRandomPolygons) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    Polyhedron q = random_polygon(rng);
    Polyhedron c = elementary_closure(q);
    EXPECT_TRUE(q.contains(c));
    EXPECT_EQ(integer_points(c).points, integer_points(q).points);
    EXPECT_TRUE(closure_oracle(q, 3).contains(c));
  }
}

TEST(Closure, IdempotentOnIntegerHull) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Polyhedron h = integer_hull(random_polygon(rng));
    if (h.is_empty()) continue;
    EXPECT_EQ(elementary_closure(h), h);
  }
}

TEST(IntegerHull, Examples) {
  for (long t = 1; t <= 4; ++t) EXPECT_EQ(integer_hull(q_t(t)), segment01());
  EXPECT_TRUE(integer_hull(pts(1, {{rat(1, 3)}, {rat(2, 3)}})).is_empty());
  Polyhedron tri = pts(2, {{rat(0), rat(0)}, {rat(2), rat(0)}, {rat(0), rat(2)}});
  EXPECT_EQ(integer_hull(tri), tri);
}

TEST(IntegerHull, UnboundedWithIntegralRays) {
  // {x2 >= 1/2, x2 <= 3/2, x1 >= 0}: hull is {x1 >= 0, x2 = 1}.
  Polyhedron q = Polyhedron::from_constraints(2, {{{0, -2}, -1}, {{0, 2}, 3}, {{-1, 0}, 0}});
  Polyhedron expect = Polyhedron::from_constraints(2, {{{-1, 0}, 0}}, {{{0, 1}, 1}});
  EXPECT_EQ(integer_hull(q), expect);
}

TEST(Rank, Examples) {
  Polyhedron tri = pts(2, {{rat(0), rat(0)}, {rat(2), rat(0)}, {rat(0), rat(2)}});
  EXPECT_EQ(cg_rank(tri), 0u);
  EXPECT_EQ(cg_rank(pts(1, {{rat(1, 3)}, {rat(2, 3)}})), 1u);
  // Q_1' still contains (1/2, 1/2); the second closure reaches the segment.
  EXPECT_EQ(cg_rank(q_t(1)), 2u);
  EXPECT_EQ(elementary_closure(q_t(1)), pts(2, {{rat(0), rat(0)}, {rat(0), rat(1)}, {rat(1, 2), rat(1, 2)}}));
}

TEST(Rank, CapReportsLastClosure) {
  try {
    cg_rank(q_t(3), 1);
    FAIL();
  } catch (const RankCapExceeded& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
    EXPECT_EQ(e.last_closure(), elementary_closure(q_t(3)));
  }
}

TEST(Rank, IteratedClosuresContainShiftedApex) {
  for (long t = 1; t <= 4; ++t) {
    RankResult r = cg_rank_sequence(q_t(t));
    for (long j = 0; j < t && j < static_cast<long>(r.closures.size()); ++j)
      EXPECT_TRUE(r.closures[j].contains_point({rat(t - j), rat(1, 2)})) << "t=" << t << " j=" << j;
    EXPECT_GE(r.rank, static_cast<std::size_t>(t));
  }
}

TEST(LowerBound, QtApex) {
  for (long t = 1; t <= 6; ++t) EXPECT_EQ(cch_lower_bound(q_t(t), {rat(t), rat(1, 2)}, {1, 0}), t);
}

TEST(LowerBound, PointInHullGivesZero) {
  EXPECT_EQ(cch_lower_bound(q_t(3), {rat(0), rat(1, 2)}, {1, 0}), 0);
}

TEST(LowerBound, Errors) {
  try {
    cch_lower_bound(q_t(2), {rat(5), rat(0)}, {1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointNotInQ);
  }
  try {
    cch_lower_bound(q_t(2), {rat(2), rat(1, 2)}, {-1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RayMissesHull);
  }
}
