// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polyrank/polyrank.hpp"
#include "test_support.hpp"

using namespace polyrank;
using test::rat;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) notes << what;
      else notes << "; " << what;
      ok = false;
    }
  }
};

Polyhedron pts(std::size_t n, std::vector<RatVector> v) { return Polyhedron::from_points(n, v); }

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (int step = 0; step < 5; ++step) {
    const std::size_t i = test::uniform(rng, 0, static_cast<long>(n) - 1);
    const std::size_t j = test::uniform(rng, 0, static_cast<long>(n) - 1);
    if (i == j) {
      for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
      continue;
    }
    const long f = test::uniform(rng, 0, 1) == 0 ? -1 : 1;
    for (std::size_t c = 0; c < n; ++c) u(i, c) += f * u(j, c);
  }
  return u;
}

// 1. CG rank of Q_t grows with t.
void rank_growth(Check& c) {
  std::size_t previous = 0;
  for (long t = 1; t <= 6; ++t) {
    const Polyhedron q = gen_qt(t);
    const std::size_t r = cg_rank(q);
    c.expect(r >= static_cast<std::size_t>(t), "rank(Q_" + std::to_string(t) + ")=" + std::to_string(r) + " < t");
    c.expect(r >= previous, "rank decreases at t=" + std::to_string(t));
    previous = r;
    const Integer bound = cch_lower_bound(q, {rat(t), rat(1, 2)}, {1, 0});
    c.expect(bound == t, "cch bound at t=" + std::to_string(t) + " is " + bound.get_str());
  }
}

// 2. Reverse-rank verdicts with independently re-verified certificates.
void verdict_suite(Check& c) {
  struct Case {
    std::string name;
    Polyhedron p;
    Outcome expect;
  };
  const std::vector<Case> cases{
      {"segment", gen_01_segment(2), Outcome::Infinite},
      {"square", pts(2, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(1)}}), Outcome::Infinite},
      {"simplex", gen_unit_simplex(2), Outcome::Infinite},
      {"triangle22", pts(2, {{rat(0), rat(0)}, {rat(2), rat(0)}, {rat(0), rat(2)}}), Outcome::Finite},
      {"point", pts(2, {{rat(1), rat(2)}}), Outcome::Finite},
      {"interval", pts(1, {{rat(0)}, {rat(1)}}), Outcome::Finite},
  };
  for (const auto& k : cases) {
    const RcgrVerdict v = decide_rcgr(k.p);
    c.expect(v.outcome == k.expect, k.name + " gave " + to_string(v.outcome));
    const std::string problem = verify_verdict(k.p, v);
    c.expect(problem.empty(), k.name + " certificate: " + problem);
  }
  c.expect(decide_rcgr(gen_01_segment(2)).witness == IntVector{1, 0}, "segment witness is not (1,0)");
  c.expect(fin_check(pts(1, {{rat(0)}, {rat(1)}}), 1).covered, "[0,1] not covered at k=1");
}

// 3. The family P_k / Q_k.
void pk_family(Check& c) {
  for (long k = 2; k <= 6; ++k) {
    const PkQk f = gen_pk_qk(k);
    const std::size_t inside = relint_integer_points(f.p).points.size();
    c.expect(inside == static_cast<std::size_t>(k - 1), "P_" + std::to_string(k) + " has " + std::to_string(inside) + " interior points");
    const Integer bound = cch_lower_bound(f.q, {rat(1, 2), rat(-k, 2)}, {0, -1});
    c.expect(bound == (k + 1) / 2, "cch bound for Q_" + std::to_string(k) + " is " + bound.get_str());
  }
}

Polyhedron tetrahedron() {
  return pts(3, {{rat(0), rat(0), rat(0)}, {rat(3), rat(1), rat(0)}, {rat(2), rat(3), rat(0)}, {rat(3), rat(2), rat(2)}});
}

// 4. The tetrahedron whose cylinder along e_1 is not lattice-free although no
// integer point of P enters its interior.
void tetrahedron_core(Check& c) {
  const Polyhedron p = tetrahedron();
  const IntVector v{1, 0, 0};
  c.expect(!line_free(p, v), "line_free should be false");
  const auto z = line_interior_point(p, v);
  c.expect(z.has_value() && *z == IntVector{3, 2, 1}, "interior point is not (3,2,1)");
  const Polyhedron cyl = add_line(p, v);
  c.expect(cyl.relint_contains({rat(3), rat(2), rat(1)}), "(3,2,1) not interior to P+<v>");
  for (const auto& x : integer_points(p).points)
    c.expect(!cyl.relint_contains(to_rational(x)), "integer point " + to_string(x) + " of P is interior to P+<v>");
}

// Full decision on the tetrahedron. FIN first covers at k = 21, past the
// default cap, so the caps are raised.
void tetrahedron_stretch(Check& c) {
  const Polyhedron p = tetrahedron();
  RcgrCaps caps;
  caps.max_norm = 40;
  caps.max_k = 40;
  const RcgrVerdict v = decide_rcgr(p, caps);
  c.expect(v.outcome == Outcome::Finite, std::string("verdict is ") + to_string(v.outcome));
  const std::string err = verify_verdict(p, v);
  c.expect(err.empty(), "verdict rejected: " + err);
  c.notes << (c.ok ? "" : "; ") << "covering level " << v.covering_level;
}

// Per-instance oracle bound B: the least B at which the brute-force closure
// matched the TDI closure, found by increasing B from 1 and then frozen.
const long kOracleBound[25] = {3, 15, 1, 5, 7, 1, 4, 9, 4, 7, 7, 7, 5, 1, 8, 3, 13, 3, 2, 1, 4, 5, 1, 4, 7};

// 5. Elementary closure against the brute-force oracle.
void closure_correctness(Check& c) {
  std::mt19937 rng(20240607);
  for (int i = 0; i < 25; ++i) {
    std::vector<RatVector> v;
    const int count = 3 + static_cast<int>(test::uniform(rng, 0, 2));
    for (int j = 0; j < count; ++j) v.push_back({test::random_rational(rng, -3, 3, 4), test::random_rational(rng, -3, 3, 4)});
    const Polyhedron q = pts(2, v);
    const Polyhedron closure = elementary_closure(q);
    const std::string tag = "instance " + std::to_string(i);
    c.expect(closure == closure_oracle(q, kOracleBound[i]), tag + ": differs from oracle");
    c.expect(q.contains(closure), tag + ": Q' not inside Q");
    c.expect(integer_points(closure).points == integer_points(q).points, tag + ": integer points changed");
    const Polyhedron hull = integer_hull(q);
    if (!hull.is_empty()) c.expect(elementary_closure(hull) == hull, tag + ": closure moves the integer hull");
  }
}

// 6. Rank and closure commute with unimodular maps.
void unimodular_invariance(Check& c) {
  std::mt19937 rng(606);
  for (long t : {2L, 3L}) {
    const Polyhedron q = gen_qt(t);
    const std::size_t rank = cg_rank(q);
    const Polyhedron closure = elementary_closure(q);
    for (int i = 0; i < 10; ++i) {
      const IntMatrix u = random_unimodular(rng, 2);
      const IntVector shift{test::uniform(rng, -5, 5), test::uniform(rng, -5, 5)};
      const Polyhedron image = apply_unimodular(q, u, shift);
      const std::string tag = "Q_" + std::to_string(t) + " map " + std::to_string(i);
      c.expect(cg_rank(image) == rank, tag + ": rank changed");
      c.expect(elementary_closure(image) == apply_unimodular(closure, u, shift), tag + ": closure does not commute");
    }
  }
}

std::vector<IntVector> box_scan(const Polyhedron& p, bool relint) {
  const std::size_t n = p.ambient_dim();
  IntVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational a = p.vertices()[0][j], b = a;
    for (const auto& v : p.vertices()) {
      a = std::min(a, v[j]);
      b = std::max(b, v[j]);
    }
    lo[j] = ceil_of(a);
    hi[j] = floor_of(b);
  }
  std::vector<IntVector> out;
  IntVector z(n);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      const RatVector x = to_rational(z);
      if (relint ? p.relint_contains(x) : p.contains_point(x)) out.push_back(z);
      return;
    }
    for (Integer x = lo[j]; x <= hi[j]; ++x) {
      z[j] = x;
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

// 7. Lattice point enumeration against a bounding-box scan.
void lattice_oracle(Check& c) {
  std::mt19937 rng(7007);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + test::uniform(rng, 0, 1);
    std::vector<RatVector> v;
    const int count = static_cast<int>(n) + 1 + static_cast<int>(test::uniform(rng, 0, 2));
    for (int j = 0; j < count; ++j) {
      RatVector x(n);
      for (auto& e : x) e = test::random_rational(rng, -3, 3, 3);
      v.push_back(x);
    }
    const Polyhedron p = pts(n, v);
    const std::string tag = "instance " + std::to_string(i);
    c.expect(integer_points(p).points == box_scan(p, false), tag + ": integer points differ");
    c.expect(relint_integer_points(p).points == box_scan(p, true), tag + ": relative-interior points differ");
  }
}

RatVector random_point_of(std::mt19937& rng, const Polyhedron& f) {
  const auto& verts = f.vertices();
  std::vector<Rational> w;
  Rational total = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    w.push_back(rat(test::uniform(rng, 0, 60), test::uniform(rng, 1, 7)));
    total += w.back();
  }
  if (total == 0) return verts.front();
  RatVector x(f.ambient_dim());
  for (std::size_t i = 0; i < verts.size(); ++i) x = x + scaled(verts[i], w[i] / total);
  return x;
}

Polyhedron random_polytope(std::mt19937& rng, std::size_t n, long lo, long hi, int count) {
  std::vector<RatVector> v;
  for (int j = 0; j < count; ++j) {
    RatVector x(n);
    for (auto& e : x) e = test::random_rational(rng, lo, hi, 2);
    v.push_back(x);
  }
  return pts(n, v);
}

// 8. Coverage decisions against random sampling.
void coverage(Check& c) {
  std::mt19937 rng(8080);
  int covered = 0, uncovered = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
    const Polyhedron f = random_polytope(rng, n, 0, 3, static_cast<int>(n) + 2);
    std::vector<Polyhedron> regions;
    if (i % 2 == 0) {
      // Split F by a random hyperplane and add both halves, so some instances are covered.
      IntVector a(n);
      for (auto& e : a) e = test::uniform(rng, -2, 2);
      if (is_zero(a)) a[0] = 1;
      const Integer beta = floor_of(dot(a, f.relative_interior_point()));
      regions.push_back(intersect(f, {{a, beta}}));
      regions.push_back(intersect(f, {{negated(a), Integer(-beta)}}));
      if (i % 4 == 0) regions.pop_back();
    }
    const int extra = 1 + static_cast<int>(test::uniform(rng, 0, 3));
    for (int j = 0; j < extra; ++j) regions.push_back(random_polytope(rng, n, -1, 4, static_cast<int>(n) + 2));

    const CoverResult r = covers(f, regions);
    const std::string tag = "instance " + std::to_string(i);
    if (r.covered) {
      ++covered;
      for (int s = 0; s < 1000; ++s) {
        const RatVector x = random_point_of(rng, f);
        if (!detail::in_any(regions, x)) {
          c.expect(false, tag + ": sample " + to_string(x) + " uncovered");
          break;
        }
      }
    } else {
      ++uncovered;
      c.expect(f.contains_point(r.witness), tag + ": witness outside F");
      c.expect(!detail::in_any(regions, r.witness), tag + ": witness inside a region");
    }
  }
  c.expect(covered > 0 && uncovered > 0, "instances did not exercise both answers");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    void (*run)(Check&);
    double budget_s;
    bool stretch = false;
  };
  const std::vector<Criterion> criteria{
      {1, "rank growth of Q_t", rank_growth, 10},
      {2, "reverse-rank verdict suite", verdict_suite, 30},
      {3, "P_k / Q_k family", pk_family, 5},
      {4, "tetrahedron cylinder (core checks)", tetrahedron_core, 5},
      {4, "decide_rcgr terminates Finite on the tetrahedron", tetrahedron_stretch, 600, true},
      {5, "closure vs brute-force oracle", closure_correctness, 60},
      {6, "unimodular invariance", unimodular_invariance, 30},
      {7, "lattice enumeration vs box scan", lattice_oracle, 30},
      {8, "coverage vs sampling", coverage, 30},
  };
  bool all = true;
  for (const auto& k : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      k.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(secs <= k.budget_s, "took longer than " + std::to_string(k.budget_s) + " s");
    all = all && c.ok;
    const std::string notes = c.notes.str();
    std::printf("%s %d %s: %s (%.2f s)%s%s\n", k.stretch ? "stretch" : "criterion", k.id, k.name,
                c.ok ? "PASS" : "FAIL", secs, notes.empty() ? "" : " -- ", notes.c_str());
  }
  return all ? 0 : 1;
}
