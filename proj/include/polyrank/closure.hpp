#pragma once

// Chvátal–Gomory cuts, elementary closures, ranks and integer hulls.
//
// The elementary closure of a polytope is computed from a totally dual
// integral system: at every vertex the integral generating set of the normal
// cone gives the cut normals, and rounding their right-hand sides yields Q'.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyrank/arith.hpp"
#include "polyrank/lattice.hpp"
#include "polyrank/polyhedron.hpp"

namespace polyrank {

struct CgCut {
  IntVector normal;
  Integer rhs;
  std::string provenance;
};

struct CutSet {
  std::vector<CgCut> cuts;
  std::size_t ambient_dim = 0;
};

inline Rational max_over_vertices(const Polyhedron& q, const IntVector& c) {
  const auto& verts = q.vertices();
  Rational best = dot(c, verts.front());
  for (const auto& v : verts) best = std::max(best, dot(c, v));
  return best;
}

namespace detail {

inline void add_cut(std::map<IntVector, CgCut>& cuts, const IntVector& c, const Integer& rhs,
                    const std::string& provenance) {
  auto it = cuts.find(c);
  if (it == cuts.end()) cuts.emplace(c, CgCut{c, rhs, provenance});
  else if (rhs < it->second.rhs) it->second = CgCut{c, rhs, provenance};
}

inline CutSet finish(std::map<IntVector, CgCut> cuts, std::size_t n) {
  CutSet out;
  out.ambient_dim = n;
  for (auto& [c, cut] : cuts) out.cuts.push_back(std::move(cut));
  return out;
}

}  // namespace detail

/// CG cuts generating Q' for a polytope Q.
inline CutSet closure_cuts(const Polyhedron& q) {
  if (!q.is_bounded()) fail(ErrorKind::Unbounded, "elementary closure of an unbounded polyhedron");
  std::map<IntVector, CgCut> cuts;
  if (q.is_empty()) return detail::finish(std::move(cuts), q.ambient_dim());
  for (const auto& w : q.vertices()) {
    std::vector<IntVector> cone;
    for (const auto& e : q.equalities()) {
      cone.push_back(e.normal);
      cone.push_back(negated(e.normal));
    }
    for (const auto& f : q.facets())
      if (dot(f.normal, w) == f.rhs) cone.push_back(f.normal);
    if (cone.empty()) continue;  // a single point in R^0
    const std::string tag = "vertex " + to_string(w);
    for (const auto& c : hilbert_generating_set(cone)) detail::add_cut(cuts, c, floor_of(dot(c, w)), tag);
  }
  return detail::finish(std::move(cuts), q.ambient_dim());
}

inline Polyhedron apply_cuts(const Polyhedron& q, const CutSet& cuts) {
  if (q.is_empty()) return q;
  std::vector<Constraint> rows;
  for (const auto& cut : cuts.cuts) {
    // Cuts already implied by a stored facet add nothing.
    bool known = false;
    for (const auto& f : q.facets())
      if (f.normal == cut.normal && f.rhs <= cut.rhs) known = true;
    if (!known) rows.push_back({cut.normal, cut.rhs});
  }
  return intersect(q, rows);
}

/// The elementary CG closure Q' of a polytope.
inline Polyhedron elementary_closure(const Polyhedron& q) {
  if (!q.is_bounded()) fail(ErrorKind::Unbounded, "elementary closure of an unbounded polyhedron");
  if (q.is_empty()) return q;
  return apply_cuts(q, closure_cuts(q));
}

/// Q intersected with every CG cut whose normal has infinity norm at most B.
inline Polyhedron closure_oracle(const Polyhedron& q, long bound) {
  if (!q.is_bounded()) fail(ErrorKind::Unbounded, "closure oracle on an unbounded polyhedron");
  if (bound < 1) fail(ErrorKind::DimensionMismatch, "oracle bound must be positive");
  if (q.is_empty()) return q;
  const std::size_t n = q.ambient_dim();
  std::map<IntVector, CgCut> cuts;
  IntVector c(n);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      if (is_zero(c) || content(c) != 1) return;
      detail::add_cut(cuts, c, floor_of(max_over_vertices(q, c)), "oracle B=" + std::to_string(bound));
      return;
    }
    for (long x = -bound; x <= bound; ++x) {
      c[j] = x;
      rec(j + 1);
    }
  };
  rec(0);
  return apply_cuts(q, detail::finish(std::move(cuts), n));
}

/// conv(Q ∩ Z^n). Unbounded inputs are handled through the bounded core of Q
/// plus its (integral) recession generators.
inline Polyhedron integer_hull(const Polyhedron& q, const EnumerationLimits& limits = {}) {
  if (q.is_empty()) return q;
  const std::size_t n = q.ambient_dim();
  LatticePointReport pts = integer_points(bounded_core(q, limits), limits);
  if (pts.points.empty()) return Polyhedron::empty(n);
  VRep rep;
  for (const auto& z : pts.points) rep.vertices.push_back(to_rational(z));
  rep.rays = q.rays();
  rep.lines = q.lines();
  return Polyhedron::from_vrep(n, rep);
}

inline bool is_integral_polyhedron(const Polyhedron& p, const EnumerationLimits& limits = {}) {
  if (p.is_empty()) return true;
  for (const auto& v : p.vertices())
    if (!is_integral(v)) return p == integer_hull(p, limits);
  return true;
}

/// Raised when the closure iteration does not reach the integer hull within
/// the cap; carries the last closure computed.
class RankCapExceeded : public Error {
 public:
  RankCapExceeded(std::size_t cap, Polyhedron last)
      : Error(ErrorKind::CapExceeded, "CG rank exceeds cap " + std::to_string(cap)), last_(std::move(last)) {}
  const Polyhedron& last_closure() const { return last_; }

 private:
  Polyhedron last_;
};

struct RankResult {
  std::size_t rank = 0;
  std::vector<Polyhedron> closures;  // Q, Q', Q'', ... up to the integer hull
};

inline RankResult cg_rank_sequence(const Polyhedron& q, std::size_t cap = 1000) {
  if (!q.is_bounded()) fail(ErrorKind::Unbounded, "CG rank of an unbounded polyhedron");
  const Polyhedron hull = integer_hull(q);
  RankResult out;
  out.closures.push_back(q);
  while (!(out.closures.back() == hull)) {
    if (out.rank == cap) throw RankCapExceeded(cap, out.closures.back());
    out.closures.push_back(elementary_closure(out.closures.back()));
    ++out.rank;
  }
  return out;
}

inline std::size_t cg_rank(const Polyhedron& q, std::size_t cap = 1000) { return cg_rank_sequence(q, cap).rank; }

/// ceil(t) for the least t >= 0 with x - t v in the integer hull of Q.
inline Integer cch_lower_bound(const Polyhedron& q, const RatVector& x, const IntVector& v) {
  if (x.size() != q.ambient_dim() || v.size() != q.ambient_dim())
    fail(ErrorKind::DimensionMismatch, "point or direction length differs from ambient dimension");
  if (!q.contains_point(x)) fail(ErrorKind::PointNotInQ, "start point is not in Q");
  const Polyhedron hull = integer_hull(q);
  if (hull.is_empty()) fail(ErrorKind::RayMissesHull, "integer hull is empty");
  // Constraint a.(x - t v) <= b reads (-a.v) t <= b - a.x.
  Rational lo = 0;
  std::optional<Rational> hi;
  bool feasible = true;
  auto apply = [&](const Constraint& c, bool equality) {
    const Rational coef = -Rational(dot(c.normal, v));
    const Rational rest = Rational(c.rhs) - dot(c.normal, x);
    if (coef == 0) {
      if (equality ? rest != 0 : rest < 0) feasible = false;
      return;
    }
    const Rational bound = rest / coef;
    if (equality || coef > 0)
      if (!hi || bound < *hi) hi = bound;
    if (equality || coef < 0) lo = std::max(lo, bound);
  };
  for (const auto& e : hull.equalities()) apply(e, true);
  for (const auto& f : hull.facets()) apply(f, false);
  if (!feasible || (hi && *hi < lo)) fail(ErrorKind::RayMissesHull, "the ray from x along -v misses the integer hull");
  return ceil_of(lo);
}

}  // namespace polyrank
