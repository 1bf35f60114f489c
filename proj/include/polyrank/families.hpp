#pragma once

// Instance families: relaxations with growing CG rank and small integral
// polytopes used as reverse-rank test cases.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polyrank/arith.hpp"
#include "polyrank/closure.hpp"
#include "polyrank/lattice.hpp"
#include "polyrank/polyhedron.hpp"

namespace polyrank {

namespace detail {

inline void require_positive(long x, const char* what) {
  if (x < 1) fail(ErrorKind::InvalidArgument, std::string(what) + " must be a positive integer");
}

}  // namespace detail

/// conv{(0,0), (0,1), (t, 1/2)}.
inline Polyhedron gen_qt(long t) {
  detail::require_positive(t, "t");
  return Polyhedron::from_points(2, {{Rational(0), Rational(0)}, {Rational(0), Rational(1)}, {Rational(t), Rational(1, 2)}});
}

struct PkQk {
  Polyhedron p;  // integral, k-1 interior integer points
  Polyhedron q;  // relaxation of p with rank at least k/2
};

inline PkQk gen_pk_qk(long k) {
  detail::require_positive(k, "k");
  Polyhedron p = Polyhedron::from_constraints(2, {{{-1, 0}, 0}, {{0, -1}, 0}, {{0, 1}, k}, {{k, -1}, k}});
  Polyhedron q = convex_hull_with_point(p, {Rational(1, 2), Rational(-k, 2)});
  return {std::move(p), std::move(q)};
}

struct QAlpha {
  Polyhedron q;
  RatVector centre;  // relative-interior point of P with centre + v outside P
  RatVector apex;    // centre + alpha v
};

/// conv(V, x + alpha v) + rec(P) for a relative-interior point x of P.
inline QAlpha gen_qalpha(const Polyhedron& p, const IntVector& v, long alpha, const EnumerationLimits& limits = {}) {
  detail::require_positive(alpha, "alpha");
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "relaxation family of the empty set");
  if (v.size() != p.ambient_dim()) fail(ErrorKind::DimensionMismatch, "direction length differs from ambient dimension");
  if (is_zero(v) || in_recession_cone(p, v)) fail(ErrorKind::InvalidWitness, "direction lies in the recession cone");
  if (!is_integral_polyhedron(p, limits)) fail(ErrorKind::NotIntegral, "relaxation family needs an integral polyhedron");
  if (!line_free(p, v, limits)) fail(ErrorKind::InvalidWitness, "P + <v> has an interior integer point");

  const RatVector dir = to_rational(v);
  RatVector x = p.relative_interior_point();
  if (p.contains_point(x + dir)) {
    // Slide x along v to half a step before the boundary.
    std::optional<Rational> reach;
    for (const auto& row : p.inequality_rows()) {
      const Integer slope = dot(row.normal, v);
      if (slope <= 0) continue;
      const Rational s = (Rational(row.rhs) - dot(row.normal, x)) / Rational(slope);
      if (!reach || s < *reach) reach = s;
    }
    x = x + scaled(dir, *reach - Rational(1, 2));
  }
  QAlpha out;
  out.centre = x;
  out.apex = x + scaled(dir, Rational(alpha));
  VRep rep = p.vrep();
  rep.vertices.push_back(out.apex);
  out.q = Polyhedron::from_vrep(p.ambient_dim(), rep);
  if (!(integer_hull(out.q, limits) == p))
    fail(ErrorKind::InvariantViolation, "constructed polyhedron is not a relaxation");
  return out;
}

inline Polyhedron gen_unit_simplex(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  std::vector<RatVector> pts{RatVector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    pts.push_back(e);
  }
  return Polyhedron::from_points(n, pts);
}

/// conv{0, e_n}.
inline Polyhedron gen_01_segment(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  RatVector e(n);
  e[n - 1] = 1;
  return Polyhedron::from_points(n, {RatVector(n), e});
}

}  // namespace polyrank
