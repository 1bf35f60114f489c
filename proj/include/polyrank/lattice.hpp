#pragma once

// Integer points of polyhedra: enumeration, feasibility, relative-interior
// points, lattice-freeness, cylinder tests and Hilbert generating sets.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "polyrank/arith.hpp"
#include "polyrank/polyhedron.hpp"

namespace polyrank {

struct LatticePointReport {
  std::vector<IntVector> points;
  bool exhausted = true;
};

struct EnumerationLimits {
  std::size_t max_nodes = 5'000'000;
  std::size_t max_generators = 16;  // rays + lineality basis for unbounded reductions
};

namespace detail {

// Interval of x_j over {x : (prefix, x_j) satisfies rows}.
struct Interval {
  bool empty = false;
  std::optional<Rational> lo, hi;
};

inline Interval slice(const Polyhedron& proj, const IntVector& prefix) {
  Interval out;
  const std::size_t j = prefix.size();
  auto apply = [&](const Constraint& c, bool equality) {
    Rational rest = Rational(c.rhs);
    for (std::size_t i = 0; i < j; ++i) rest -= Rational(c.normal[i] * prefix[i]);
    const Integer& a = c.normal[j];
    if (a == 0) {
      if (equality ? rest != 0 : rest < 0) out.empty = true;
      return;
    }
    Rational bound = rest / Rational(a);
    if (equality || a > 0)
      if (!out.hi || bound < *out.hi) out.hi = bound;
    if (equality || a < 0)
      if (!out.lo || bound > *out.lo) out.lo = bound;
  };
  for (const auto& e : proj.equalities()) apply(e, true);
  for (const auto& f : proj.facets()) apply(f, false);
  if (out.lo && out.hi && *out.lo > *out.hi) out.empty = true;
  return out;
}

// Visits integer points of a polytope in lexicographic order until the
// visitor returns false. Returns false when the visitor stopped early.
inline bool visit_integer_points(const Polyhedron& p, const std::function<bool(const IntVector&)>& visit,
                                 const EnumerationLimits& limits) {
  if (p.is_empty()) return true;
  if (!p.is_bounded()) fail(ErrorKind::Unbounded, "integer enumeration of an unbounded polyhedron");
  const std::size_t n = p.ambient_dim();
  std::vector<Polyhedron> proj;
  for (std::size_t j = 1; j <= n; ++j) proj.push_back(j == n ? p : project_prefix(p, j));
  std::size_t nodes = 0;
  IntVector prefix;
  std::function<bool()> rec = [&]() -> bool {
    const std::size_t j = prefix.size();
    if (j == n) return visit(prefix);
    Interval iv = slice(proj[j], prefix);
    if (iv.empty) return true;
    const Integer lo = ceil_of(*iv.lo);
    const Integer hi = floor_of(*iv.hi);
    for (Integer x = lo; x <= hi; ++x) {
      if (++nodes > limits.max_nodes) fail(ErrorKind::SearchCapExceeded, "integer enumeration node cap reached");
      prefix.push_back(x);
      bool go_on = rec();
      prefix.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return rec();
}

}  // namespace detail

/// P ∩ Z^n for a polytope, in lexicographic order.
inline LatticePointReport integer_points(const Polyhedron& p, const EnumerationLimits& limits = {}) {
  LatticePointReport report;
  detail::visit_integer_points(
      p,
      [&](const IntVector& z) {
        report.points.push_back(z);
        return true;
      },
      limits);
  return report;
}

/// The polyhedron {x : equalities, facet rows with rhs - 1}; its integer
/// points are exactly the integer points of relint(P).
inline Polyhedron shrunk_interior(const Polyhedron& p) {
  if (p.is_empty()) return p;
  std::vector<Constraint> rows = p.facets();
  for (auto& r : rows) r.rhs -= 1;
  return Polyhedron::from_constraints(p.ambient_dim(), rows, p.equalities());
}

inline bool strictly_inside(const Polyhedron& p, const IntVector& z) {
  for (const auto& e : p.equalities())
    if (dot(e.normal, z) != e.rhs) return false;
  for (const auto& f : p.facets())
    if (dot(f.normal, z) > f.rhs - 1) return false;
  return true;
}

inline LatticePointReport relint_integer_points(const Polyhedron& p, const EnumerationLimits& limits = {}) {
  if (!p.is_bounded()) fail(ErrorKind::Unbounded, "relative-interior enumeration of an unbounded polyhedron");
  LatticePointReport all = integer_points(p, limits);
  LatticePointReport out;
  for (auto& z : all.points)
    if (strictly_inside(p, z)) out.points.push_back(std::move(z));
  return out;
}

/// Bounded polytope B ⊆ P with B ∩ Z^n + (integer combinations of the
/// recession generators) = P ∩ Z^n: conv(V) plus the unit parallelepiped of
/// the rays and a lattice basis of the lineality space.
inline Polyhedron bounded_core(const Polyhedron& p, const EnumerationLimits& limits = {}) {
  if (p.is_empty() || p.is_bounded()) return p;
  const std::size_t n = p.ambient_dim();
  std::vector<IntVector> gens = p.rays();
  if (!p.lines().empty()) {
    std::vector<IntVector> perp = rational_kernel(to_rational(IntMatrix::from_rows(p.lines(), n)));
    IntMatrix perp_rows = perp.empty() ? IntMatrix(0, n) : IntMatrix::from_rows(perp, n);
    for (auto& b : integer_kernel(perp_rows)) gens.push_back(std::move(b));
  }
  if (gens.size() > limits.max_generators)
    fail(ErrorKind::SearchCapExceeded, "too many recession generators for the bounded reduction");
  std::vector<RatVector> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    RatVector shift(n);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (mask >> i & 1) shift = shift + to_rational(gens[i]);
    for (const auto& v : p.vertices()) pts.push_back(v + shift);
  }
  return Polyhedron::from_points(n, pts);
}

/// Some integer point of P, or nullopt when P ∩ Z^n = ∅.
inline std::optional<IntVector> integer_feasible(const Polyhedron& p, const EnumerationLimits& limits = {}) {
  if (p.is_empty()) return std::nullopt;
  std::optional<IntVector> found;
  detail::visit_integer_points(
      bounded_core(p, limits),
      [&](const IntVector& z) {
        found = z;
        return false;
      },
      limits);
  return found;
}

inline std::optional<IntVector> integer_feasible(const HRep& h, const EnumerationLimits& limits = {}) {
  return integer_feasible(Polyhedron::from_hrep(h), limits);
}

/// An integer point of relint(P), bounded or not.
inline std::optional<IntVector> relint_integer_point(const Polyhedron& p, const EnumerationLimits& limits = {}) {
  if (p.is_empty()) return std::nullopt;
  return integer_feasible(shrunk_interior(p), limits);
}

inline bool is_relatively_lattice_free(const Polyhedron& p, const EnumerationLimits& limits = {}) {
  return !relint_integer_point(p, limits).has_value();
}

/// No integer point in the interior; lower-dimensional sets have empty interior.
inline bool is_lattice_free(const Polyhedron& p, const EnumerationLimits& limits = {}) {
  if (!p.is_full_dimensional()) return true;
  return is_relatively_lattice_free(p, limits);
}

namespace detail {

// The cylinder P + <v> seen through U with U w = e_n: its cross-section is
// the projection of U P onto the first n-1 coordinates.
struct CylinderView {
  IntMatrix U;
  Polyhedron transformed;  // U P
  Polyhedron section;      // projection of U P onto the first n-1 coordinates
};

inline CylinderView cylinder_view(const Polyhedron& p, const IntVector& v) {
  if (is_zero(v)) fail(ErrorKind::ZeroVector, "line direction is zero");
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "cylinder over the empty set");
  if (v.size() != p.ambient_dim()) fail(ErrorKind::DimensionMismatch, "direction length differs from ambient dimension");
  const std::size_t n = p.ambient_dim();
  IntMatrix u = unimodular_complete(primitive(v));
  Polyhedron up = apply_unimodular(p, u, IntVector(n));
  Polyhedron section = n == 1 ? Polyhedron() : project_prefix(up, n - 1);
  return {std::move(u), std::move(up), std::move(section)};
}

}  // namespace detail

/// An integer point in relint(P + <v>), or nullopt when P + <v> is relatively
/// lattice-free. The point is chosen on the fibre through P when possible.
inline std::optional<IntVector> line_interior_point(const Polyhedron& p, const IntVector& v,
                                                    const EnumerationLimits& limits = {}) {
  const std::size_t n = p.ambient_dim();
  detail::CylinderView view = detail::cylinder_view(p, v);
  IntVector y;
  if (n > 1) {
    std::optional<IntVector> cross = relint_integer_point(view.section, limits);
    if (!cross) return std::nullopt;
    y = *cross;
  }
  // Fibre of U P above y along the last coordinate.
  detail::Interval iv;
  {
    Polyhedron fibre_src = view.transformed;
    iv = detail::slice(fibre_src, y);
  }
  Integer s = 0;
  if (iv.lo) s = ceil_of(*iv.lo);
  else if (iv.hi) s = floor_of(*iv.hi);
  IntVector w = y;
  w.push_back(s);
  return unimodular_inverse(view.U) * w;
}

/// Whether relint(P + <v>) contains no integer point.
inline bool line_free(const Polyhedron& p, const IntVector& v, const EnumerationLimits& limits = {}) {
  if (p.ambient_dim() == 1) {
    if (is_zero(v)) fail(ErrorKind::ZeroVector, "line direction is zero");
    if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "cylinder over the empty set");
    return false;
  }
  detail::CylinderView view = detail::cylinder_view(p, v);
  return is_relatively_lattice_free(view.section, limits);
}

/// Integral generating set of cone(generators); the Hilbert basis when the
/// cone is pointed.
inline std::vector<IntVector> hilbert_generating_set(const std::vector<IntVector>& generators) {
  if (generators.empty()) fail(ErrorKind::EmptyGeneratorList, "cone without generators");
  const std::size_t n = generators.front().size();
  std::vector<IntVector> gens;
  for (const auto& g : generators) {
    if (g.size() != n) fail(ErrorKind::DimensionMismatch, "generators of different lengths");
    if (!is_zero(g)) gens.push_back(g);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty()) return {};

  const std::size_t r = rank_of(gens, n);
  std::set<IntVector> out(gens.begin(), gens.end());

  // Lattice span(gens) ∩ Z^n.
  std::vector<IntVector> perp = rational_kernel(to_rational(IntMatrix::from_rows(gens, n)));
  IntMatrix lattice = IntMatrix::from_columns(integer_kernel(perp.empty() ? IntMatrix(0, n) : IntMatrix::from_rows(perp, n)), n);

  // Integer points of the half-open parallelepiped of every basis subset.
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (pick.size() == r) {
      std::vector<IntVector> basis;
      for (auto i : pick) basis.push_back(gens[i]);
      if (rank_of(basis, n) != r) return;
      IntMatrix m(r, r);  // coordinates of the basis in the lattice basis
      for (std::size_t c = 0; c < r; ++c) {
        RatVector coords = *solve_rational(lattice, to_rational(basis[c]));
        for (std::size_t i = 0; i < r; ++i) m(i, c) = coords[i].get_num();
      }
      IntMatrix h = hnf(m).H;
      IntVector y(r);
      std::function<void(std::size_t)> residues = [&](std::size_t i) {
        if (i == r) {
          RatVector lambda = *solve_rational(m, to_rational(y));
          RatVector point(n);
          for (std::size_t c = 0; c < r; ++c) {
            Rational frac = lambda[c] - Rational(floor_of(lambda[c]));
            for (std::size_t k = 0; k < n; ++k) point[k] += frac * Rational(basis[c][k]);
          }
          if (!is_zero(point)) out.insert(to_integer(point));
          return;
        }
        for (Integer x = 0; x < h(i, i); ++x) {
          y[i] = x;
          residues(i + 1);
        }
      };
      residues(0);
      return;
    }
    for (std::size_t i = start; i < gens.size(); ++i) {
      pick.push_back(i);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);

  Polyhedron cone = Polyhedron::from_vrep(n, VRep{{RatVector(n)}, gens, {}});
  std::vector<IntVector> result(out.begin(), out.end());
  if (cone.lines().empty()) {
    std::vector<IntVector> irreducible;
    for (const auto& z : result) {
      bool reducible = false;
      for (const auto& g : result) {
        if (g == z) continue;
        if (cone.contains_direction(z - g)) {
          reducible = true;
          break;
        }
      }
      if (!reducible) irreducible.push_back(z);
    }
    result = std::move(irreducible);
  }
  return result;
}

}  // namespace polyrank
