#pragma once

// Exact rational polyhedra with both representations held canonically.
//
// Every Polyhedron is immutable once built. Construction from either side runs
// the double description method twice (primal and dual) so that both the
// irredundant H-representation and the minimal V-representation are always
// present. Canonical form:
//   * equalities: reduced row echelon basis of the implicit equalities,
//     scaled to coprime integer rows;
//   * facets: one row per facet, reduced modulo the equalities, (a|b) coprime,
//     sorted lexicographically;
//   * lines: reduced row echelon basis scaled to primitive vectors;
//   * vertices and rays: orthogonal to the lineality space, sorted.
// Two polyhedra are equal as sets iff their canonical forms coincide.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "polyrank/arith.hpp"
#include "polyrank/dd.hpp"

namespace polyrank {

/// normal . x <= rhs (or = rhs when used as an equality).
struct Constraint {
  IntVector normal;
  Integer rhs;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend bool operator<(const Constraint& a, const Constraint& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.rhs < b.rhs;
  }
};

struct HRep {
  IntMatrix A;
  IntVector b;
};

struct VRep {
  std::vector<RatVector> vertices;
  std::vector<IntVector> rays;
  std::vector<IntVector> lines;
};

class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron empty(std::size_t n) {
    Polyhedron p;
    p.n_ = n;
    p.empty_ = true;
    return p;
  }

  static Polyhedron from_constraints(std::size_t n, const std::vector<Constraint>& inequalities,
                                     const std::vector<Constraint>& equalities = {}) {
    for (const auto& c : inequalities)
      if (c.normal.size() != n) fail(ErrorKind::DimensionMismatch, "constraint length differs from ambient dimension");
    for (const auto& c : equalities)
      if (c.normal.size() != n) fail(ErrorKind::DimensionMismatch, "equality length differs from ambient dimension");

    // Homogenize: (x, t) with a.x - b t <= 0 and t >= 0.
    std::vector<IntVector> rows;
    auto homog = [&](const IntVector& a, const Integer& b, bool flip) {
      IntVector r(n + 1);
      for (std::size_t j = 0; j < n; ++j) r[j] = flip ? Integer(-a[j]) : a[j];
      r[n] = flip ? b : Integer(-b);
      rows.push_back(std::move(r));
    };
    for (const auto& c : equalities) {
      homog(c.normal, c.rhs, false);
      homog(c.normal, c.rhs, true);
    }
    for (const auto& c : inequalities) homog(c.normal, c.rhs, false);
    IntVector t_nonneg(n + 1);
    t_nonneg[n] = -1;
    rows.push_back(std::move(t_nonneg));

    dd::ConeGenerators g = dd::cone_generators(rows, n + 1);
    VRep raw;
    for (const auto& l : g.lines) raw.lines.emplace_back(l.begin(), l.end() - 1);
    for (const auto& r : g.rays) {
      if (r[n] > 0) {
        RatVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = Rational(r[j], r[n]);
        for (auto& q : x) q.canonicalize();
        raw.vertices.push_back(std::move(x));
      } else {
        raw.rays.emplace_back(r.begin(), r.end() - 1);
      }
    }
    if (raw.vertices.empty()) return empty(n);

    Polyhedron p;
    p.n_ = n;
    p.empty_ = false;
    p.set_vrep(std::move(raw));
    p.compute_hrep();
    return p;
  }

  static Polyhedron from_hrep(const HRep& h) {
    if (h.A.rows() != h.b.size()) fail(ErrorKind::DimensionMismatch, "A and b have different row counts");
    std::vector<Constraint> rows;
    for (std::size_t i = 0; i < h.A.rows(); ++i) rows.push_back({h.A.row(i), h.b[i]});
    return from_constraints(h.A.cols(), rows);
  }

  static Polyhedron from_vrep(std::size_t n, const VRep& v) {
    for (const auto& x : v.vertices)
      if (x.size() != n) fail(ErrorKind::DimensionMismatch, "vertex length differs from ambient dimension");
    for (const auto& x : v.rays)
      if (x.size() != n) fail(ErrorKind::DimensionMismatch, "ray length differs from ambient dimension");
    for (const auto& x : v.lines)
      if (x.size() != n) fail(ErrorKind::DimensionMismatch, "line length differs from ambient dimension");
    if (v.vertices.empty()) return empty(n);

    // Cone of valid inequalities (a, beta): a.v - beta <= 0, a.r <= 0, a.l = 0.
    std::vector<IntVector> rows;
    for (const auto& x : v.vertices) {
      RatVector r(x);
      r.push_back(Rational(-1));
      rows.push_back(primitive_multiple(r));
    }
    for (const auto& r : v.rays) {
      if (is_zero(r)) continue;
      IntVector row(r);
      row.push_back(0);
      rows.push_back(std::move(row));
    }
    for (const auto& l : v.lines) {
      if (is_zero(l)) continue;
      IntVector row(l);
      row.push_back(0);
      rows.push_back(row);
      rows.push_back(negated(std::move(row)));
    }
    Polyhedron h = from_valid_cone(n, dd::cone_generators(rows, n + 1));
    return from_constraints(n, h.facets_, h.equalities_);
  }

  static Polyhedron from_points(std::size_t n, const std::vector<RatVector>& pts) {
    return from_vrep(n, VRep{pts, {}, {}});
  }

  std::size_t ambient_dim() const { return n_; }
  bool is_empty() const { return empty_; }
  /// Dimension of the affine hull; -1 for the empty set.
  int dimension() const { return empty_ ? -1 : static_cast<int>(n_ - equalities_.size()); }
  bool is_full_dimensional() const { return !empty_ && equalities_.empty(); }
  bool is_bounded() const { return empty_ || (rays_.empty() && lines_.empty()); }

  const std::vector<Constraint>& equalities() const { return equalities_; }
  const std::vector<Constraint>& facets() const { return facets_; }
  const std::vector<RatVector>& vertices() const { return vertices_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lines() const { return lines_; }

  /// All rows as Ax <= b; each equality contributes the pair of opposite rows.
  HRep hrep() const {
    std::vector<Constraint> rows;
    if (empty_) {
      rows.push_back({IntVector(n_), Integer(-1)});
    } else {
      for (const auto& e : equalities_) {
        rows.push_back(e);
        rows.push_back({negated(e.normal), Integer(-e.rhs)});
      }
      rows.insert(rows.end(), facets_.begin(), facets_.end());
    }
    std::sort(rows.begin(), rows.end());
    HRep h{IntMatrix(rows.size(), n_), IntVector(rows.size())};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < n_; ++j) h.A(i, j) = rows[i].normal[j];
      h.b[i] = rows[i].rhs;
    }
    return h;
  }

  VRep vrep() const { return VRep{vertices_, rays_, lines_}; }

  /// Every constraint row, equalities first (as stored, not doubled).
  std::vector<Constraint> inequality_rows() const {
    std::vector<Constraint> rows;
    for (const auto& e : equalities_) {
      rows.push_back(e);
      rows.push_back({negated(e.normal), Integer(-e.rhs)});
    }
    rows.insert(rows.end(), facets_.begin(), facets_.end());
    return rows;
  }

  bool contains_point(const RatVector& x) const {
    if (x.size() != n_) fail(ErrorKind::DimensionMismatch, "point length differs from ambient dimension");
    if (empty_) return false;
    for (const auto& e : equalities_)
      if (dot(e.normal, x) != e.rhs) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, x) > f.rhs) return false;
    return true;
  }

  bool contains_point(const IntVector& x) const { return contains_point(to_rational(x)); }

  /// Membership in the relative interior: equalities hold, facets strictly.
  bool relint_contains(const RatVector& x) const {
    if (x.size() != n_) fail(ErrorKind::DimensionMismatch, "point length differs from ambient dimension");
    if (empty_) return false;
    for (const auto& e : equalities_)
      if (dot(e.normal, x) != e.rhs) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, x) >= f.rhs) return false;
    return true;
  }

  bool contains_direction(const IntVector& r) const {
    if (empty_) return false;
    for (const auto& e : equalities_)
      if (dot(e.normal, r) != 0) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, r) > 0) return false;
    return true;
  }

  /// Q subset of this.
  bool contains(const Polyhedron& q) const {
    if (q.n_ != n_) fail(ErrorKind::DimensionMismatch, "containment across ambient dimensions");
    if (q.empty_) return true;
    if (empty_) return false;
    for (const auto& v : q.vertices_)
      if (!contains_point(v)) return false;
    for (const auto& r : q.rays_)
      if (!contains_direction(r)) return false;
    for (const auto& l : q.lines_)
      if (!contains_direction(l) || !contains_direction(negated(l))) return false;
    return true;
  }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    if (a.n_ != b.n_ || a.empty_ != b.empty_) return false;
    if (a.empty_) return true;
    return a.equalities_ == b.equalities_ && a.facets_ == b.facets_;
  }

  /// A point of the relative interior (vertex barycenter shifted along the rays).
  RatVector relative_interior_point() const {
    if (empty_) fail(ErrorKind::EmptyPolyhedron, "relative interior of the empty set");
    RatVector c(n_);
    for (const auto& v : vertices_) c = c + v;
    for (auto& x : c) x /= static_cast<long>(vertices_.size());
    for (const auto& r : rays_) c = c + to_rational(r);
    return c;
  }

 private:
  // Canonical constraint system from the generators of the cone of valid
  // inequalities.
  static Polyhedron from_valid_cone(std::size_t n, const dd::ConeGenerators& g) {
    Polyhedron p;
    p.n_ = n;
    std::vector<IntVector> eq_rows = g.lines;
    std::vector<std::size_t> pivots;
    if (!eq_rows.empty()) {
      RowEchelon e = rref(to_rational(IntMatrix::from_rows(eq_rows, n + 1)));
      eq_rows.clear();
      for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == n) fail(ErrorKind::InvariantViolation, "inconsistent implicit equalities");
        eq_rows.push_back(primitive_multiple(e.reduced.row(i)));
      }
      pivots = e.pivots;
    }
    for (const auto& row : eq_rows) p.equalities_.push_back({IntVector(row.begin(), row.end() - 1), row.back()});

    for (const auto& ray : g.rays) {
      RatVector f = to_rational(ray);
      for (std::size_t i = 0; i < eq_rows.size(); ++i) {
        const std::size_t c = pivots[i];
        if (f[c] == 0) continue;
        Rational scale = f[c] / Rational(eq_rows[i][c]);
        for (std::size_t j = 0; j <= n; ++j) f[j] -= scale * Rational(eq_rows[i][j]);
      }
      IntVector row = primitive_multiple(f);
      IntVector normal(row.begin(), row.end() - 1);
      if (is_zero(normal)) continue;
      p.facets_.push_back({std::move(normal), row.back()});
    }
    std::sort(p.facets_.begin(), p.facets_.end());
    p.facets_.erase(std::unique(p.facets_.begin(), p.facets_.end()), p.facets_.end());
    return p;
  }

  void set_vrep(VRep raw) {
    // Canonical lineality basis.
    if (!raw.lines.empty()) {
      RowEchelon e = rref(to_rational(IntMatrix::from_rows(raw.lines, n_)));
      for (std::size_t i = 0; i < e.pivots.size(); ++i) lines_.push_back(primitive_multiple(e.reduced.row(i)));
    }
    auto project = [&](RatVector x) {
      if (lines_.empty()) return x;
      const std::size_t k = lines_.size();
      RatMatrix gram(k, k);
      RatVector rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = Rational(dot(lines_[i], lines_[j]));
        rhs[i] = dot(lines_[i], x);
      }
      RatVector c = *solve_rational(gram, rhs);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n_; ++j) x[j] -= c[i] * Rational(lines_[i][j]);
      return x;
    };
    for (auto& v : raw.vertices) vertices_.push_back(project(std::move(v)));
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    for (auto& r : raw.rays) {
      RatVector pr = project(to_rational(r));
      if (is_zero(pr)) continue;
      rays_.push_back(primitive_multiple(pr));
    }
    std::sort(rays_.begin(), rays_.end());
    rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());
  }

  void compute_hrep() {
    std::vector<IntVector> rows;
    for (const auto& x : vertices_) {
      RatVector r(x);
      r.push_back(Rational(-1));
      rows.push_back(primitive_multiple(r));
    }
    for (const auto& r : rays_) {
      IntVector row(r);
      row.push_back(0);
      rows.push_back(std::move(row));
    }
    for (const auto& l : lines_) {
      IntVector row(l);
      row.push_back(0);
      rows.push_back(row);
      rows.push_back(negated(std::move(row)));
    }
    Polyhedron h = from_valid_cone(n_, dd::cone_generators(rows, n_ + 1));
    equalities_ = std::move(h.equalities_);
    facets_ = std::move(h.facets_);
  }

  std::size_t n_ = 0;
  bool empty_ = true;
  std::vector<Constraint> equalities_;
  std::vector<Constraint> facets_;
  std::vector<RatVector> vertices_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lines_;
};

// ---------------------------------------------------------------------------
// Free-function surface

inline VRep to_vrep(const Polyhedron& p) { return p.vrep(); }
inline HRep to_hrep(const Polyhedron& p) { return p.hrep(); }
inline int dimension(const Polyhedron& p) { return p.dimension(); }

inline std::vector<Constraint> affine_hull(const Polyhedron& p) {
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "affine hull of the empty set");
  return p.equalities();
}

inline std::vector<Constraint> implicit_equalities(const Polyhedron& p) { return affine_hull(p); }

/// Facet rows plus a minimal equality subsystem.
inline HRep irredundant(const Polyhedron& p) { return p.hrep(); }

inline bool equal(const Polyhedron& a, const Polyhedron& b) { return a == b; }
inline bool contains(const Polyhedron& outer, const Polyhedron& inner) { return outer.contains(inner); }
inline bool contains_point(const Polyhedron& p, const RatVector& x) { return p.contains_point(x); }

inline Polyhedron intersect(const Polyhedron& p, const std::vector<Constraint>& inequalities,
                            const std::vector<Constraint>& equalities = {}) {
  if (p.is_empty()) return p;
  std::vector<Constraint> eqs = p.equalities();
  eqs.insert(eqs.end(), equalities.begin(), equalities.end());
  std::vector<Constraint> ineqs = p.facets();
  ineqs.insert(ineqs.end(), inequalities.begin(), inequalities.end());
  return Polyhedron::from_constraints(p.ambient_dim(), ineqs, eqs);
}

inline Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::DimensionMismatch, "intersection across ambient dimensions");
  if (a.is_empty()) return a;
  if (b.is_empty()) return b;
  return intersect(a, b.facets(), b.equalities());
}

inline Polyhedron recession_cone(const Polyhedron& p) {
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "recession cone of the empty set");
  return Polyhedron::from_vrep(p.ambient_dim(), VRep{{RatVector(p.ambient_dim())}, p.rays(), p.lines()});
}

inline std::vector<IntVector> lineality_space(const Polyhedron& p) {
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "lineality space of the empty set");
  return p.lines();
}

/// Whether r is a recession direction of p.
inline bool in_recession_cone(const Polyhedron& p, const IntVector& r) {
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "recession cone of the empty set");
  return p.contains_direction(r);
}

/// Minkowski sum P + <v>.
inline Polyhedron add_line(const Polyhedron& p, const IntVector& v) {
  if (is_zero(v)) fail(ErrorKind::ZeroVector, "add_line with the zero vector");
  if (v.size() != p.ambient_dim()) fail(ErrorKind::DimensionMismatch, "direction length differs from ambient dimension");
  if (p.is_empty()) return p;
  VRep rep = p.vrep();
  rep.lines.push_back(primitive(v));
  return Polyhedron::from_vrep(p.ambient_dim(), rep);
}

/// {x : A x <= b + k 1} over the stored irredundant integral rows.
inline Polyhedron blow_up(const Polyhedron& p, const Integer& k) {
  if (k < 0) fail(ErrorKind::DimensionMismatch, "blow-up level must be nonnegative");
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "blow-up of the empty set");
  std::vector<Constraint> rows = p.inequality_rows();
  for (auto& r : rows) r.rhs += k;
  return Polyhedron::from_constraints(p.ambient_dim(), rows);
}

inline Polyhedron convex_hull_with_point(const Polyhedron& p, const RatVector& x) {
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "hull of the empty set with a point");
  VRep rep = p.vrep();
  rep.vertices.push_back(x);
  return Polyhedron::from_vrep(p.ambient_dim(), rep);
}

/// Image under x -> U x + t.
inline Polyhedron apply_unimodular(const Polyhedron& p, const IntMatrix& u, const IntVector& t) {
  const std::size_t n = p.ambient_dim();
  if (u.rows() != n || u.cols() != n || t.size() != n)
    fail(ErrorKind::DimensionMismatch, "transformation size differs from ambient dimension");
  if (!is_unimodular(u)) fail(ErrorKind::NotUnimodular, "transformation matrix is not unimodular");
  if (p.is_empty()) return p;
  VRep rep;
  const RatVector shift = to_rational(t);
  for (const auto& v : p.vertices()) rep.vertices.push_back(u * v + shift);
  for (const auto& r : p.rays()) rep.rays.push_back(u * r);
  for (const auto& l : p.lines()) rep.lines.push_back(u * l);
  return Polyhedron::from_vrep(n, rep);
}

/// Image under x -> U x + t for any square integer U (not necessarily unimodular).
inline Polyhedron apply_linear(const Polyhedron& p, const IntMatrix& u, const RatVector& t) {
  const std::size_t m = u.rows();
  if (p.is_empty()) return Polyhedron::empty(m);
  VRep rep;
  for (const auto& v : p.vertices()) rep.vertices.push_back(u * v + t);
  for (const auto& r : p.rays()) {
    IntVector img = u * r;
    if (!is_zero(img)) rep.rays.push_back(std::move(img));
  }
  for (const auto& l : p.lines()) {
    IntVector img = u * l;
    if (!is_zero(img)) rep.lines.push_back(std::move(img));
  }
  return Polyhedron::from_vrep(m, rep);
}

/// Projection onto the first k coordinates.
inline Polyhedron project_prefix(const Polyhedron& p, std::size_t k) {
  if (k > p.ambient_dim()) fail(ErrorKind::DimensionMismatch, "projection onto more coordinates than available");
  IntMatrix proj(k, p.ambient_dim());
  for (std::size_t i = 0; i < k; ++i) proj(i, i) = 1;
  return apply_linear(p, proj, RatVector(k));
}

namespace detail {

// Simplices (as point lists) triangulating conv(points); points live in R^d.
inline std::vector<std::vector<RatVector>> triangulate(const std::vector<RatVector>& points, std::size_t d) {
  Polyhedron p = Polyhedron::from_points(d, points);
  const auto& verts = p.vertices();
  if (p.dimension() == 0) return {{verts.front()}};
  const RatVector& apex = verts.front();
  std::vector<std::vector<RatVector>> out;
  for (const auto& f : p.facets()) {
    if (dot(f.normal, apex) == f.rhs) continue;
    std::vector<RatVector> face;
    for (const auto& v : verts)
      if (dot(f.normal, v) == f.rhs) face.push_back(v);
    for (auto& simplex : triangulate(face, d)) {
      simplex.push_back(apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

}  // namespace detail

/// Lattice basis of the direction space of aff(P) (columns of an n x d matrix).
inline IntMatrix affine_lattice_basis(const Polyhedron& p) {
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "affine lattice of the empty set");
  const std::size_t n = p.ambient_dim();
  IntMatrix e(p.equalities().size(), n);
  for (std::size_t i = 0; i < p.equalities().size(); ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = p.equalities()[i].normal[j];
  std::vector<IntVector> basis = integer_kernel(e);
  return IntMatrix::from_columns(basis, n);
}

/// Volume measured in aff(P) with respect to its integer lattice.
inline Rational volume(const Polyhedron& p) {
  if (p.is_empty()) return 0;
  if (!p.is_bounded()) fail(ErrorKind::UnboundedVolume, "volume of an unbounded polyhedron");
  const int d = p.dimension();
  if (d == 0) return 1;
  const IntMatrix basis = affine_lattice_basis(p);
  const RatVector& origin = p.vertices().front();
  std::vector<RatVector> coords;
  for (const auto& v : p.vertices()) {
    std::optional<RatVector> y = solve_rational(basis, v - origin);
    if (!y) fail(ErrorKind::InvariantViolation, "vertex outside its affine hull");
    coords.push_back(std::move(*y));
  }
  Rational total = 0;
  Integer factorial = 1;
  for (int i = 2; i <= d; ++i) factorial *= i;
  for (const auto& simplex : detail::triangulate(coords, static_cast<std::size_t>(d))) {
    RatMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = simplex[i + 1][j] - simplex[0][j];
    total += abs(det(m));
  }
  return total / Rational(factorial);
}

}  // namespace polyrank
