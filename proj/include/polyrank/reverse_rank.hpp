#pragma once

// Deciding whether an integral polyhedron has finite or infinite reverse CG
// rank, with certificates.
//
// A verdict is Infinite when some integer direction v outside rec(P) makes
// P + <v> relatively lattice-free; it is Finite when P has an integer point in
// its relative interior, or when every relaxation of P is shown to lie inside
// the blow-up P_k (covering certificate at level k).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polyrank/arith.hpp"
#include "polyrank/closure.hpp"
#include "polyrank/lattice.hpp"
#include "polyrank/polyhedron.hpp"

namespace polyrank {

// ---------------------------------------------------------------------------
// Coverage of a polyhedron by a finite union of polyhedra

struct CoverResult {
  bool covered = true;
  RatVector witness;  // a point of F outside every region when !covered
};

inline std::string canonical_key(const Polyhedron& p) {
  std::ostringstream s;
  s << p.ambient_dim() << (p.is_empty() ? "E" : "N");
  for (const auto& e : p.equalities()) s << "=" << to_string(e.normal) << e.rhs.get_str();
  for (const auto& f : p.facets()) s << "<" << to_string(f.normal) << f.rhs.get_str();
  return s.str();
}

namespace detail {

inline bool in_any(const std::vector<Polyhedron>& regions, const RatVector& x) {
  for (const auto& r : regions)
    if (r.contains_point(x)) return true;
  return false;
}

// Whether every point of P satisfies a.x >= beta, with a not constant on P.
inline bool weakly_beyond(const IntVector& a, const Integer& beta, const Polyhedron& p) {
  bool strict = false;
  for (const auto& v : p.vertices()) {
    const Rational s = dot(a, v);
    if (s < beta) return false;
    if (s > beta) strict = true;
  }
  for (const auto& r : p.rays()) {
    const Integer s = dot(a, r);
    if (s < 0) return false;
    if (s > 0) strict = true;
  }
  for (const auto& l : p.lines())
    if (dot(a, l) != 0) return false;
  return strict;
}

// Cheap certificate that R meets F in a proper face of F at most.
inline bool separated(const Polyhedron& f, const Polyhedron& r) {
  if (r.is_empty()) return true;
  for (const auto& c : r.facets())
    if (weakly_beyond(c.normal, c.rhs, f)) return true;
  for (const auto& c : f.facets())
    if (weakly_beyond(c.normal, c.rhs, r)) return true;
  return false;
}

class CoverSolver {
 public:
  CoverResult solve(const Polyhedron& f, const std::vector<Polyhedron>& regions) {
    if (f.is_empty()) return {};
    const int d = f.dimension();

    // A sample point of F outside every region settles the call at once.
    const RatVector c = f.relative_interior_point();
    std::vector<RatVector> probes{c};
    for (const auto& v : f.vertices()) {
      probes.push_back(v);
      probes.push_back(scaled(c + v, Rational(1, 2)));
    }
    for (const auto& x : probes)
      if (!in_any(regions, x)) return {false, x};

    // Work inside F: keep only regions meeting F in full dimension.
    std::vector<Polyhedron> live;
    for (const auto& r : regions) {
      if (separated(f, r)) continue;
      Polyhedron cut = intersect(f, r);
      if (cut.dimension() == d) live.push_back(std::move(cut));
    }

    std::string key = canonical_key(f);
    for (const auto& r : live) key += "|" + canonical_key(r);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    CoverResult out = solve_live(f, live, d);
    if (!out.covered) out.witness = repair(out.witness, f, regions);
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  CoverResult solve_live(const Polyhedron& f, const std::vector<Polyhedron>& live, int d) {
    for (const auto& r : live)
      if (r == f) return {};
    if (d == 0 || live.empty()) return {false, f.relative_interior_point()};
    if (live.size() == 1) return {false, outside_point(f, live.front())};

    // Regions all have dimension d here; the first one is the pivot.
    const Polyhedron& pivot = live.front();
    std::vector<Polyhedron> rest(live.begin() + 1, live.end());
    for (const auto& facet : pivot.facets()) {
      Polyhedron beyond = intersect(f, {{negated(facet.normal), Integer(-facet.rhs)}});
      if (beyond.is_empty()) continue;
      CoverResult sub = beyond.dimension() == d ? solve(beyond, rest) : solve(beyond, live);
      if (!sub.covered) return sub;
    }
    return {};
  }

  // A point of F outside R (R does not contain F).
  static RatVector outside_point(const Polyhedron& f, const Polyhedron& r) {
    for (const auto& v : f.vertices())
      if (!r.contains_point(v)) return v;
    const RatVector& base = f.vertices().front();
    std::vector<IntVector> dirs = f.rays();
    for (const auto& l : f.lines()) {
      dirs.push_back(l);
      dirs.push_back(negated(l));
    }
    for (const auto& d : dirs) {
      for (const auto& row : r.inequality_rows()) {
        Integer slope = dot(row.normal, d);
        if (slope <= 0) continue;
        Rational t = (Rational(row.rhs) - dot(row.normal, base)) / Rational(slope) + 1;
        if (t < 0) t = 1;
        RatVector x = base + scaled(to_rational(d), t);
        if (!r.contains_point(x)) return x;
      }
    }
    fail(ErrorKind::InvariantViolation, "no point of F outside a region that does not contain F");
  }

  // Moves a witness slightly into F until it avoids every region of the call
  // (including lower-dimensional ones ignored by the recursion).
  static RatVector repair(const RatVector& w, const Polyhedron& f, const std::vector<Polyhedron>& regions) {
    if (!in_any(regions, w)) return w;
    const RatVector c = f.relative_interior_point();
    std::vector<RatVector> anchors{c};
    for (const auto& v : f.vertices()) anchors.push_back(scaled(c + v, Rational(1, 2)));
    for (const auto& a : anchors) {
      Rational eps(1, 2);
      for (int step = 0; step < 64; ++step, eps /= 2) {
        RatVector x = w + scaled(a - w, eps);
        if (!in_any(regions, x)) return x;
      }
    }
    return w;
  }

  std::map<std::string, CoverResult> memo_;
};

}  // namespace detail

/// Whether the union of the regions contains F; otherwise a witness point of F
/// outside all regions.
inline CoverResult covers(const Polyhedron& f, const std::vector<Polyhedron>& regions) {
  if (f.is_empty()) fail(ErrorKind::EmptyPolyhedron, "coverage of the empty set");
  for (const auto& r : regions)
    if (r.ambient_dim() != f.ambient_dim()) fail(ErrorKind::DimensionMismatch, "region in a different ambient space");
  detail::CoverSolver solver;
  return solver.solve(f, regions);
}

// ---------------------------------------------------------------------------
// Residual regions and the FIN check

struct ResidualRegion {
  IntVector source;
  Constraint facet;
  Polyhedron region;
};

/// Points r of the facet hyperplane with source ∈ conv(r, P).
inline ResidualRegion residual_region(const IntVector& source, const Polyhedron& p, const Constraint& facet) {
  if (p.is_empty()) fail(ErrorKind::EmptyPolyhedron, "residual region of the empty set");
  const RatVector x = to_rational(source);
  VRep cone;
  cone.vertices.push_back(x);
  for (const auto& v : p.vertices()) {
    RatVector d = x - v;
    if (!is_zero(d)) cone.rays.push_back(primitive_multiple(d));
  }
  for (const auto& r : p.rays()) cone.rays.push_back(negated(r));
  for (const auto& l : p.lines()) cone.lines.push_back(l);
  Polyhedron c = Polyhedron::from_vrep(p.ambient_dim(), cone);
  return {source, facet, intersect(c, {}, {facet})};
}

struct FinResult {
  bool covered = true;
  RatVector witness;
  Constraint facet;
};

/// Whether every relaxation of P lies inside the blow-up P_k.
inline FinResult fin_check(const Polyhedron& p, long k, const EnumerationLimits& limits = {}) {
  if (!p.is_bounded() || p.is_empty()) fail(ErrorKind::Unbounded, "FIN needs a nonempty polytope");
  Polyhedron pk = blow_up(p, k);
  std::vector<IntVector> outside;
  for (auto& z : integer_points(pk, limits).points)
    if (!p.contains_point(z)) outside.push_back(std::move(z));
  for (const auto& facet : pk.facets()) {
    Polyhedron face = intersect(pk, {}, {facet});
    std::vector<Polyhedron> regions;
    std::vector<std::pair<Rational, Polyhedron>> sized;
    for (const auto& z : outside) {
      ResidualRegion r = residual_region(z, p, facet);
      if (r.region.is_empty() || detail::separated(face, r.region)) continue;
      // Unbounded regions first, then by decreasing area: large pivots split F into few pieces.
      const Rational size = r.region.is_bounded() ? volume(r.region) : Rational(-1);
      sized.emplace_back(size, std::move(r.region));
    }
    std::stable_sort(sized.begin(), sized.end(), [](const auto& a, const auto& b) {
      if ((a.first < 0) != (b.first < 0)) return a.first < 0;
      return a.first > b.first;
    });
    for (auto& [size, region] : sized) regions.push_back(std::move(region));
    CoverResult c = covers(face, regions);
    if (!c.covered) return {false, c.witness, facet};
  }
  return {};
}

// ---------------------------------------------------------------------------
// The INF enumeration

/// Primitive directions by increasing infinity norm, one per antipodal pair
/// (first nonzero entry positive), lexicographically descending in a shell.
class DirectionEnumerator {
 public:
  explicit DirectionEnumerator(std::size_t n) : n_(n) {}

  std::optional<IntVector> next(std::size_t max_norm) {
    while (pos_ == shell_.size()) {
      if (norm_ >= max_norm || (n_ == 1 && norm_ >= 1)) return std::nullopt;
      ++norm_;
      fill_shell();
    }
    return shell_[pos_++];
  }

  std::size_t norm() const { return norm_; }

 private:
  void fill_shell() {
    shell_.clear();
    pos_ = 0;
    const long m = static_cast<long>(norm_);
    IntVector v(n_);
    std::function<void(std::size_t, bool, bool)> rec = [&](std::size_t j, bool leading, bool hit) {
      if (j == n_) {
        if (hit && !is_zero(v) && content(v) == 1) shell_.push_back(v);
        return;
      }
      for (long x = leading ? 0 : -m; x <= m; ++x) {
        v[j] = x;
        rec(j + 1, leading && x == 0, hit || x == m || x == -m);
      }
    };
    rec(0, true, false);
    std::sort(shell_.begin(), shell_.end(), [](const IntVector& a, const IntVector& b) { return b < a; });
  }

  std::size_t n_;
  std::size_t norm_ = 0;
  std::vector<IntVector> shell_;
  std::size_t pos_ = 0;
};

struct InfStep {
  std::optional<IntVector> candidate;  // nullopt once the enumeration is exhausted
  bool accepted = false;
};

inline InfStep inf_step(const Polyhedron& p, DirectionEnumerator& state, std::size_t max_norm,
                        const EnumerationLimits& limits = {}) {
  InfStep out;
  while (true) {
    out.candidate = state.next(max_norm);
    if (!out.candidate) return out;
    if (!in_recession_cone(p, *out.candidate)) break;
  }
  out.accepted = line_free(p, *out.candidate, limits);
  return out;
}

// ---------------------------------------------------------------------------
// Decision procedure

enum class Outcome { Finite, Infinite, CapExceeded };

enum class FiniteReason { None, Empty, InteriorPoint, Covered };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Finite: return "FINITE";
    case Outcome::Infinite: return "INFINITE";
    case Outcome::CapExceeded: return "CAP_EXCEEDED";
  }
  return "UNKNOWN";
}

inline std::string to_string(FiniteReason r) {
  switch (r) {
    case FiniteReason::None: return "none";
    case FiniteReason::Empty: return "empty";
    case FiniteReason::InteriorPoint: return "interior_point";
    case FiniteReason::Covered: return "covered";
  }
  return "unknown";
}

/// x -> U x followed by keeping the first `kept` coordinates.
struct ReductionStep {
  std::string kind;
  IntMatrix U;
  std::size_t kept = 0;
};

struct RcgrVerdict {
  Outcome outcome = Outcome::CapExceeded;
  FiniteReason reason = FiniteReason::None;
  std::string rule;                // which branch of the decision flow produced the verdict
  IntVector witness;               // Infinite: direction in the input space
  IntVector interior_point;        // Finite by interior point (input space)
  long covering_level = 0;         // Finite by covering
  std::vector<ReductionStep> trace;
  std::size_t last_k = 0;
  std::size_t last_norm = 0;
  std::string diagnostics;
};

struct RcgrCaps {
  std::size_t max_norm = 20;
  std::size_t max_k = 20;
  EnumerationLimits limits;
};

namespace detail {

inline IntVector sign_normalized(IntVector v) { return line_representative(v); }

// A lattice direction completing the direction lattice of aff(P) by one
// dimension, reduced against that lattice.
inline IntVector transversal_direction(const Polyhedron& p) {
  const std::size_t n = p.ambient_dim();
  IntMatrix basis = affine_lattice_basis(p);
  const std::size_t d = basis.cols();
  IntMatrix inv = unimodular_inverse(lattice_completion(basis));
  IntVector c = inv.column(n - 1);
  if (d > 0) {
    RatMatrix gram(d, d);
    RatVector rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) gram(i, j) = Rational(dot(basis.column(i), basis.column(j)));
      rhs[i] = Rational(dot(basis.column(i), c));
    }
    RatVector mu = *solve_rational(gram, rhs);
    for (std::size_t i = 0; i < d; ++i) {
      Integer r = floor_of(mu[i] + Rational(1, 2));
      for (std::size_t k = 0; k < n; ++k) c[k] -= r * basis(k, i);
    }
  }
  return sign_normalized(c);
}

}  // namespace detail

inline RcgrVerdict decide_rcgr(const Polyhedron& p, const RcgrCaps& caps = {}) {
  RcgrVerdict v;
  const std::size_t n = p.ambient_dim();
  if (p.is_empty()) {
    v.outcome = Outcome::Finite;
    v.reason = FiniteReason::Empty;
    v.rule = "empty";
    v.diagnostics = "empty input: reverse rank bounded by the rank bound for empty-hull relaxations";
    return v;
  }
  if (!is_integral_polyhedron(p, caps.limits)) fail(ErrorKind::NotIntegral, "input polyhedron is not integral");

  if (auto z = relint_integer_point(p, caps.limits)) {
    v.outcome = Outcome::Finite;
    v.reason = FiniteReason::InteriorPoint;
    v.rule = "interior_point";
    v.interior_point = *z;
    return v;
  }

  if (!p.rays().empty()) {
    v.outcome = Outcome::Infinite;
    v.rule = "recession_direction";
    v.witness = negated(p.rays().front());
    return v;
  }

  if (!p.lines().empty()) {
    // Map the lineality lattice to the trailing coordinates and drop them.
    std::vector<IntVector> perp = rational_kernel(to_rational(IntMatrix::from_rows(p.lines(), n)));
    IntMatrix perp_rows = perp.empty() ? IntMatrix(0, n) : IntMatrix::from_rows(perp, n);
    std::vector<IntVector> lat = integer_kernel(perp_rows);
    const std::size_t s = lat.size();
    IntMatrix u = lattice_completion(IntMatrix::from_columns(lat, n));  // lineality -> first s axes
    IntMatrix perm(n, n);
    for (std::size_t i = 0; i < n; ++i) perm(i, (i + s) % n) = 1;  // row i picks coordinate i+s
    u = perm * u;
    Polyhedron reduced = project_prefix(apply_unimodular(p, u, IntVector(n)), n - s);
    RcgrVerdict sub = decide_rcgr(reduced, caps);
    sub.trace.insert(sub.trace.begin(), ReductionStep{"lineality_split", u, n - s});
    if (sub.outcome == Outcome::Infinite) {
      IntVector lifted = sub.witness;
      lifted.resize(n);
      sub.witness = detail::sign_normalized(unimodular_inverse(u) * lifted);
    }
    if (sub.outcome == Outcome::Finite && sub.reason == FiniteReason::InteriorPoint) {
      // Any lift of the reduced interior point is interior to P.
      IntVector lifted = sub.interior_point;
      lifted.resize(n);
      sub.interior_point = unimodular_inverse(u) * lifted;
    }
    return sub;
  }

  if (!p.is_full_dimensional()) {
    v.outcome = Outcome::Infinite;
    v.rule = "affine_hull_normal";
    v.witness = detail::transversal_direction(p);
    return v;
  }

  DirectionEnumerator directions(n);
  bool inf_done = false, fin_done = false;
  long k = 1;
  while (!(inf_done && fin_done)) {
    if (!inf_done) {
      InfStep step = inf_step(p, directions, caps.max_norm, caps.limits);
      if (!step.candidate) {
        inf_done = true;
      } else {
        v.last_norm = directions.norm();
        if (step.accepted) {
          v.outcome = Outcome::Infinite;
          v.rule = "inf";
          v.witness = *step.candidate;
          return v;
        }
      }
    }
    if (!fin_done) {
      if (static_cast<std::size_t>(k) > caps.max_k) {
        fin_done = true;
      } else {
        FinResult r = fin_check(p, k, caps.limits);
        v.last_k = static_cast<std::size_t>(k);
        if (r.covered) {
          v.outcome = Outcome::Finite;
          v.reason = FiniteReason::Covered;
          v.rule = "fin";
          v.covering_level = k;
          return v;
        }
        ++k;
      }
    }
  }
  v.outcome = Outcome::CapExceeded;
  v.rule = "caps";
  v.diagnostics = "no lattice-free direction up to norm " + std::to_string(caps.max_norm) +
                  " and no covering level up to k=" + std::to_string(caps.max_k);
  return v;
}

/// Replays the reduction trace of a verdict on P.
inline Polyhedron reduced_polyhedron(const Polyhedron& p, const std::vector<ReductionStep>& trace) {
  Polyhedron cur = p;
  for (const auto& step : trace)
    cur = project_prefix(apply_unimodular(cur, step.U, IntVector(cur.ambient_dim())), step.kept);
  return cur;
}

/// Re-checks a verdict's certificate through call paths independent of the
/// ones that produced it. Returns an empty string when valid, else the reason.
inline std::string verify_verdict(const Polyhedron& p, const RcgrVerdict& v, const EnumerationLimits& limits = {}) {
  switch (v.outcome) {
    case Outcome::Infinite: {
      if (v.witness.size() != p.ambient_dim() || is_zero(v.witness)) return "witness has the wrong shape";
      if (p.is_empty()) return "empty polyhedron cannot have an infinite verdict";
      if (in_recession_cone(p, v.witness)) return "witness lies in the recession cone";
      if (!is_relatively_lattice_free(add_line(p, v.witness), limits)) return "P + <v> has an interior integer point";
      return "";
    }
    case Outcome::Finite: {
      switch (v.reason) {
        case FiniteReason::Empty: return p.is_empty() ? "" : "nonempty input marked empty";
        case FiniteReason::InteriorPoint:
          return strictly_inside(p, v.interior_point) ? "" : "interior point is not in relint(P)";
        case FiniteReason::Covered: {
          Polyhedron q = reduced_polyhedron(p, v.trace);
          if (!q.is_full_dimensional() || !q.is_bounded()) return "covering certificate needs a full-dimensional polytope";
          if (!is_lattice_free(q, limits)) return "reduced polytope is not lattice-free";
          return fin_check(q, v.covering_level, limits).covered ? "" : "covering level does not cover";
        }
        case FiniteReason::None: return "finite verdict without a reason";
      }
      return "unknown finite reason";
    }
    case Outcome::CapExceeded: return "";
  }
  return "unknown outcome";
}

// ---------------------------------------------------------------------------
// Unimodular equivalence of integral polytopes

struct AffineMap {
  IntMatrix U;
  IntVector t;
};

namespace detail {

// Lattice coordinates of a polytope inside its affine hull.
struct LatticeChart {
  IntVector origin;
  IntMatrix basis;       // n x d
  IntMatrix completion;  // unimodular [basis | rest]
  Polyhedron chart;      // the polytope in R^d
};

inline LatticeChart lattice_chart(const Polyhedron& p) {
  LatticeChart c;
  c.origin = to_integer(p.vertices().front());
  c.basis = affine_lattice_basis(p);
  const std::size_t d = c.basis.cols();
  c.completion = unimodular_inverse(lattice_completion(c.basis));
  std::vector<RatVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(*solve_rational(c.basis, v - to_rational(c.origin)));
  c.chart = Polyhedron::from_points(d, pts);
  return c;
}

inline std::optional<AffineMap> full_dim_equivalence(const Polyhedron& p, const Polyhedron& q) {
  const std::size_t d = p.ambient_dim();
  const auto& pv = p.vertices();
  const auto& qv = q.vertices();
  if (d == 0) return AffineMap{IntMatrix(0, 0), IntVector()};
  // Affinely independent vertices of P.
  std::vector<std::size_t> base{0};
  std::vector<IntVector> dirs;
  for (std::size_t i = 1; i < pv.size() && base.size() <= d; ++i) {
    std::vector<IntVector> trial = dirs;
    trial.push_back(to_integer(pv[i] - pv[0]));
    if (rank_of(trial, d) == trial.size()) {
      dirs = std::move(trial);
      base.push_back(i);
    }
  }
  IntMatrix vmat = IntMatrix::from_columns(dirs, d);
  std::set<RatVector> qset(qv.begin(), qv.end());
  std::vector<std::size_t> image;
  std::vector<bool> used(qv.size(), false);
  std::optional<AffineMap> found;  // orientation-preserving maps win over reflections
  std::function<void()> rec = [&]() {
    if (found && det(found->U) > 0) return;
    if (image.size() == base.size()) {
      // Solve A (p_i - p_0) = (q_i - q_0) column by column through the transpose.
      std::vector<IntVector> targets;
      for (std::size_t i = 1; i < image.size(); ++i) targets.push_back(to_integer(qv[image[i]] - qv[image[0]]));
      IntMatrix wmat = IntMatrix::from_columns(targets, d);
      IntMatrix a(d, d);
      RatMatrix vt = to_rational(vmat.transpose());
      for (std::size_t r = 0; r < d; ++r) {
        std::optional<RatVector> row = solve_rational(vt, to_rational(wmat.row(r)));
        if (!row || !is_integral(*row)) return;
        for (std::size_t c = 0; c < d; ++c) a(r, c) = (*row)[c].get_num();
      }
      if (!is_unimodular(a)) return;
      IntVector t = to_integer(qv[image[0]]) - a * to_integer(pv[base[0]]);
      for (const auto& v : pv)
        if (!qset.count(a * v + to_rational(t))) return;
      if (!found || det(a) > 0) found = AffineMap{a, t};
      return;
    }
    for (std::size_t j = 0; j < qv.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      image.push_back(j);
      rec();
      image.pop_back();
      used[j] = false;
    }
  };
  rec();
  return found;
}

}  // namespace detail

/// A unimodular affine map x -> U x + t taking P onto Q, if one exists.
inline std::optional<AffineMap> unimodular_equivalent(const Polyhedron& p, const Polyhedron& q,
                                                      const EnumerationLimits& limits = {}) {
  if (p.ambient_dim() != q.ambient_dim()) return std::nullopt;
  if (!p.is_bounded() || !q.is_bounded()) fail(ErrorKind::Unbounded, "equivalence test needs polytopes");
  if (p.is_empty() || q.is_empty()) {
    if (p.is_empty() && q.is_empty()) return AffineMap{IntMatrix::identity(p.ambient_dim()), IntVector(p.ambient_dim())};
    return std::nullopt;
  }
  for (const auto* x : {&p, &q})
    for (const auto& v : x->vertices())
      if (!is_integral(v)) fail(ErrorKind::NotIntegral, "equivalence test needs integral polytopes");
  if (p == q) return AffineMap{IntMatrix::identity(p.ambient_dim()), IntVector(p.ambient_dim())};
  if (p.dimension() != q.dimension()) return std::nullopt;
  if (p.dimension() == 0)
    return AffineMap{IntMatrix::identity(p.ambient_dim()), to_integer(q.vertices().front()) - to_integer(p.vertices().front())};
  if (p.vertices().size() != q.vertices().size()) return std::nullopt;
  if (volume(p) != volume(q)) return std::nullopt;
  if (integer_points(p, limits).points.size() != integer_points(q, limits).points.size()) return std::nullopt;

  const std::size_t n = p.ambient_dim();
  detail::LatticeChart cp = detail::lattice_chart(p);
  detail::LatticeChart cq = detail::lattice_chart(q);
  std::optional<AffineMap> inner = detail::full_dim_equivalence(cp.chart, cq.chart);
  if (!inner) return std::nullopt;
  const std::size_t d = cp.basis.cols();
  // U maps the completion basis of P to that of Q, acting by `inner` on the chart.
  IntMatrix block = IntMatrix::identity(n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) block(i, j) = inner->U(i, j);
  IntMatrix u = cq.completion * block * unimodular_inverse(cp.completion);
  IntVector shift(n);
  for (std::size_t i = 0; i < d; ++i) shift[i] = inner->t[i];
  IntVector t = cq.origin + cq.completion * shift - u * cp.origin;
  return AffineMap{u, t};
}

}  // namespace polyrank
