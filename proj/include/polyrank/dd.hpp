#pragma once

// Double description method for polyhedral cones {y : M y <= 0}.
//
// Generators are kept as primitive integer vectors. Lines stay orthogonal to
// every processed row; rays carry the set of processed rows they satisfy with
// equality, and adjacency of a positive/negative pair is the combinatorial
// test (no third ray is tight on a superset of their common zero set).

#include <cstddef>
#include <vector>

#include "polyrank/arith.hpp"

namespace polyrank::dd {

struct ConeGenerators {
  std::vector<IntVector> lines;
  std::vector<IntVector> rays;
};

namespace detail {

struct Ray {
  IntVector v;
  std::vector<bool> zero;  // tight rows among those processed so far
};

inline bool contains_all(const std::vector<bool>& big, const std::vector<bool>& small) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] && !big[i]) return false;
  return true;
}

}  // namespace detail

/// Minimal generators (lineality basis plus extreme rays) of {y in R^d : row . y <= 0}.
inline ConeGenerators cone_generators(const std::vector<IntVector>& rows, std::size_t d) {
  using detail::Ray;
  const std::size_t m = rows.size();

  std::vector<IntVector> lines;
  for (std::size_t j = 0; j < d; ++j) {
    IntVector e(d);
    e[j] = 1;
    lines.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t r = 0; r < m; ++r) {
    const IntVector& a = rows[r];
    if (a.size() != d) fail(ErrorKind::DimensionMismatch, "constraint length differs from cone dimension");
    if (is_zero(a)) {
      for (auto& ray : rays) ray.zero[r] = true;
      continue;
    }

    std::size_t pick = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (dot(a, lines[i]) != 0) {
        pick = i;
        break;
      }
    }

    if (pick != lines.size()) {
      const IntVector l = lines[pick];
      const Integer s = dot(a, l);
      const Integer abs_s = abs(s);
      const int sgn_s = sign_of(s);
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i == pick) continue;
        Integer t = dot(a, lines[i]);
        if (t == 0) continue;
        for (std::size_t k = 0; k < d; ++k) lines[i][k] = abs_s * lines[i][k] - sgn_s * t * l[k];
        lines[i] = primitive(lines[i]);
      }
      for (auto& ray : rays) {
        Integer t = dot(a, ray.v);
        if (t != 0) {
          for (std::size_t k = 0; k < d; ++k) ray.v[k] = abs_s * ray.v[k] - sgn_s * t * l[k];
          ray.v = primitive(ray.v);
        }
        ray.zero[r] = true;
      }
      Ray fresh;
      fresh.v = sgn_s > 0 ? negated(l) : l;
      fresh.zero.assign(m, false);
      for (std::size_t q = 0; q < r; ++q) fresh.zero[q] = true;
      lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(pick));
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
    }
    if (pos.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) rays[i].zero[r] = true;
      continue;
    }

    // The pointed part has dimension d - #lines; adjacent rays share at least
    // (that dimension - 2) tight rows.
    const std::size_t pointed_dim = d - lines.size();
    const std::size_t need = pointed_dim >= 2 ? pointed_dim - 2 : 0;

    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] <= 0) {
        Ray keep = rays[i];
        if (val[i] == 0) keep.zero[r] = true;
        next.push_back(std::move(keep));
      }
    }
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        std::vector<bool> common(m, false);
        std::size_t count = 0;
        for (std::size_t k = 0; k < r; ++k) {
          if (rays[p].zero[k] && rays[q].zero[k]) {
            common[k] = true;
            ++count;
          }
        }
        if (count < need) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == q) continue;
          if (detail::contains_all(rays[o].zero, common)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray fresh;
        fresh.v.resize(d);
        const Integer& vp = val[p];
        const Integer& vq = val[q];
        for (std::size_t k = 0; k < d; ++k) fresh.v[k] = vp * rays[q].v[k] - vq * rays[p].v[k];
        fresh.v = primitive(fresh.v);
        fresh.zero = std::move(common);
        fresh.zero[r] = true;
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lines = std::move(lines);
  for (auto& ray : rays) out.rays.push_back(std::move(ray.v));
  return out;
}

}  // namespace polyrank::dd
