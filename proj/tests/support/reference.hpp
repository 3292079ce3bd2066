#pragma once

// Reference computations for tests, written independently of the library's
// algorithms (no clipping, no sweeps, no matching).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pqstab/discrete.hpp"
#include "pqstab/geometry.hpp"

namespace reference {

using pqstab::ConvexPolygon;
using pqstab::Interval;
using pqstab::Point2;
using pqstab::Scalar;

inline std::vector<std::pair<Point2, Point2>> edges_of(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  std::vector<std::pair<Point2, Point2>> out;
  if (v.size() == 2) out.emplace_back(v[0], v[1]);
  if (v.size() >= 3) {
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], v[(i + 1) % v.size()]);
  }
  return out;
}

inline int sign(const Scalar& s) { return sgn(s); }

inline Scalar cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline bool on_segment(const Point2& a, const Point2& b, const Point2& c) {
  return sign(cross(a, b, c)) == 0 && std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

// Intersection points of two closed segments: nothing, a single point, or
// the endpoints of the overlap.
inline std::vector<Point2> segment_meet(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  std::vector<Point2> out;
  const Scalar d1 = cross(a, b, c), d2 = cross(a, b, d), d3 = cross(c, d, a), d4 = cross(c, d, b);
  if (sign(d1) * sign(d2) < 0 && sign(d3) * sign(d4) < 0) {
    const Scalar t = d3 / (d3 - d4);
    out.push_back(Point2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    return out;
  }
  for (const Point2& p : {c, d}) {
    if (on_segment(a, b, p)) out.push_back(p);
  }
  for (const Point2& p : {a, b}) {
    if (on_segment(c, d, p)) out.push_back(p);
  }
  return out;
}

// Every vertex of P∩Q lies among: vertices of one polygon inside the other
// and edge/edge intersection points.
inline std::vector<Point2> pair_candidates(const ConvexPolygon& p, const ConvexPolygon& q) {
  std::vector<Point2> out;
  for (const Point2& v : p.vertices()) {
    if (contains_point(q, v)) out.push_back(v);
  }
  for (const Point2& v : q.vertices()) {
    if (contains_point(p, v)) out.push_back(v);
  }
  for (const auto& [a, b] : edges_of(p)) {
    for (const auto& [c, d] : edges_of(q)) {
      for (const Point2& x : segment_meet(a, b, c, d)) out.push_back(x);
    }
  }
  return out;
}

inline std::optional<Point2> pair_lexmin(const ConvexPolygon& p, const ConvexPolygon& q) {
  const auto c = pair_candidates(p, q);
  if (c.empty()) return std::nullopt;
  return *std::min_element(c.begin(), c.end());
}

inline bool pair_meets(const ConvexPolygon& p, const ConvexPolygon& q) { return !pair_candidates(p, q).empty(); }

inline std::optional<Point2> xstar(const std::vector<ConvexPolygon>& f) {
  std::optional<Point2> best;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      auto m = pair_lexmin(f[i], f[j]);
      if (m && (!best || *best < *m)) best = m;
    }
  }
  return best;
}

inline std::size_t pair_count(const std::vector<ConvexPolygon>& f) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) n += pair_meets(f[i], f[j]) ? 1 : 0;
  }
  return n;
}

// Some pair meets with all of its intersection in {x > t}: the lexmin of the
// intersection has x > t.
inline bool right_pair_exists(const std::vector<ConvexPolygon>& f, const Scalar& t) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      auto m = pair_lexmin(f[i], f[j]);
      if (m && m->x > t) return true;
    }
  }
  return false;
}

inline std::size_t depth(const std::vector<ConvexPolygon>& f, const Point2& a) {
  std::size_t n = 0;
  for (const auto& p : f) n += contains_point(p, a) ? 1 : 0;
  return n;
}

// Vertices, pairwise edge crossings and pairwise lexmins.
inline std::vector<Point2> stab_candidates(const std::vector<ConvexPolygon>& f) {
  std::vector<Point2> out;
  for (const auto& p : f) out.insert(out.end(), p.vertices().begin(), p.vertices().end());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      auto c = pair_candidates(f[i], f[j]);
      out.insert(out.end(), c.begin(), c.end());
    }
  }
  return out;
}

inline std::size_t max_depth(const std::vector<ConvexPolygon>& f) {
  std::size_t best = 0;
  for (const Point2& c : stab_candidates(f)) best = std::max(best, depth(f, c));
  return best;
}

inline std::size_t interval_pairs(const std::vector<Interval>& v) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) n += (v[i].lo <= v[j].hi && v[j].lo <= v[i].hi) ? 1 : 0;
  }
  return n;
}

inline bool has_duplicate(const std::vector<Scalar>& a) {
  std::set<Scalar> seen;
  for (const auto& x : a) {
    if (!seen.insert(x).second) return true;
  }
  return false;
}

// Largest antichain by trying all subsets (n <= 20).
inline std::size_t max_antichain(const pqstab::Poset& p) {
  const std::size_t n = p.size();
  std::size_t best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      if (!((mask >> a) & 1)) continue;
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (a != b && ((mask >> b) & 1) && p.leq(a, b)) ok = false;
      }
    }
    if (ok) best = size;
  }
  return best;
}

inline Point2 pt(long x, long y) { return pqstab::make_point(x, y); }

inline ConvexPolygon box(long x0, long y0, long x1, long y1) {
  return ConvexPolygon::box(Scalar(x0), Scalar(y0), Scalar(x1), Scalar(y1));
}

inline ConvexPolygon qbox(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1) {
  return ConvexPolygon::box(x0, y0, x1, y1);
}

inline Scalar q(long n, long d = 1) { return pqstab::make_scalar(n, d); }

// Small-coordinate polygons: many coincident vertices and touching edges.
inline ConvexPolygon random_grid_polygon(std::mt19937_64& rng, long grid) {
  while (true) {
    std::vector<Point2> pts;
    const std::size_t k = 3 + rng() % 4;
    for (std::size_t i = 0; i < k; ++i) pts.push_back(pt(static_cast<long>(rng() % grid), static_cast<long>(rng() % grid)));
    auto p = ConvexPolygon::hull_of(pts);
    if (p.rank() == 2) return p;
  }
}

}  // namespace reference
