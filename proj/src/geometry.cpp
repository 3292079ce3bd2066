#include "pqstab/geometry.hpp"

#include <algorithm>

#include "pqstab/error.hpp"

namespace pqstab {

Point2 make_point(long x, long y) { return Point2{Scalar(x), Scalar(y)}; }

std::string to_string(const Point2& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

std::ostream& operator<<(std::ostream& os, const Point2& p) { return os << to_string(p); }

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << "[" << to_string(iv.lo) << ", " << to_string(iv.hi) << "]";
}

Scalar orient(const Point2& o, const Point2& a, const Point2& b) {
  Scalar r = (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  return r;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> canonical) : vertices_(std::move(canonical)) {
  xmin_ = xmax_ = vertices_.front().x;
  ymin_ = ymax_ = vertices_.front().y;
  for (const Point2& v : vertices_) {
    if (v.x < xmin_) xmin_ = v.x;
    if (v.x > xmax_) xmax_ = v.x;
    if (v.y < ymin_) ymin_ = v.y;
    if (v.y > ymax_) ymax_ = v.y;
  }
}

ConvexPolygon ConvexPolygon::hull_of(std::vector<Point2> points) {
  if (points.empty()) throw PreconditionError("hull_of: empty point set");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 2) return ConvexPolygon(std::move(points));

  // Monotone chain; strict turns only, so collinear points are dropped.
  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (const Point2& p : points) {
    while (k >= 2 && sgn(orient(hull[k - 2], hull[k - 1], p)) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = points.size() - 1; i-- > 0;) {
    while (k >= lower && sgn(orient(hull[k - 2], hull[k - 1], points[i])) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return ConvexPolygon(std::move(hull));
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Point2> vertices, bool* reversed) {
  if (reversed) *reversed = false;
  if (vertices.empty()) throw InputError("polygon has no vertices");

  // Drop cyclically repeated vertices.
  std::vector<Point2> ring;
  for (const Point2& v : vertices) {
    if (ring.empty() || !(ring.back() == v)) ring.push_back(v);
  }
  while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();

  ConvexPolygon hull = hull_of(ring);
  if (hull.rank() < 2) {
    // All collinear: the ring must not double back over itself beyond the
    // two extreme points, which hull_of already captures.
    return hull;
  }

  // Drop collinear vertices that lie between their neighbours; anything else
  // collinear is a spike and makes the ring non-convex.
  std::vector<Point2> strict;
  const std::size_t m = ring.size();
  int orientation = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& prev = ring[(i + m - 1) % m];
    const Point2& cur = ring[i];
    const Point2& next = ring[(i + 1) % m];
    int turn = sgn(orient(prev, cur, next));
    if (turn == 0) {
      Scalar dot = (cur.x - prev.x) * (next.x - cur.x) + (cur.y - prev.y) * (next.y - cur.y);
      if (sgn(dot) <= 0) throw InputError("polygon is not convex (vertex doubles back)");
      continue;
    }
    if (orientation == 0) orientation = turn;
    if (turn != orientation) throw InputError("polygon is not convex (mixed turn directions)");
    strict.push_back(cur);
  }

  if (strict.size() != hull.size()) throw InputError("polygon is not convex (self-overlapping boundary)");
  if (orientation < 0) {
    std::reverse(strict.begin(), strict.end());
    if (reversed) *reversed = true;
  }
  auto start = std::min_element(strict.begin(), strict.end());
  std::rotate(strict.begin(), start, strict.end());
  if (strict != hull.vertices()) throw InputError("polygon is not convex (self-overlapping boundary)");
  return hull;
}

ConvexPolygon ConvexPolygon::box(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1) {
  return hull_of({Point2{x0, y0}, Point2{x1, y0}, Point2{x1, y1}, Point2{x0, y1}});
}

std::ostream& operator<<(std::ostream& os, const ConvexPolygon& poly) {
  os << "{";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) os << ", ";
    os << poly.vertices()[i];
  }
  return os << "}";
}

bool contains_point(const ConvexPolygon& poly, const Point2& a) {
  if (a.x < poly.xmin() || a.x > poly.xmax() || a.y < poly.ymin() || a.y > poly.ymax()) return false;
  const auto& v = poly.vertices();
  switch (poly.rank()) {
    case 0:
      return true;
    case 1:
      return sgn(orient(v[0], v[1], a)) == 0;
    default:
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(orient(v[i], v[(i + 1) % v.size()], a)) < 0) return false;
      }
      return true;
  }
}

namespace {

// Closed half-plane {p : a*p.x + b*p.y + c >= 0}.
struct HalfPlane {
  Scalar a, b, c;

  Scalar eval(const Point2& p) const {
    Scalar r = a * p.x + b * p.y + c;
    return r;
  }
};

// Points to the left of (or on) the directed line from u to w.
HalfPlane left_of(const Point2& u, const Point2& w) {
  HalfPlane h;
  h.a = u.y - w.y;
  h.b = w.x - u.x;
  h.c = -(h.a * u.x + h.b * u.y);
  return h;
}

// Points p with (w - u) . (p - u) >= 0.
HalfPlane ahead_of(const Point2& u, const Point2& w) {
  HalfPlane h;
  h.a = w.x - u.x;
  h.b = w.y - u.y;
  h.c = -(h.a * u.x + h.b * u.y);
  return h;
}

std::vector<HalfPlane> constraints_of(const ConvexPolygon& q) {
  const auto& v = q.vertices();
  std::vector<HalfPlane> out;
  if (q.rank() == 2) {
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(left_of(v[i], v[(i + 1) % v.size()]));
  } else if (q.rank() == 1) {
    out.push_back(left_of(v[0], v[1]));
    out.push_back(left_of(v[1], v[0]));
    out.push_back(ahead_of(v[0], v[1]));
    out.push_back(ahead_of(v[1], v[0]));
  }
  return out;
}

// One Sutherland–Hodgman step on a convex (possibly degenerate) vertex cycle.
std::vector<Point2> clip(const std::vector<Point2>& ring, const HalfPlane& h) {
  std::vector<Point2> out;
  const std::size_t m = ring.size();
  if (m == 0) return out;
  std::vector<Scalar> s(m);
  std::vector<int> sign(m);
  for (std::size_t i = 0; i < m; ++i) {
    s[i] = h.eval(ring[i]);
    sign[i] = sgn(s[i]);
  }
  auto push = [&out](Point2 p) {
    if (out.empty() || !(out.back() == p)) out.push_back(std::move(p));
  };
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    if (sign[i] >= 0) push(ring[i]);
    if ((sign[i] > 0 && sign[j] < 0) || (sign[i] < 0 && sign[j] > 0)) {
      Scalar t = s[i] / (s[i] - s[j]);
      Point2 p{ring[i].x + (ring[j].x - ring[i].x) * t, ring[i].y + (ring[j].y - ring[i].y) * t};
      push(std::move(p));
    }
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

bool boxes_overlap(const ConvexPolygon& p, const ConvexPolygon& q) {
  return !(p.xmax() < q.xmin() || q.xmax() < p.xmin() || p.ymax() < q.ymin() || q.ymax() < p.ymin());
}

std::optional<ConvexPolygon> clip_by(const ConvexPolygon& p, const std::vector<HalfPlane>& hs) {
  std::vector<Point2> ring = p.vertices();
  for (const HalfPlane& h : hs) {
    ring = clip(ring, h);
    if (ring.empty()) return std::nullopt;
  }
  return ConvexPolygon::hull_of(std::move(ring));
}

}  // namespace

std::optional<ConvexPolygon> intersect_pair(const ConvexPolygon& p, const ConvexPolygon& q) {
  if (!boxes_overlap(p, q)) return std::nullopt;
  if (q.rank() == 0) {
    if (contains_point(p, q.lexmin())) return q;
    return std::nullopt;
  }
  if (p.rank() == 0) {
    if (contains_point(q, p.lexmin())) return p;
    return std::nullopt;
  }
  return clip_by(p, constraints_of(q));
}

namespace {

// Separating-axis test. Disjoint compact convex sets are separated by a line
// parallel to an edge of their Minkowski difference, and those edges are
// parallel to edges of the operands; for segments the segment direction is
// also needed, and the box test covers the coordinate axes.
bool separated_along(const ConvexPolygon& p, const ConvexPolygon& q, const Scalar& ax, const Scalar& ay) {
  auto extent = [&](const ConvexPolygon& poly, Scalar& lo, Scalar& hi) {
    bool first = true;
    for (const Point2& v : poly.vertices()) {
      Scalar d = ax * v.x + ay * v.y;
      if (first || d < lo) lo = d;
      if (first || d > hi) hi = d;
      first = false;
    }
  };
  Scalar plo, phi, qlo, qhi;
  extent(p, plo, phi);
  extent(q, qlo, qhi);
  return phi < qlo || qhi < plo;
}

bool separated_by_edges_of(const ConvexPolygon& a, const ConvexPolygon& p, const ConvexPolygon& q) {
  const auto& vs = a.vertices();
  if (vs.size() < 2) return false;
  const std::size_t edges = vs.size() == 2 ? 1 : vs.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const Point2& u = vs[i];
    const Point2& w = vs[(i + 1) % vs.size()];
    Scalar dx = w.x - u.x;
    Scalar dy = w.y - u.y;
    if (separated_along(p, q, -dy, dx)) return true;
    if (vs.size() == 2 && separated_along(p, q, dx, dy)) return true;
  }
  return false;
}

}  // namespace

bool intersects(const ConvexPolygon& p, const ConvexPolygon& q) {
  if (!boxes_overlap(p, q)) return false;
  return !separated_by_edges_of(p, p, q) && !separated_by_edges_of(q, p, q);
}

std::optional<ConvexPolygon> intersect_family(std::span<const ConvexPolygon* const> polys) {
  if (polys.empty()) throw PreconditionError("intersect_family: empty family");
  std::optional<ConvexPolygon> acc = *polys.front();
  for (std::size_t i = 1; i < polys.size() && acc; ++i) acc = intersect_pair(*acc, *polys[i]);
  return acc;
}

std::optional<ConvexPolygon> intersect_family(std::span<const ConvexPolygon> polys) {
  std::vector<const ConvexPolygon*> ptrs;
  ptrs.reserve(polys.size());
  for (const ConvexPolygon& p : polys) ptrs.push_back(&p);
  return intersect_family(std::span<const ConvexPolygon* const>(ptrs));
}

const Point2& lexmin(const ConvexPolygon& poly) { return poly.lexmin(); }

Point2 lexmin(const std::optional<ConvexPolygon>& region) {
  if (!region) throw PreconditionError("lexmin of an empty region");
  return region->lexmin();
}

std::optional<ConvexPolygon> clip_right(const ConvexPolygon& poly, const VerticalLine& l) {
  if (poly.xmin() >= l.x0) return poly;
  if (poly.xmax() < l.x0) return std::nullopt;
  HalfPlane h{Scalar(1), Scalar(0), Scalar(-l.x0)};
  return clip_by(poly, {h});
}

std::optional<Interval> trace_on_line(const ConvexPolygon& poly, const VerticalLine& l) {
  if (l.x0 < poly.xmin() || l.x0 > poly.xmax()) return std::nullopt;
  const auto& v = poly.vertices();
  const std::size_t m = v.size();
  std::optional<Interval> out;
  auto take = [&out](const Scalar& y) {
    if (!out) {
      out = Interval{y, y};
    } else {
      if (y < out->lo) out->lo = y;
      if (y > out->hi) out->hi = y;
    }
  };
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % m];
    int sa = cmp(a.x, l.x0);
    int sb = cmp(b.x, l.x0);
    if (sa == 0) take(a.y);
    if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) {
      Scalar y = a.y + (b.y - a.y) * (l.x0 - a.x) / (b.x - a.x);
      take(y);
    }
  }
  return out;
}

}  // namespace pqstab
