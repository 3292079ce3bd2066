#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pqstab/scalar.hpp"

namespace pqstab {

struct Point2 {
  Scalar x;
  Scalar y;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }

  // Lexicographic: x first, then y.
  friend std::strong_ordering operator<=>(const Point2& a, const Point2& b) {
    if (int c = cmp(a.x, b.x); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(a.y, b.y);
    if (c == 0) return std::strong_ordering::equal;
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
};

Point2 make_point(long x, long y);
std::string to_string(const Point2& p);
std::ostream& operator<<(std::ostream& os, const Point2& p);

// Twice the signed area of (o, a, b); positive for a counter-clockwise turn.
Scalar orient(const Point2& o, const Point2& a, const Point2& b);

// Closed interval [lo, hi] with lo <= hi.
struct Interval {
  Scalar lo;
  Scalar hi;

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

std::ostream& operator<<(std::ostream& os, const Interval& iv);

// The line {(x, y) : x = x0}.
struct VerticalLine {
  Scalar x0;
};

// Compact convex region given by its vertices in canonical order:
// counter-clockwise, starting at the lexicographically smallest vertex, no
// repeated or collinear vertices. Degenerate regions are first-class: a
// segment has its two endpoints (lexmin first), a point has one vertex.
class ConvexPolygon {
 public:
  // Convex hull of a non-empty point set.
  static ConvexPolygon hull_of(std::vector<Point2> points);

  // Validates that `vertices` trace a convex polygon (either orientation;
  // repeated and collinear vertices are dropped). `reversed`, when given, is
  // set if the input was clockwise. Throws InputError on non-convex input.
  static ConvexPolygon from_vertices(std::vector<Point2> vertices, bool* reversed = nullptr);

  // Axis-aligned box [x0, x1] x [y0, y1].
  static ConvexPolygon box(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1);

  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  // 2 for positive area, 1 for a segment, 0 for a point.
  int rank() const noexcept { return vertices_.size() >= 3 ? 2 : static_cast<int>(vertices_.size()) - 1; }

  const Point2& lexmin() const noexcept { return vertices_.front(); }
  const Scalar& xmin() const noexcept { return xmin_; }
  const Scalar& xmax() const noexcept { return xmax_; }
  const Scalar& ymin() const noexcept { return ymin_; }
  const Scalar& ymax() const noexcept { return ymax_; }

  friend bool operator==(const ConvexPolygon& a, const ConvexPolygon& b) { return a.vertices_ == b.vertices_; }

 private:
  explicit ConvexPolygon(std::vector<Point2> canonical);

  std::vector<Point2> vertices_;
  Scalar xmin_, xmax_, ymin_, ymax_;
};

std::ostream& operator<<(std::ostream& os, const ConvexPolygon& poly);

bool contains_point(const ConvexPolygon& poly, const Point2& a);

std::optional<ConvexPolygon> intersect_pair(const ConvexPolygon& p, const ConvexPolygon& q);

// Cheaper than intersect_pair when only emptiness matters.
bool intersects(const ConvexPolygon& p, const ConvexPolygon& q);

// Precondition: `polys` non-empty.
std::optional<ConvexPolygon> intersect_family(std::span<const ConvexPolygon> polys);
std::optional<ConvexPolygon> intersect_family(std::span<const ConvexPolygon* const> polys);

const Point2& lexmin(const ConvexPolygon& poly);
// Throws PreconditionError when the region is empty.
Point2 lexmin(const std::optional<ConvexPolygon>& region);

// poly ∩ {x >= l.x0}.
std::optional<ConvexPolygon> clip_right(const ConvexPolygon& poly, const VerticalLine& l);

// The y-extent of poly ∩ l.
std::optional<Interval> trace_on_line(const ConvexPolygon& poly, const VerticalLine& l);

}  // namespace pqstab
