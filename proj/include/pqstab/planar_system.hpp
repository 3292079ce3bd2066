#pragma once

#include <optional>
#include <span>

#include "pqstab/geometry.hpp"

namespace pqstab {

// The plane as an Ordered-Helly system: convex polygons, lexicographic order,
// Helly number 3.
class PlanarSystem {
 public:
  using Element = Point2;
  using Set = ConvexPolygon;

  int helly_number() const { return 3; }
  bool precedes_or_equal(const Point2& a, const Point2& b) const { return a <= b; }
  std::optional<Point2> min_of_intersection(std::span<const ConvexPolygon* const> sets) const {
    return min_of_full_intersection(sets);
  }
  std::optional<Point2> min_of_full_intersection(std::span<const ConvexPolygon* const> sets) const {
    auto region = intersect_family(sets);
    if (!region) return std::nullopt;
    return region->lexmin();
  }
  bool contains(const ConvexPolygon& set, const Point2& a) const { return contains_point(set, a); }
  std::size_t complexity(const ConvexPolygon& set) const { return set.size(); }
};

}  // namespace pqstab
