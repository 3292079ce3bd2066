#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pqstab/geometry.hpp"

namespace pqstab {

// A non-vertical polygon edge oriented left to right. `upper` edges have the
// polygon locally below them (they are traversed right to left in CCW order);
// the others bound it from below. Vertical edges are not sweep edges.
struct SweepEdge {
  Point2 left;
  Point2 right;
  Scalar slope;
  std::size_t polygon = 0;
  bool upper = false;

  Scalar y_at(const Scalar& x) const;
};

enum class EventKind { EdgeStart = 0, EdgeCrossing = 1, EdgeEnd = 2 };

// Events are ordered by (point, kind, edges). At a shared point, starts come
// before crossings and crossings before ends, so closed polygons that only
// touch are still seen overlapping.
struct Event {
  Point2 point;
  EventKind kind = EventKind::EdgeStart;
  std::vector<std::size_t> edges;

  friend bool operator==(const Event&, const Event&) = default;
  friend bool operator<(const Event& a, const Event& b);
};

// Ordered dictionary of the edges crossing the sweep line, keyed by their
// y-coordinate at the current abscissa (ties broken by slope, then edge id),
// with every node carrying the number of upper and lower edges in its
// subtree. Backed by a treap with split/merge.
class SweepStatus {
 public:
  explicit SweepStatus(std::span<const SweepEdge> edges);

  void set_abscissa(const Scalar& x) { x_ = x; }
  const Scalar& abscissa() const noexcept { return x_; }

  // Removes and returns (in order) every edge whose y at the abscissa is y.
  std::vector<std::size_t> extract_at(const Scalar& y);
  // Inserts edges that all pass through y at the abscissa; `block` must be
  // ordered by (slope, id) and the structure must hold no other edge at y.
  void insert_block(const std::vector<std::size_t>& block, const Scalar& y);

  std::size_t size() const noexcept;
  std::size_t count_upper_at_or_above(const Scalar& y) const;
  std::size_t count_lower_above(const Scalar& y) const;

  // Last edge strictly below y / first edge strictly above y.
  std::optional<std::size_t> below(const Scalar& y) const;
  std::optional<std::size_t> above(const Scalar& y) const;
  // Edges with lo <= y(abscissa) <= hi, in order.
  std::vector<std::size_t> range(const Scalar& lo, const Scalar& hi) const;
  // Edges with y(abscissa) >= y, in order.
  std::vector<std::size_t> at_or_above(const Scalar& y) const;

  std::vector<std::size_t> in_order() const;

  // Checks the ordering against a from-scratch sort and every augmented
  // count against a recount.
  bool check_invariants() const;

 private:
  struct Node {
    std::uint64_t priority = 0;
    int left = -1;
    int right = -1;
    std::size_t size = 1;
    std::size_t upper = 0;
    std::size_t lower = 0;
  };

  Scalar y_of(std::size_t edge) const { return edges_[edge].y_at(x_); }
  void pull(int t);
  std::pair<int, int> split(int t, const Scalar& y, bool inclusive);
  int merge(int a, int b);
  void collect(int t, std::vector<std::size_t>& out) const;
  void collect_range(int t, const Scalar* lo, const Scalar* hi, std::vector<std::size_t>& out) const;
  std::size_t count_lt(const Scalar& y, bool upper) const;
  std::size_t count_le(const Scalar& y, bool upper) const;

  std::span<const SweepEdge> edges_;
  std::vector<Node> nodes_;
  int root_ = -1;
  Scalar x_;
};

std::vector<SweepEdge> sweep_edges(std::span<const ConvexPolygon> polys);

struct StabPoint {
  Point2 point;
  std::size_t count = 0;
};

// Among all event points (vertices and edge crossings, including crossings
// with vertical edges), the lexicographically smallest one contained in the
// largest number of polygons. Every polygon must have positive area and the
// list must be non-empty; throws PreconditionError otherwise.
StabPoint max_stab_point(std::span<const ConvexPolygon> polys);

// Number of unordered pairs of closed intervals that intersect.
std::size_t count_interval_pairs(std::span<const Interval> intervals);

struct SweepPairCount {
  std::size_t pairs = 0;
  // Set when the input contains degenerate polygons the sweep does not
  // handle; `pairs` is then meaningless and the caller should use the
  // quadratic counter.
  bool fallback = false;
};

// Number of intersecting unordered pairs, read off the same sweep: two
// polygons intersect iff both contain some event point.
SweepPairCount count_polygon_pairs_sweep(std::span<const ConvexPolygon> polys);

struct SweepStats {
  std::size_t events = 0;       // distinct event points visited
  std::size_t crossings = 0;    // crossing events discovered
  bool invariants_ok = true;    // only meaningful when validation was requested
};

// Visits every event point in lexicographic order with the number of
// polygons containing it. With `validate` the status structure is checked
// after every abscissa. Exposed for tests.
SweepStats sweep_event_points(std::span<const ConvexPolygon> polys, bool validate,
                              const std::function<void(const Point2&, std::size_t count)>& visit);

}  // namespace pqstab
