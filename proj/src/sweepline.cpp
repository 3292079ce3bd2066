#include "pqstab/sweepline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "pqstab/error.hpp"

namespace pqstab {

Scalar SweepEdge::y_at(const Scalar& x) const {
  Scalar y = left.y + slope * (x - left.x);
  return y;
}

bool operator<(const Event& a, const Event& b) {
  if (auto c = a.point <=> b.point; c != 0) return c < 0;
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  return a.edges < b.edges;
}

// ---------------------------------------------------------------------------
// SweepStatus

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SweepStatus::SweepStatus(std::span<const SweepEdge> edges) : edges_(edges), nodes_(edges.size()) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) nodes_[i].priority = splitmix64(i);
}

void SweepStatus::pull(int t) {
  Node& n = nodes_[t];
  const SweepEdge& e = edges_[static_cast<std::size_t>(t)];
  n.size = 1;
  n.upper = e.upper ? 1 : 0;
  n.lower = e.upper ? 0 : 1;
  for (int c : {n.left, n.right}) {
    if (c < 0) continue;
    n.size += nodes_[c].size;
    n.upper += nodes_[c].upper;
    n.lower += nodes_[c].lower;
  }
}

std::pair<int, int> SweepStatus::split(int t, const Scalar& y, bool inclusive) {
  if (t < 0) return {-1, -1};
  const int c = cmp(y_of(static_cast<std::size_t>(t)), y);
  const bool goes_left = inclusive ? c <= 0 : c < 0;
  if (goes_left) {
    auto [a, b] = split(nodes_[t].right, y, inclusive);
    nodes_[t].right = a;
    pull(t);
    return {t, b};
  }
  auto [a, b] = split(nodes_[t].left, y, inclusive);
  nodes_[t].left = b;
  pull(t);
  return {a, t};
}

int SweepStatus::merge(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (nodes_[a].priority > nodes_[b].priority) {
    nodes_[a].right = merge(nodes_[a].right, b);
    pull(a);
    return a;
  }
  nodes_[b].left = merge(a, nodes_[b].left);
  pull(b);
  return b;
}

void SweepStatus::collect(int t, std::vector<std::size_t>& out) const {
  if (t < 0) return;
  collect(nodes_[t].left, out);
  out.push_back(static_cast<std::size_t>(t));
  collect(nodes_[t].right, out);
}

std::vector<std::size_t> SweepStatus::extract_at(const Scalar& y) {
  auto [below, rest] = split(root_, y, false);
  auto [mid, above] = split(rest, y, true);
  std::vector<std::size_t> out;
  collect(mid, out);
  root_ = merge(below, above);
  return out;
}

void SweepStatus::insert_block(const std::vector<std::size_t>& block, const Scalar& y) {
  if (block.empty()) return;
  int mid = -1;
  for (std::size_t e : block) {
    Node& n = nodes_[e];
    n.left = n.right = -1;
    pull(static_cast<int>(e));
    mid = merge(mid, static_cast<int>(e));
  }
  auto [below, above] = split(root_, y, false);
  root_ = merge(merge(below, mid), above);
}

std::size_t SweepStatus::size() const noexcept { return root_ < 0 ? 0 : nodes_[root_].size; }

std::size_t SweepStatus::count_lt(const Scalar& y, bool upper) const {
  std::size_t acc = 0;
  int t = root_;
  while (t >= 0) {
    const Node& n = nodes_[t];
    if (y_of(static_cast<std::size_t>(t)) < y) {
      if (n.left >= 0) acc += upper ? nodes_[n.left].upper : nodes_[n.left].lower;
      if (edges_[static_cast<std::size_t>(t)].upper == upper) ++acc;
      t = n.right;
    } else {
      t = n.left;
    }
  }
  return acc;
}

std::size_t SweepStatus::count_le(const Scalar& y, bool upper) const {
  std::size_t acc = 0;
  int t = root_;
  while (t >= 0) {
    const Node& n = nodes_[t];
    if (y_of(static_cast<std::size_t>(t)) <= y) {
      if (n.left >= 0) acc += upper ? nodes_[n.left].upper : nodes_[n.left].lower;
      if (edges_[static_cast<std::size_t>(t)].upper == upper) ++acc;
      t = n.right;
    } else {
      t = n.left;
    }
  }
  return acc;
}

std::size_t SweepStatus::count_upper_at_or_above(const Scalar& y) const {
  const std::size_t total = root_ < 0 ? 0 : nodes_[root_].upper;
  return total - count_lt(y, true);
}

std::size_t SweepStatus::count_lower_above(const Scalar& y) const {
  const std::size_t total = root_ < 0 ? 0 : nodes_[root_].lower;
  return total - count_le(y, false);
}

std::optional<std::size_t> SweepStatus::below(const Scalar& y) const {
  std::optional<std::size_t> best;
  int t = root_;
  while (t >= 0) {
    if (y_of(static_cast<std::size_t>(t)) < y) {
      best = static_cast<std::size_t>(t);
      t = nodes_[t].right;
    } else {
      t = nodes_[t].left;
    }
  }
  return best;
}

std::optional<std::size_t> SweepStatus::above(const Scalar& y) const {
  std::optional<std::size_t> best;
  int t = root_;
  while (t >= 0) {
    if (y_of(static_cast<std::size_t>(t)) > y) {
      best = static_cast<std::size_t>(t);
      t = nodes_[t].left;
    } else {
      t = nodes_[t].right;
    }
  }
  return best;
}

void SweepStatus::collect_range(int t, const Scalar* lo, const Scalar* hi, std::vector<std::size_t>& out) const {
  if (t < 0) return;
  const Scalar y = y_of(static_cast<std::size_t>(t));
  const bool ge_lo = !lo || y >= *lo;
  const bool le_hi = !hi || y <= *hi;
  if (ge_lo) collect_range(nodes_[t].left, lo, hi, out);
  if (ge_lo && le_hi) out.push_back(static_cast<std::size_t>(t));
  if (le_hi) collect_range(nodes_[t].right, lo, hi, out);
}

std::vector<std::size_t> SweepStatus::range(const Scalar& lo, const Scalar& hi) const {
  std::vector<std::size_t> out;
  collect_range(root_, &lo, &hi, out);
  return out;
}

std::vector<std::size_t> SweepStatus::at_or_above(const Scalar& y) const {
  std::vector<std::size_t> out;
  collect_range(root_, &y, nullptr, out);
  return out;
}

std::vector<std::size_t> SweepStatus::in_order() const {
  std::vector<std::size_t> out;
  collect(root_, out);
  return out;
}

bool SweepStatus::check_invariants() const {
  std::vector<std::size_t> order = in_order();
  std::vector<std::size_t> sorted = order;
  auto key_less = [this](std::size_t a, std::size_t b) {
    int c = cmp(y_of(a), y_of(b));
    if (c != 0) return c < 0;
    c = cmp(edges_[a].slope, edges_[b].slope);
    if (c != 0) return c < 0;
    return a < b;
  };
  std::sort(sorted.begin(), sorted.end(), key_less);
  if (sorted != order) return false;

  bool ok = true;
  auto recount = [&](auto&& self, int t) -> std::tuple<std::size_t, std::size_t, std::size_t> {
    if (t < 0) return {0, 0, 0};
    auto [ls, lu, ll] = self(self, nodes_[t].left);
    auto [rs, ru, rl] = self(self, nodes_[t].right);
    const bool up = edges_[static_cast<std::size_t>(t)].upper;
    std::size_t s = ls + rs + 1, u = lu + ru + (up ? 1 : 0), l = ll + rl + (up ? 0 : 1);
    if (nodes_[t].size != s || nodes_[t].upper != u || nodes_[t].lower != l) ok = false;
    if (nodes_[t].left >= 0 && nodes_[nodes_[t].left].priority > nodes_[t].priority) ok = false;
    if (nodes_[t].right >= 0 && nodes_[nodes_[t].right].priority > nodes_[t].priority) ok = false;
    return {s, u, l};
  };
  recount(recount, root_);
  return ok;
}

// ---------------------------------------------------------------------------
// The sweep

std::vector<SweepEdge> sweep_edges(std::span<const ConvexPolygon> polys) {
  std::vector<SweepEdge> edges;
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    const auto& v = polys[pi].vertices();
    if (v.size() < 3) continue;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2& a = v[i];
      const Point2& b = v[(i + 1) % v.size()];
      if (a.x == b.x) continue;
      SweepEdge e;
      // Counter-clockwise: the lower chain runs left to right.
      e.upper = b.x < a.x;
      e.left = e.upper ? b : a;
      e.right = e.upper ? a : b;
      e.slope = (e.right.y - e.left.y) / (e.right.x - e.left.x);
      e.polygon = pi;
      edges.push_back(std::move(e));
    }
  }
  return edges;
}

namespace {

// A vertical piece of a polygon at one abscissa: a vertical edge, or the
// polygon's rightmost vertex/edge.
struct VerticalFeature {
  Scalar lo;
  Scalar hi;
  std::size_t polygon;
};

struct AbscissaFeatures {
  std::vector<VerticalFeature> vertical_edges;
  std::vector<VerticalFeature> right_ends;
};

using Visitor = std::function<void(const Point2&, std::size_t count, const std::function<std::vector<std::size_t>()>& containing)>;

class PolygonSweep {
 public:
  PolygonSweep(std::span<const ConvexPolygon> polys, bool validate)
      : polys_(polys), edges_(sweep_edges(polys)), status_(edges_), validate_(validate) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      queue_.insert(Event{edges_[e].left, EventKind::EdgeStart, {e}});
      queue_.insert(Event{edges_[e].right, EventKind::EdgeEnd, {e}});
    }
    for (std::size_t pi = 0; pi < polys.size(); ++pi) {
      const auto& v = polys[pi].vertices();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        if (a.x == b.x && !(a.y == b.y)) {
          features_[a.x].vertical_edges.push_back({a.y < b.y ? a.y : b.y, a.y < b.y ? b.y : a.y, pi});
        }
      }
      VerticalFeature right{Scalar(0), Scalar(0), pi};
      bool first = true;
      for (const Point2& p : v) {
        if (p.x != polys[pi].xmax()) continue;
        if (first || p.y < right.lo) right.lo = p.y;
        if (first || p.y > right.hi) right.hi = p.y;
        first = false;
      }
      features_[polys[pi].xmax()].right_ends.push_back(std::move(right));
    }
  }

  SweepStats run(const Visitor& visit) {
    SweepStats stats;
    while (!queue_.empty()) {
      const Scalar x = queue_.begin()->point.x;
      status_.set_abscissa(x);

      // Pull every event at this abscissa; group starts by point.
      std::map<Scalar, std::vector<std::size_t>> starts_at;
      while (!queue_.empty() && queue_.begin()->point.x == x) {
        const Event& ev = *queue_.begin();
        auto& starts = starts_at[ev.point.y];
        if (ev.kind == EventKind::EdgeStart) starts.insert(starts.end(), ev.edges.begin(), ev.edges.end());
        if (ev.kind == EventKind::EdgeCrossing) ++stats.crossings;
        queue_.erase(queue_.begin());
      }

      // Remove everything through the event points, then reinsert what
      // continues past x together with the new edges, in just-right order.
      std::vector<std::vector<std::size_t>> removed;
      removed.reserve(starts_at.size());
      for (const auto& [y, starts] : starts_at) removed.push_back(status_.extract_at(y));
      std::size_t i = 0;
      for (const auto& [y, starts] : starts_at) {
        std::vector<std::size_t> block;
        for (std::size_t e : removed[i]) {
          if (edges_[e].right.x > x) block.push_back(e);
        }
        block.insert(block.end(), starts.begin(), starts.end());
        std::sort(block.begin(), block.end(), [this](std::size_t a, std::size_t b) {
          int c = cmp(edges_[a].slope, edges_[b].slope);
          return c != 0 ? c < 0 : a < b;
        });
        status_.insert_block(block, y);
        ++i;
      }
      if (validate_ && !status_.check_invariants()) stats.invariants_ok = false;

      // Evaluation points: the event points plus every place a sweep edge
      // meets a vertical edge at this abscissa.
      std::set<Scalar> ys;
      for (const auto& [y, starts] : starts_at) ys.insert(y);
      const AbscissaFeatures* here = nullptr;
      if (auto it = features_.find(x); it != features_.end()) here = &it->second;
      if (here) {
        for (const VerticalFeature& f : here->vertical_edges) {
          ys.insert(f.lo);
          ys.insert(f.hi);
          for (std::size_t e : status_.range(f.lo, f.hi)) ys.insert(edges_[e].y_at(x));
        }
      }

      for (const Scalar& y : ys) {
        std::size_t count = status_.count_upper_at_or_above(y) - status_.count_lower_above(y);
        if (here) {
          for (const VerticalFeature& f : here->right_ends) {
            if (f.lo <= y && y <= f.hi) ++count;
          }
        }
        const Point2 point{x, y};
        auto containing = [&]() { return containing_polygons(y, here); };
        visit(point, count, containing);
        ++stats.events;
      }

      // Newly adjacent pairs may cross further right.
      for (const auto& [y, starts] : starts_at) {
        auto lo = status_.below(y);
        auto hi = status_.above(y);
        std::vector<std::size_t> block = status_.range(y, y);
        if (block.empty()) {
          if (lo && hi) schedule_crossing(*lo, *hi, x);
        } else {
          if (lo) schedule_crossing(*lo, block.front(), x);
          if (hi) schedule_crossing(block.back(), *hi, x);
        }
      }
    }
    return stats;
  }

 private:
  std::vector<std::size_t> containing_polygons(const Scalar& y, const AbscissaFeatures* here) const {
    std::vector<char> upper(polys_.size(), 0), lower_above(polys_.size(), 0);
    for (std::size_t e : status_.at_or_above(y)) {
      if (edges_[e].upper) {
        upper[edges_[e].polygon] = 1;
      } else if (edges_[e].y_at(status_.abscissa()) > y) {
        lower_above[edges_[e].polygon] = 1;
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < polys_.size(); ++p) {
      if (upper[p] && !lower_above[p]) out.push_back(p);
    }
    if (here) {
      for (const VerticalFeature& f : here->right_ends) {
        if (f.lo <= y && y <= f.hi) out.push_back(f.polygon);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void schedule_crossing(std::size_t a, std::size_t b, const Scalar& x) {
    const SweepEdge& e = edges_[a];
    const SweepEdge& f = edges_[b];
    if (e.slope == f.slope) return;
    // e.y(t) = f.y(t)  =>  t = (f.left.y - e.left.y + e.slope*e.left.x - f.slope*f.left.x) / (e.slope - f.slope)
    Scalar t = (f.left.y - e.left.y + e.slope * e.left.x - f.slope * f.left.x) / (e.slope - f.slope);
    if (t <= x) return;
    if (t > e.right.x || t > f.right.x) return;
    std::vector<std::size_t> pair{std::min(a, b), std::max(a, b)};
    queue_.insert(Event{Point2{t, e.y_at(t)}, EventKind::EdgeCrossing, std::move(pair)});
  }

  std::span<const ConvexPolygon> polys_;
  std::vector<SweepEdge> edges_;
  SweepStatus status_;
  bool validate_;
  std::set<Event> queue_;
  std::map<Scalar, AbscissaFeatures> features_;
};

void require_positive_area(std::span<const ConvexPolygon> polys, const char* what) {
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].rank() != 2) {
      throw PreconditionError(std::string(what) + ": polygon " + std::to_string(i) + " has no interior");
    }
  }
}

}  // namespace

SweepStats sweep_event_points(std::span<const ConvexPolygon> polys, bool validate,
                              const std::function<void(const Point2&, std::size_t)>& visit) {
  require_positive_area(polys, "sweep_event_points");
  PolygonSweep sweep(polys, validate);
  return sweep.run([&visit](const Point2& p, std::size_t count, const auto&) { visit(p, count); });
}

StabPoint max_stab_point(std::span<const ConvexPolygon> polys) {
  if (polys.empty()) throw PreconditionError("max_stab_point: empty family");
  require_positive_area(polys, "max_stab_point");
  StabPoint best;
  bool have = false;
  PolygonSweep sweep(polys, false);
  sweep.run([&](const Point2& p, std::size_t count, const auto&) {
    if (!have || count > best.count) {
      best = StabPoint{p, count};
      have = true;
    }
  });
  return best;
}

std::size_t count_interval_pairs(std::span<const Interval> intervals) {
  // (coordinate, kind) with starts (0) before ends (1) at equal coordinates,
  // so touching closed intervals count as intersecting.
  std::vector<std::pair<const Scalar*, int>> events;
  events.reserve(2 * intervals.size());
  for (const Interval& iv : intervals) {
    events.emplace_back(&iv.lo, 0);
    events.emplace_back(&iv.hi, 1);
  }
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
    int c = cmp(*a.first, *b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  std::size_t active = 0;
  std::size_t total = 0;
  for (const auto& [at, kind] : events) {
    if (kind == 0) {
      total += active;
      ++active;
    } else {
      --active;
    }
  }
  return total;
}

SweepPairCount count_polygon_pairs_sweep(std::span<const ConvexPolygon> polys) {
  for (const ConvexPolygon& p : polys) {
    if (p.rank() != 2) return SweepPairCount{0, true};
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  PolygonSweep sweep(polys, false);
  sweep.run([&pairs](const Point2&, std::size_t count, const std::function<std::vector<std::size_t>()>& containing) {
    if (count < 2) return;
    std::vector<std::size_t> ids = containing();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) pairs.emplace(ids[i], ids[j]);
    }
  });
  return SweepPairCount{pairs.size(), false};
}

}  // namespace pqstab
