#include "pqstab/planar_hd.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pqstab/error.hpp"
#include "pqstab/sweepline.hpp"

namespace pqstab {

namespace {

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

bool any_pair_meets(std::span<const ConvexPolygon> family, std::span<const std::size_t> members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (intersects(family[members[i]], family[members[j]])) return true;
    }
  }
  return false;
}

// Is there a pair whose intersection has its lexmin on x = v.x but not at v?
bool has_rival_on_abscissa(std::span<const ConvexPolygon> family, std::span<const std::size_t> members,
                           const Point2& v) {
  const VerticalLine line{v.x};
  std::vector<std::pair<Interval, std::size_t>> traces;
  for (std::size_t m : members) {
    if (auto iv = trace_on_line(family[m], line)) traces.emplace_back(*iv, m);
  }
  std::sort(traces.begin(), traces.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  for (std::size_t i = 0; i < traces.size(); ++i) {
    for (std::size_t j = i + 1; j < traces.size() && traces[j].first.lo <= traces[i].first.hi; ++j) {
      auto region = intersect_pair(family[traces[i].second], family[traces[j].second]);
      if (!region) continue;
      const Point2& m = region->lexmin();
      if (m.x == v.x && !(m == v)) return true;
    }
  }
  return false;
}

StabHooks<Point2> planar_hooks(std::span<const ConvexPolygon> family) {
  StabHooks<Point2> hooks;
  hooks.own_min = [family](std::size_t s) { return family[s].lexmin(); };
  hooks.contains = [family](std::size_t s, const Point2& a) { return contains_point(family[s], a); };
  return hooks;
}

}  // namespace

std::size_t max_vertex_count(std::span<const ConvexPolygon> family) {
  std::size_t best = 0;
  for (const ConvexPolygon& p : family) best = std::max(best, p.size());
  return best;
}

std::optional<Point2> xstar_bruteforce(std::span<const ConvexPolygon> family, std::span<const std::size_t> members) {
  std::optional<Point2> best;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      auto region = intersect_pair(family[members[i]], family[members[j]]);
      if (!region) continue;
      if (!best || *best < region->lexmin()) best = region->lexmin();
    }
  }
  return best;
}

std::optional<Point2> xstar_bruteforce(std::span<const ConvexPolygon> family) {
  const auto members = all_indices(family.size());
  return xstar_bruteforce(family, members);
}

bool decide_xstar_right(std::span<const ConvexPolygon> family, std::span<const std::size_t> members,
                        const Scalar& t, std::optional<int> promise_p) {
  std::vector<std::size_t> right, crossing;
  for (std::size_t m : members) {
    const ConvexPolygon& poly = family[m];
    if (poly.xmax() <= t) continue;  // every intersection with it reaches x <= t
    if (poly.xmin() > t) {
      right.push_back(m);
    } else {
      crossing.push_back(m);
    }
  }
  if (promise_p && *promise_p >= 2 && right.size() >= static_cast<std::size_t>(*promise_p)) return true;

  for (std::size_t i = 0; i < right.size(); ++i) {
    for (std::size_t j = i + 1; j < right.size(); ++j) {
      if (intersects(family[right[i]], family[right[j]])) return true;
    }
    for (std::size_t c : crossing) {
      if (intersects(family[right[i]], family[c])) return true;
    }
  }
  if (crossing.size() < 2) return false;

  std::vector<ConvexPolygon> sub;
  sub.reserve(crossing.size());
  for (std::size_t c : crossing) sub.push_back(family[c]);
  return right_intersection_decide(sub, VerticalLine{t});
}

bool decide_xstar_right(std::span<const ConvexPolygon> family, const Scalar& t, std::optional<int> promise_p) {
  const auto members = all_indices(family.size());
  return decide_xstar_right(family, members, t, promise_p);
}

std::optional<std::pair<std::size_t, std::size_t>> find_right_pair(std::span<const ConvexPolygon> family,
                                                                   const Scalar& t) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].xmax() <= t) continue;
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (family[j].xmax() <= t) continue;
      auto region = intersect_pair(family[i], family[j]);
      if (region && region->xmin() > t) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

bool right_intersection_decide(std::span<const ConvexPolygon> family, const VerticalLine& l) {
  std::vector<Interval> traces;
  std::vector<ConvexPolygon> clipped;
  traces.reserve(family.size());
  clipped.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto trace = trace_on_line(family[i], l);
    if (!trace) {
      throw PreconditionError("right_intersection_decide: set " + std::to_string(i) + " does not meet x = " +
                              to_string(l.x0));
    }
    traces.push_back(*trace);
    clipped.push_back(*clip_right(family[i], l));
  }
  // Pairs meeting on the line are a subset of pairs meeting right of it
  // (inclusive); any surplus is a pair meeting only strictly to the right.
  return count_pair_intersections(clipped) > count_interval_pairs(traces);
}

std::size_t count_pair_intersections(std::span<const ConvexPolygon> polys) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (intersects(polys[i], polys[j])) ++count;
    }
  }
  return count;
}

XStarResult xstar_randomized(std::span<const ConvexPolygon> family, std::span<const std::size_t> members,
                             std::optional<PQParams> promise, std::uint64_t seed, const OptimizerConfig& base_cfg) {
  using Problem = std::vector<std::size_t>;
  OptimizerConfig cfg = base_cfg;
  cfg.seed = seed;
  const std::optional<int> promise_p = promise ? std::optional<int>(promise->p) : std::nullopt;

  auto size = [](const Problem& p) { return p.size(); };
  // Three balanced parts; each subproblem drops one of them, so every pair of
  // sets survives together in some subproblem.
  auto split = [](const Problem& p) {
    const std::size_t n = p.size();
    const std::size_t cut[4] = {0, n / 3, 2 * n / 3, n};
    std::vector<Problem> out(3);
    for (std::size_t drop = 0; drop < 3; ++drop) {
      for (std::size_t part = 0; part < 3; ++part) {
        if (part == drop) continue;
        out[drop].insert(out[drop].end(), p.begin() + static_cast<std::ptrdiff_t>(cut[part]),
                         p.begin() + static_cast<std::ptrdiff_t>(cut[part + 1]));
      }
      std::sort(out[drop].begin(), out[drop].end());
    }
    return out;
  };
  auto decide = [&](const Problem& p, const std::optional<Point2>& incumbent) {
    if (!incumbent) {
      if (promise_p && *promise_p >= 2 && p.size() >= static_cast<std::size_t>(*promise_p)) return true;
      return any_pair_meets(family, p);
    }
    return decide_xstar_right(family, p, incumbent->x, promise_p);
  };
  auto solve_base = [&](const Problem& p) { return xstar_bruteforce(family, p); };

  XStarResult result;
  Problem all(members.begin(), members.end());
  result.point = optimize<Point2>(all, size, split, decide, solve_base, cfg, &result.trace);
  // The decider only sees abscissae, so a rival on x*'s vertical line could
  // have been skipped; redo such cases exhaustively.
  if (result.point && has_rival_on_abscissa(family, members, *result.point)) {
    result.point = xstar_bruteforce(family, members);
    result.tie_fallback = true;
  }
  return result;
}

XStarResult xstar_randomized(std::span<const ConvexPolygon> family, std::optional<PQParams> promise,
                             std::uint64_t seed) {
  const auto members = all_indices(family.size());
  return xstar_randomized(family, members, promise, seed);
}

std::vector<Point2> base_case_stab(std::span<const ConvexPolygon> family, std::span<const std::size_t> members,
                                   int k) {
  if (k < 1) throw PreconditionError("base_case_stab: k must be >= 1");
  const StabHooks<Point2> hooks = planar_hooks(family);
  const bool solid = std::all_of(members.begin(), members.end(), [&](std::size_t m) { return family[m].rank() == 2; });
  if (k > 2 && members.size() > 8 && solid) {
    std::vector<ConvexPolygon> sub;
    sub.reserve(members.size());
    for (std::size_t m : members) sub.push_back(family[m]);
    const StabPoint best = max_stab_point(sub);
    if (best.count < static_cast<std::size_t>(k)) {
      throw PromiseViolation("base case: no point lies in " + std::to_string(k) + " sets (best reaches " +
                             std::to_string(best.count) + ")");
    }
    return complete_base_case(members, best.point, hooks);
  }

  std::vector<Point2> candidates;
  if (k == 1) {
    for (std::size_t m : members) candidates.push_back(family[m].lexmin());
  } else {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (auto region = intersect_pair(family[members[i]], family[members[j]])) candidates.push_back(region->lexmin());
      }
    }
  }
  return base_case_from_candidates(members, k, candidates, hooks, std::less<Point2>{});
}

std::vector<Point2> base_case_stab(std::span<const ConvexPolygon> family, int k) {
  const auto members = all_indices(family.size());
  return base_case_stab(family, members, k);
}

StabbingResult<Point2> stab_planar(std::span<const ConvexPolygon> family, const PQParams& pq, XStarMode mode,
                                   std::uint64_t seed) {
  if (pq.h != 3) throw PreconditionError("stab_planar: the plane has Helly number 3");
  StabHooks<Point2> hooks = planar_hooks(family);
  std::size_t decide_calls = 0;
  std::size_t tie_fallbacks = 0;
  std::uint64_t round = 0;
  hooks.pivot = [&](std::span<const std::size_t> active, const PQParams& level) -> std::optional<Point2> {
    if (mode == XStarMode::BruteForce) return xstar_bruteforce(family, active);
    XStarResult r = xstar_randomized(family, active, level, seed + 0x9e3779b97f4a7c15ULL * round++);
    decide_calls += r.trace.decide_calls;
    tie_fallbacks += r.tie_fallback ? 1 : 0;
    return r.point;
  };
  hooks.base_case = [&](std::span<const std::size_t> active, int k) { return base_case_stab(family, active, k); };

  StabbingResult<Point2> result = run_stabbing(family.size(), pq, hooks);
  if (mode == XStarMode::Randomized) {
    result.statistics["decide_calls"] = decide_calls;
    result.statistics["tie_fallbacks"] = tie_fallbacks;
  }
  return result;
}

}  // namespace pqstab
