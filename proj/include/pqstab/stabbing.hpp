#pragma once

// The removal loop shared by the planar and the abstract stabbing
// algorithms: reduce (p, q), take the pivot element, drop the sets it
// stabs, descend to (p-h+1, q-h+2), and finish with the small base case.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pqstab/error.hpp"
#include "pqstab/pq_params.hpp"

namespace pqstab {

template <class Element>
struct StabbingResult {
  std::vector<Element> points;
  // coverage[i] lists every set (original index) containing points[i].
  std::vector<std::vector<std::size_t>> coverage;
  int budget = 0;
  std::vector<PQParams> reduction_trail;
  // Non-empty only when the input broke the (p,q) promise.
  std::vector<std::size_t> uncovered;
  bool promise_violated = false;
  std::string diagnostic;
  std::map<std::string, std::size_t> statistics;

  bool ok() const { return uncovered.empty() && points.size() <= static_cast<std::size_t>(budget); }
};

template <class Element>
struct StabHooks {
  // Pivot of the active subfamily: the ⪯-max over all (h-1)-subfamilies of
  // the ⪯-min of their intersection, or nullopt if all are empty. `level` is
  // the reduced pair the active sets are promised to satisfy.
  std::function<std::optional<Element>(std::span<const std::size_t> active, const PQParams& level)> pivot;
  // |active| - k + 1 elements stabbing the active sets, given that some k of
  // them share an element. Throws PromiseViolation otherwise.
  std::function<std::vector<Element>(std::span<const std::size_t> active, int k)> base_case;
  std::function<Element(std::size_t set)> own_min;
  std::function<bool(std::size_t set, const Element&)> contains;
};

namespace detail {

template <class Element>
void fill_greedily(std::span<const std::size_t> active, std::size_t limit, const StabHooks<Element>& hooks,
                   std::vector<Element>& points) {
  for (std::size_t s : active) {
    if (points.size() >= limit) return;
    bool stabbed = std::any_of(points.begin(), points.end(), [&](const Element& e) { return hooks.contains(s, e); });
    if (!stabbed) points.push_back(hooks.own_min(s));
  }
}

}  // namespace detail

template <class Element>
StabbingResult<Element> run_stabbing(std::size_t n, const PQParams& pq, const StabHooks<Element>& hooks) {
  if (!admissible(pq)) {
    throw PreconditionError("stabbing: inadmissible pair p=" + std::to_string(pq.p) + " q=" + std::to_string(pq.q) +
                            " h=" + std::to_string(pq.h));
  }
  StabbingResult<Element> result;
  result.budget = pq.budget();
  const std::size_t budget = static_cast<std::size_t>(result.budget);

  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  PQParams cur = pq;

  auto violated = [&result](std::string why) {
    result.promise_violated = true;
    if (result.diagnostic.empty()) result.diagnostic = std::move(why);
  };

  while (!active.empty()) {
    if (active.size() < static_cast<std::size_t>(cur.p)) {
      const long long slack = static_cast<long long>(active.size()) - (cur.p - cur.q);
      const int k = static_cast<int>(std::max<long long>(1, slack));
      std::vector<Element> pts;
      try {
        pts = hooks.base_case(active, k);
        ++result.statistics["base_case_calls"];
      } catch (const PromiseViolation& e) {
        violated(e.what());
      }
      const std::size_t room = budget - result.points.size();
      if (pts.size() > room) {
        violated("base case needed " + std::to_string(pts.size()) + " elements with " + std::to_string(room) + " left");
        pts.resize(room);
      }
      result.points.insert(result.points.end(), pts.begin(), pts.end());
      if (result.promise_violated) {
        std::erase_if(active, [&](std::size_t s) {
          return std::any_of(result.points.begin(), result.points.end(),
                             [&](const Element& e) { return hooks.contains(s, e); });
        });
        detail::fill_greedily(std::span<const std::size_t>(active), budget, hooks, result.points);
      }
      break;
    }

    cur = reduce_pq(cur);
    result.reduction_trail.push_back(cur);

    std::optional<Element> pivot = hooks.pivot(active, cur);
    ++result.statistics["pivots"];
    if (!pivot) {
      violated("no " + std::to_string(cur.h - 1) + "-subfamily of the remaining " + std::to_string(active.size()) +
               " sets intersects");
      detail::fill_greedily(std::span<const std::size_t>(active), budget, hooks, result.points);
      break;
    }
    result.points.push_back(*pivot);
    std::erase_if(active, [&](std::size_t s) { return hooks.contains(s, *pivot); });

    if (cur.p == cur.q) {
      if (!active.empty()) {
        violated("pivot of a Helly-type level left " + std::to_string(active.size()) + " sets unstabbed");
      }
      break;
    }
    cur = PQParams{cur.p - cur.h + 1, cur.q - cur.h + 2, cur.h};
  }

  result.coverage.resize(result.points.size());
  std::vector<char> covered(n, 0);
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    for (std::size_t s = 0; s < n; ++s) {
      if (hooks.contains(s, result.points[i])) {
        result.coverage[i].push_back(s);
        covered[s] = 1;
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!covered[s]) result.uncovered.push_back(s);
  }
  if (!result.uncovered.empty()) violated("some sets are not stabbed");
  return result;
}

template <class Element>
std::vector<Element> complete_base_case(std::span<const std::size_t> active, const Element& first,
                                        const StabHooks<Element>& hooks) {
  std::vector<Element> points{first};
  detail::fill_greedily(active, active.size() + 1, hooks, points);
  return points;
}

// Picks, among `candidates`, the one contained in the most active sets
// (ties: the ⪯-smallest), requires it to reach k, then stabs every active set
// it misses by that set's own ⪯-min, skipping sets already hit.
template <class Element, class Less>
std::vector<Element> base_case_from_candidates(std::span<const std::size_t> active, int k,
                                               const std::vector<Element>& candidates, const StabHooks<Element>& hooks,
                                               Less less) {
  const Element* best = nullptr;
  std::size_t best_count = 0;
  for (const Element& c : candidates) {
    std::size_t count = 0;
    for (std::size_t s : active) count += hooks.contains(s, c) ? 1 : 0;
    if (!best || count > best_count || (count == best_count && less(c, *best))) {
      best = &c;
      best_count = count;
    }
  }
  if (!best || best_count < static_cast<std::size_t>(k)) {
    throw PromiseViolation("base case: no candidate lies in " + std::to_string(k) + " sets (best reaches " +
                           std::to_string(best_count) + ")");
  }
  return complete_base_case(active, *best, hooks);
}

}  // namespace pqstab
