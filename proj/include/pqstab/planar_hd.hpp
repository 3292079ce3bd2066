#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pqstab/chan_optimize.hpp"
#include "pqstab/geometry.hpp"
#include "pqstab/pq_params.hpp"
#include "pqstab/stabbing.hpp"

namespace pqstab {

// A planar family; positions are the set indices reported in results.
using Family = std::vector<ConvexPolygon>;

std::size_t max_vertex_count(std::span<const ConvexPolygon> family);

// x*(F): the lexicographic maximum, over intersecting pairs, of the lexmin of
// the pair's intersection. nullopt when no two sets meet. The `members`
// overloads restrict F to the listed indices.
std::optional<Point2> xstar_bruteforce(std::span<const ConvexPolygon> family);
std::optional<Point2> xstar_bruteforce(std::span<const ConvexPolygon> family, std::span<const std::size_t> members);

// Does some pair meet with its whole intersection inside {x > t}?
// With `promise_p`, p sets strictly right of t are taken to contain such a
// pair, which is only sound when the family has a (p,q)-property.
bool decide_xstar_right(std::span<const ConvexPolygon> family, const Scalar& t,
                        std::optional<int> promise_p = std::nullopt);
bool decide_xstar_right(std::span<const ConvexPolygon> family, std::span<const std::size_t> members,
                        const Scalar& t, std::optional<int> promise_p = std::nullopt);

// A pair (original indices) witnessing decide_xstar_right, found by direct
// search.
std::optional<std::pair<std::size_t, std::size_t>> find_right_pair(std::span<const ConvexPolygon> family,
                                                                   const Scalar& t);

// All sets must meet `l`; throws PreconditionError naming the first that
// does not. True iff some pair meets only strictly right of `l`.
bool right_intersection_decide(std::span<const ConvexPolygon> family, const VerticalLine& l);

// Unordered pairs with non-empty closed intersection.
std::size_t count_pair_intersections(std::span<const ConvexPolygon> polys);

struct XStarResult {
  std::optional<Point2> point;
  // Set when another candidate shared x*'s abscissa and the answer was
  // recomputed by brute force.
  bool tie_fallback = false;
  OptimizerTrace trace;
};

XStarResult xstar_randomized(std::span<const ConvexPolygon> family, std::optional<PQParams> promise,
                             std::uint64_t seed);
XStarResult xstar_randomized(std::span<const ConvexPolygon> family, std::span<const std::size_t> members,
                             std::optional<PQParams> promise, std::uint64_t seed,
                             const OptimizerConfig& base_cfg = OptimizerConfig{});

enum class XStarMode { BruteForce, Randomized };

StabbingResult<Point2> stab_planar(std::span<const ConvexPolygon> family, const PQParams& pq,
                                   XStarMode mode = XStarMode::BruteForce, std::uint64_t seed = 0);

// |members| - k + 1 points stabbing the members, given that some k of them
// share a point; throws PromiseViolation otherwise.
std::vector<Point2> base_case_stab(std::span<const ConvexPolygon> family, int k);
std::vector<Point2> base_case_stab(std::span<const ConvexPolygon> family, std::span<const std::size_t> members, int k);

}  // namespace pqstab
