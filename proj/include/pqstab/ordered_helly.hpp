#pragma once

// Stabbing for abstract Ordered-Helly systems. A system supplies a total
// order on its ground set and, for at most h-1 of its sets, the minimum of
// their intersection; the algorithm never needs larger intersections.

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqstab/combinatorics.hpp"
#include "pqstab/error.hpp"
#include "pqstab/pq_params.hpp"
#include "pqstab/stabbing.hpp"

namespace pqstab {

template <class S>
concept HellySystem = requires(const S& sys, const typename S::Set& set, const typename S::Element& a,
                               std::span<const typename S::Set* const> sets) {
  { sys.helly_number() } -> std::convertible_to<int>;
  { sys.precedes_or_equal(a, a) } -> std::convertible_to<bool>;
  // Arity 1..h-1; nullopt when the intersection is empty.
  { sys.min_of_intersection(sets) } -> std::same_as<std::optional<typename S::Element>>;
  { sys.contains(set, a) } -> std::convertible_to<bool>;
  { sys.complexity(set) } -> std::convertible_to<std::size_t>;
};

// Systems that can also intersect arbitrarily many sets (test harness only).
template <class S>
concept FullyIntersectableSystem =
    HellySystem<S> && requires(const S& sys, std::span<const typename S::Set* const> sets) {
      { sys.min_of_full_intersection(sets) } -> std::same_as<std::optional<typename S::Element>>;
    };

// Oracle usage for one invocation: calls and the summed complexity #S of the
// sets handed to the intersection oracle.
struct OracleCost {
  std::size_t calls = 0;
  std::size_t complexity = 0;
};

inline bool admissible_generic(int h, int p, int q) { return admissible(h, p, q); }

inline std::pair<int, int> reduce_pq_generic(int h, int p, int q) {
  const PQParams r = reduce_pq(PQParams{p, q, h});
  return {r.p, r.q};
}

namespace detail {

template <HellySystem S>
std::optional<typename S::Element> min_of(const S& sys, std::span<const typename S::Set> family,
                                          std::span<const std::size_t> members, std::span<const std::size_t> pick,
                                          OracleCost* cost) {
  std::vector<const typename S::Set*> sets;
  sets.reserve(pick.size());
  for (std::size_t i : pick) {
    sets.push_back(&family[members[i]]);
    if (cost) cost->complexity += sys.complexity(family[members[i]]);
  }
  if (cost) ++cost->calls;
  return sys.min_of_intersection(std::span<const typename S::Set* const>(sets));
}

template <HellySystem S>
StabHooks<typename S::Element> membership_hooks(const S& sys, std::span<const typename S::Set> family,
                                                OracleCost* cost) {
  StabHooks<typename S::Element> hooks;
  hooks.contains = [&sys, family](std::size_t s, const typename S::Element& e) { return sys.contains(family[s], e); };
  hooks.own_min = [&sys, family, cost](std::size_t s) {
    const std::size_t one[1] = {0};
    const std::size_t member[1] = {s};
    auto m = min_of(sys, family, std::span<const std::size_t>(member), std::span<const std::size_t>(one), cost);
    if (!m) throw PreconditionError("set " + std::to_string(s) + " is empty");
    return *m;
  };
  return hooks;
}

}  // namespace detail

// b*(F): the ⪯-max over (h-1)-subfamilies of the ⪯-min of their
// intersection; nullopt when every such intersection is empty.
template <HellySystem S>
std::optional<typename S::Element> bstar(const S& sys, std::span<const typename S::Set> family,
                                         std::span<const std::size_t> members, OracleCost* cost = nullptr) {
  const std::size_t arity = static_cast<std::size_t>(sys.helly_number() - 1);
  if (members.size() < arity) {
    throw PreconditionError("bstar: needs at least " + std::to_string(arity) + " sets, got " +
                            std::to_string(members.size()));
  }
  std::optional<typename S::Element> best;
  for_each_combination(members.size(), arity, [&](std::span<const std::size_t> pick) {
    auto m = detail::min_of(sys, family, members, pick, cost);
    if (m && (!best || !sys.precedes_or_equal(*m, *best))) best = std::move(m);
    return true;
  });
  return best;
}

template <HellySystem S>
std::optional<typename S::Element> bstar(const S& sys, std::span<const typename S::Set> family) {
  std::vector<std::size_t> members(family.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  return bstar(sys, family, std::span<const std::size_t>(members));
}

// |members| - k + 1 elements stabbing the members, given that some k of them
// share an element. Throws PromiseViolation otherwise.
template <HellySystem S>
std::vector<typename S::Element> base_case_stab_generic(const S& sys, std::span<const typename S::Set> family,
                                                        std::span<const std::size_t> members, int k,
                                                        OracleCost* cost = nullptr) {
  if (k < 1) throw PreconditionError("base_case_stab_generic: k must be >= 1");
  using Element = typename S::Element;
  const std::size_t arity = std::min<std::size_t>(static_cast<std::size_t>(k), sys.helly_number() - 1);
  std::vector<Element> candidates;
  for_each_combination(members.size(), arity, [&](std::span<const std::size_t> pick) {
    if (auto m = detail::min_of(sys, family, members, pick, cost)) candidates.push_back(std::move(*m));
    return true;
  });
  const StabHooks<Element> hooks = detail::membership_hooks(sys, family, cost);
  auto less = [&sys](const Element& a, const Element& b) { return !sys.precedes_or_equal(b, a); };
  return base_case_from_candidates(members, k, candidates, hooks, less);
}

template <HellySystem S>
std::vector<typename S::Element> base_case_stab_generic(const S& sys, std::span<const typename S::Set> family, int k) {
  std::vector<std::size_t> members(family.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  return base_case_stab_generic(sys, family, std::span<const std::size_t>(members), k);
}

template <HellySystem S>
StabbingResult<typename S::Element> stab_generic(const S& sys, std::span<const typename S::Set> family, int p, int q) {
  using Element = typename S::Element;
  OracleCost cost;
  StabHooks<Element> hooks = detail::membership_hooks(sys, family, &cost);
  hooks.pivot = [&](std::span<const std::size_t> active, const PQParams&) { return bstar(sys, family, active, &cost); };
  hooks.base_case = [&](std::span<const std::size_t> active, int k) {
    return base_case_stab_generic(sys, family, active, k, &cost);
  };
  StabbingResult<Element> result = run_stabbing(family.size(), PQParams{p, q, sys.helly_number()}, hooks);
  result.statistics["oracle_calls"] = cost.calls;
  result.statistics["oracle_complexity"] = cost.complexity;
  std::size_t total = 0;
  for (const auto& s : family) total += sys.complexity(s);
  result.statistics["family_complexity"] = total;
  return result;
}

// Checks on a concrete family that the ⪯-min of the whole intersection is
// already the ⪯-min of some h-1 of the sets. Precondition: |F| >= h and the
// intersection is non-empty.
template <FullyIntersectableSystem S>
bool check_lemma_sysmin(const S& sys, std::span<const typename S::Set> family) {
  const std::size_t arity = static_cast<std::size_t>(sys.helly_number() - 1);
  if (family.size() < arity + 1) throw PreconditionError("check_lemma_sysmin: needs at least h sets");
  std::vector<const typename S::Set*> all;
  for (const auto& s : family) all.push_back(&s);
  const auto target = sys.min_of_full_intersection(std::span<const typename S::Set* const>(all));
  if (!target) throw PreconditionError("check_lemma_sysmin: the family has empty intersection");
  std::vector<std::size_t> members(family.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  return !for_each_combination(family.size(), arity, [&](std::span<const std::size_t> pick) {
    auto m = detail::min_of(sys, family, std::span<const std::size_t>(members), pick, nullptr);
    return !(m && *m == *target);
  });
}

}  // namespace pqstab
