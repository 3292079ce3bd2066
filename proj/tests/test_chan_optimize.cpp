#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "pqstab/chan_optimize.hpp"
#include "pqstab/error.hpp"
#include "pqstab/oracles.hpp"
#include "pqstab/planar_hd.hpp"
#include "support/reference.hpp"

using namespace pqstab;

namespace {

using List = std::vector<long>;

std::size_t list_size(const List& l) { return l.size(); }

// Three overlapping two-thirds sublists.
std::vector<List> split_thirds(const List& l) {
  const std::size_t n = l.size();
  const std::size_t cut[4] = {0, n / 3, 2 * n / 3, n};
  std::vector<List> out(3);
  for (std::size_t drop = 0; drop < 3; ++drop) {
    for (std::size_t part = 0; part < 3; ++part) {
      if (part != drop) out[drop].insert(out[drop].end(), l.begin() + cut[part], l.begin() + cut[part + 1]);
    }
  }
  return out;
}

bool exceeds(const List& l, const std::optional<long>& t) {
  return std::any_of(l.begin(), l.end(), [&](long v) { return !t || v > *t; });
}

std::optional<long> direct_max(const List& l) {
  if (l.empty()) return std::nullopt;
  return *std::max_element(l.begin(), l.end());
}

}  // namespace

TEST(Optimize, BaseSizeReturnsSolverResultVerbatim) {
  OptimizerTrace trace;
  List l{4, 9, 2};
  auto v = optimize<long>(l, list_size, split_thirds, exceeds, [](const List&) { return std::optional<long>(-7); },
                          OptimizerConfig{}, &trace);
  EXPECT_EQ(v, -7);
  EXPECT_EQ(count_oracle_calls(trace).decide_calls, 0u);
  EXPECT_EQ(trace.base_calls, 1u);
}

TEST(Optimize, SingleLevelMakesAtMostThreeDecisions) {
  OptimizerTrace trace;
  List l{1, 5, 3, 8, 2, 7, 6, 4, 0, 9, 11, 10};
  OptimizerConfig cfg;
  cfg.base_size = 8;
  auto v = optimize<long>(l, list_size, split_thirds, exceeds, direct_max, cfg, &trace);
  EXPECT_EQ(v, 11);
  EXPECT_EQ(trace.max_depth, 1u);
  EXPECT_LE(count_oracle_calls(trace).decide_calls, 3u);
}

TEST(Optimize, ListMaximumMatchesDirectMaximum) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    List l(rng() % 200);
    for (auto& v : l) v = static_cast<long>(rng() % 1000) - 500;
    OptimizerConfig cfg;
    cfg.seed = rng();
    ASSERT_EQ(optimize<long>(l, list_size, split_thirds, exceeds, direct_max, cfg), direct_max(l));
  }
}

TEST(Optimize, SeedIndependentAndEqualToExhaustiveRecursion) {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 20; ++it) {
    List l(30 + rng() % 50);
    for (auto& v : l) v = static_cast<long>(rng() % 100);
    // Recursing into every part regardless of the decider.
    auto all_parts = [](const List&, const std::optional<long>&) { return true; };
    const auto reference_value = optimize<long>(l, list_size, split_thirds, all_parts, direct_max, OptimizerConfig{});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      OptimizerConfig cfg;
      cfg.seed = seed;
      ASSERT_EQ(optimize<long>(l, list_size, split_thirds, exceeds, direct_max, cfg), reference_value);
    }
  }
}

TEST(Optimize, SubproblemSizesRespectAlpha) {
  OptimizerTrace trace;
  List l(100, 1);
  optimize<long>(l, list_size, split_thirds, [](const List&, const std::optional<long>&) { return true; }, direct_max,
                 OptimizerConfig{}, &trace);
  for (std::size_t level = 1; level < trace.sizes_per_level.size(); ++level) {
    const std::size_t parent = *std::max_element(trace.sizes_per_level[level - 1].begin(),
                                                 trace.sizes_per_level[level - 1].end());
    for (std::size_t s : trace.sizes_per_level[level]) ASSERT_LE(s, (2 * parent + 2) / 3);
  }
}

TEST(Optimize, RejectsSplitThatDoesNotShrink) {
  List l(20, 0);
  auto bad_split = [](const List& x) { return std::vector<List>{x, x}; };
  EXPECT_THROW(optimize<long>(l, list_size, bad_split, exceeds, direct_max, OptimizerConfig{}), PreconditionError);
  OptimizerConfig cfg;
  cfg.r = 1;
  EXPECT_THROW(optimize<long>(l, list_size, split_thirds, exceeds, direct_max, cfg), PreconditionError);
}

TEST(Optimize, PlanarSplitKeepsEveryPairTogetherSomewhere) {
  for (std::size_t n = 2; n <= 40; ++n) {
    List l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<long>(i);
    const auto parts = split_thirds(l);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        bool together = std::any_of(parts.begin(), parts.end(), [&](const List& p) {
          return std::count(p.begin(), p.end(), static_cast<long>(a)) && std::count(p.begin(), p.end(), static_cast<long>(b));
        });
        ASSERT_TRUE(together) << n << ": " << a << "," << b;
      }
    }
  }
}

TEST(Optimize, PlanarXStarOfFortyPolygons) {
  const auto family = gen_general_position_family(40, 33);
  const auto expected = reference::xstar(family);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = xstar_randomized(family, std::nullopt, seed);
    ASSERT_EQ(r.point, expected);
    EXPECT_GT(r.trace.decide_calls, 0u);
  }
}
