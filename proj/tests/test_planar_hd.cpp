#include <gtest/gtest.h>

#include <random>

#include "pqstab/error.hpp"
#include "pqstab/oracles.hpp"
#include "pqstab/planar_hd.hpp"
#include "pqstab/sweepline.hpp"
#include "support/reference.hpp"

using namespace pqstab;
using reference::box;
using reference::pt;
using reference::q;
using reference::qbox;

namespace {

Family reduction_family(const std::vector<long>& a) {
  std::vector<Scalar> s;
  for (long v : a) s.push_back(q(v));
  return gen_reduction_instance(s).first;
}

Family random_squares(std::mt19937_64& rng, std::size_t n, long span) {
  Family f;
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar x = q(static_cast<long>(rng() % (span * 8)), 8);
    const Scalar y = q(static_cast<long>(rng() % (span * 8)), 8);
    const Scalar s = q(static_cast<long>(8 + rng() % 64), 8);
    f.push_back(qbox(x, y, x + s, y + s));
  }
  return f;
}

// Every output point stabs some set the earlier points missed.
bool each_point_is_useful(const StabbingResult<Point2>& r) {
  std::set<std::size_t> seen;
  for (const auto& cov : r.coverage) {
    bool fresh = false;
    for (std::size_t s : cov) fresh |= seen.insert(s).second;
    if (!fresh) return false;
  }
  return true;
}

}  // namespace

TEST(ReducePQ, Examples) {
  EXPECT_EQ(reduce_pq({4, 4, 3}), (PQParams{3, 3, 3}));
  EXPECT_EQ(reduce_pq({7, 5, 3}), (PQParams{7, 5, 3}));
  EXPECT_EQ(reduce_pq({5, 4, 3}), (PQParams{5, 4, 3}));
  EXPECT_THROW(reduce_pq({4, 3, 3}), PreconditionError);
  EXPECT_THROW(reduce_pq({6, 4, 3}), PreconditionError);
  EXPECT_THROW(reduce_pq({2, 2, 3}), PreconditionError);
}

TEST(ReducePQ, OutputAdmissibleAndPreservesDifference) {
  for (int h = 2; h <= 6; ++h) {
    for (int p = h; p <= 40; ++p) {
      for (int q = h; q <= p; ++q) {
        if (!admissible(h, p, q)) continue;
        const PQParams r = reduce_pq({p, q, h});
        ASSERT_TRUE(admissible(r)) << h << " " << p << " " << q;
        if (p == q) {
          ASSERT_EQ(r, (PQParams{h, h, h}));
        } else {
          ASSERT_EQ(r.p - r.q, p - q);
          ASSERT_EQ((h - 2) * r.p, (h - 1) * (r.q - 1) - 1) << h << " " << p << " " << q;
        }
        ASSERT_EQ(reduce_pq(r), r);
      }
    }
  }
}

TEST(XStarBruteforce, Examples) {
  Family f{box(0, 0, 1, 1), qbox(q(1, 2), q(1, 2), q(3, 2), q(3, 2)), box(2, 2, 3, 3)};
  EXPECT_EQ(xstar_bruteforce(f), (Point2{q(1, 2), q(1, 2)}));
  Family same{box(0, 0, 1, 1), box(0, 0, 1, 1)};
  EXPECT_EQ(xstar_bruteforce(same), pt(0, 0));
  Family apart{box(0, 0, 1, 1), box(3, 3, 4, 4)};
  EXPECT_FALSE(xstar_bruteforce(apart));
}

TEST(XStarBruteforce, RandomSquaresMatchReference) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 50; ++it) {
    const Family f = random_squares(rng, 10, 20);
    ASSERT_EQ(xstar_bruteforce(f), reference::xstar(f));
  }
}

TEST(DecideXStarRight, Examples) {
  EXPECT_TRUE(decide_xstar_right(reduction_family({1, 0, 0}), q(0)));
  Family two{box(0, 0, 1, 1), qbox(q(1, 2), q(1, 2), q(3, 2), q(3, 2))};
  EXPECT_FALSE(decide_xstar_right(two, q(3, 4)));
  EXPECT_TRUE(decide_xstar_right(two, q(1, 4)));
}

TEST(DecideXStarRight, RandomMatchesPairwiseReference) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 150; ++it) {
    const Family f = it % 2 ? random_squares(rng, 20, 25) : gen_general_position_family(20, rng(), 40);
    const Scalar t = q(static_cast<long>(rng() % 400), 8);
    ASSERT_EQ(decide_xstar_right(f, t), reference::right_pair_exists(f, t)) << "t = " << t;
    const auto x = xstar_bruteforce(f);
    ASSERT_EQ(decide_xstar_right(f, t), x && x->x > t);
  }
}

TEST(DecideXStarRight, PromiseShortcutAgreesOnPromisedFamilies) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Family f = gen_planar_instance(12, 5, 4, seed, Scheme::Cluster);
    for (long t = -10; t < 450; t += 23) {
      ASSERT_EQ(decide_xstar_right(f, q(t), 5), decide_xstar_right(f, q(t)));
    }
  }
}

TEST(RightIntersectionDecide, Examples) {
  EXPECT_TRUE(right_intersection_decide(reduction_family({1, 0, 0}), VerticalLine{q(0)}));
  const Family increasing = reduction_family({0, 1, 2, 5, 9});
  EXPECT_FALSE(right_intersection_decide(increasing, VerticalLine{q(0)}));
  EXPECT_FALSE(reference::right_pair_exists(increasing, q(0)));
  Family apart{box(-1, 0, 1, 1), box(-1, 3, 1, 4)};
  EXPECT_FALSE(right_intersection_decide(apart, VerticalLine{q(0)}));
}

TEST(RightIntersectionDecide, NamesSetMissingTheLine) {
  Family f{box(-1, 0, 1, 1), box(2, 0, 3, 1)};
  try {
    right_intersection_decide(f, VerticalLine{q(0)});
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("set 1"), std::string::npos) << e.what();
  }
}

TEST(RightIntersectionDecide, RandomCrossingFamiliesMatchReference) {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 100; ++it) {
    Family f;
    for (int i = 0; i < 15; ++i) {
      auto p = random_polygon_around(rng, Point2{q(0), q(static_cast<long>(rng() % 30))}, 6);
      f.push_back(p);
    }
    ASSERT_EQ(right_intersection_decide(f, VerticalLine{q(0)}), reference::right_pair_exists(f, q(0)));
  }
}

TEST(CountPairIntersections, Examples) {
  Family overlapping{box(0, 0, 2, 2), box(1, 1, 3, 3), box(1, 0, 3, 2)};
  EXPECT_EQ(count_pair_intersections(overlapping), 3u);
  Family disjoint{box(0, 0, 1, 1), box(2, 2, 3, 3), box(4, 4, 5, 5)};
  EXPECT_EQ(count_pair_intersections(disjoint), 0u);
}

TEST(CountPairIntersections, RandomMatchesReferenceAndSweep) {
  std::mt19937_64 rng(44);
  for (int it = 0; it < 30; ++it) {
    const Family f = gen_general_position_family(30, rng(), 50);
    const std::size_t n = count_pair_intersections(f);
    ASSERT_EQ(n, reference::pair_count(f));
    ASSERT_EQ(n, count_polygon_pairs_sweep(f).pairs);
  }
}

TEST(XStarRandomized, SmallFamiliesEqualBruteforce) {
  std::mt19937_64 rng(45);
  for (int it = 0; it < 30; ++it) {
    const Family f = random_squares(rng, 2 + rng() % 5, 6);
    const auto r = xstar_randomized(f, std::nullopt, rng());
    ASSERT_EQ(r.point, xstar_bruteforce(f));
    ASSERT_EQ(r.trace.decide_calls, 0u);
  }
}

TEST(XStarRandomized, FortyPolygonsEqualBruteforceForEverySeed) {
  for (std::uint64_t inst = 0; inst < 5; ++inst) {
    const Family f = gen_general_position_family(40, 100 + inst);
    const auto expected = xstar_bruteforce(f);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto r = xstar_randomized(f, std::nullopt, seed);
      ASSERT_EQ(r.point, expected);
      ASSERT_FALSE(r.tie_fallback);
    }
  }
}

TEST(XStarRandomized, NoIntersectingPairGivesNone) {
  Family f;
  for (long i = 0; i < 15; ++i) f.push_back(box(3 * i, 0, 3 * i + 1, 1));
  EXPECT_FALSE(xstar_randomized(f, std::nullopt, 7).point);
}

TEST(XStarRandomized, TiedAbscissaFallsBackAndIsFlagged) {
  // Pairs meeting first at (1, 0) and at (1, 5), plus scattered filler.
  Family f{box(0, 0, 2, 1), box(1, 0, 3, 1), box(0, 5, 2, 6), box(1, 5, 3, 6)};
  for (long i = 0; i < 12; ++i) f.push_back(box(-40 - 3 * i, 20, -39 - 3 * i, 21));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = xstar_randomized(f, std::nullopt, seed);
    ASSERT_EQ(r.point, pt(1, 5));
    ASSERT_TRUE(r.tie_fallback);
  }
}

TEST(CommonLexmin, LexminOfCommonIntersectionIsAPairLexmin) {
  std::mt19937_64 rng(46);
  for (int it = 0; it < 100; ++it) {
    const std::size_t m = 3 + it % 6;
    Family f;
    const Point2 c{q(static_cast<long>(rng() % 50)), q(static_cast<long>(rng() % 50))};
    for (std::size_t i = 0; i < m; ++i) f.push_back(random_polygon_around(rng, c, 10));
    const Point2 target = lexmin(intersect_family(f));
    bool found = false;
    for (std::size_t i = 0; i < m && !found; ++i) {
      for (std::size_t j = i + 1; j < m && !found; ++j) found = reference::pair_lexmin(f[i], f[j]) == target;
    }
    ASSERT_TRUE(found);
  }
}

TEST(BaseCaseStab, Examples) {
  Family f{box(0, 0, 2, 2), box(1, 1, 3, 3), qbox(q(3, 2), q(3, 2), q(7, 2), q(7, 2)), box(9, 9, 10, 10)};
  const auto pts = base_case_stab(f, 3);
  ASSERT_EQ(pts.size(), 2u);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(contains_point(f[i], pts[0]));
  EXPECT_TRUE(verify_stabbing(f, pts).verdict);

  Family one{box(2, 3, 4, 5)};
  EXPECT_EQ(base_case_stab(one, 1), (std::vector<Point2>{pt(2, 3)}));

  Family apart{box(0, 0, 1, 1), box(3, 3, 4, 4)};
  EXPECT_THROW(base_case_stab(apart, 2), PromiseViolation);
}

TEST(BaseCaseStab, PlantedOverlapIsCovered) {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 40; ++it) {
    Family f;
    for (int i = 0; i < 4; ++i) f.push_back(random_polygon_around(rng, pt(50, 50), 10));
    const std::size_t extra = it % 2 ? 6 : 3;  // exercises the sweep path above 8 sets
    for (std::size_t i = 0; i < extra; ++i) {
      f.push_back(random_polygon_around(rng, Point2{q(static_cast<long>(rng() % 200)), q(static_cast<long>(rng() % 200))}, 8));
    }
    const auto pts = base_case_stab(f, 4);
    ASSERT_LE(pts.size(), f.size() - 4 + 1);
    ASSERT_TRUE(verify_stabbing(f, pts).verdict);
  }
}

TEST(BaseCaseStab, SweepPathAgreesWithCandidateEnumeration) {
  std::mt19937_64 rng(48);
  for (int it = 0; it < 30; ++it) {
    Family f;
    for (int i = 0; i < 12; ++i) f.push_back(reference::random_grid_polygon(rng, 6));
    const std::size_t best = reference::max_depth(f);
    if (best < 3) continue;
    // Index-preserving members list forces the same candidate rule; compare
    // against the first point the enumeration would choose.
    std::optional<Point2> chosen;
    std::size_t chosen_depth = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        auto m = reference::pair_lexmin(f[i], f[j]);
        if (!m) continue;
        const std::size_t d = reference::depth(f, *m);
        if (!chosen || d > chosen_depth || (d == chosen_depth && *m < *chosen)) {
          chosen = m;
          chosen_depth = d;
        }
      }
    }
    const auto pts = base_case_stab(f, static_cast<int>(best));
    ASSERT_EQ(pts.front(), *chosen);
  }
}

TEST(StabPlanar, HellyFamilyNeedsOnePoint) {
  Family f{box(-1, -1, 1, 1), box(-2, -1, 0, 3), box(0, 0, 4, 4), box(-3, -3, 0, 0), box(-1, 0, 1, 2)};
  const auto r = stab_planar(f, {3, 3, 3});
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.budget, 1);
}

TEST(StabPlanar, MultiplicityConstructionUsesTwoPoints) {
  Family f(4, box(0, 0, 1, 1));
  f.push_back(box(10, 10, 11, 11));
  for (XStarMode mode : {XStarMode::BruteForce, XStarMode::Randomized}) {
    const auto r = stab_planar(f, {5, 4, 3}, mode, 5);
    EXPECT_EQ(r.points.size(), 2u);
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(verify_stabbing(f, r.points).verdict);
  }
}

TEST(StabPlanar, CertifiedSevenFiveInstance) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Family f = gen_planar_instance(25, 7, 5, seed, Scheme::Cluster);
    ASSERT_TRUE(check_pq_property(f, 7, 5, 1'000'000'000).verdict);
    const auto r = stab_planar(f, {7, 5, 3});
    ASSERT_LE(r.points.size(), 3u);
    ASSERT_TRUE(r.ok());
    ASSERT_TRUE(verify_stabbing(f, r.points).verdict);
    ASSERT_TRUE(each_point_is_useful(r));
  }
}

TEST(StabPlanar, BothModesRespectBudgetOnCertifiedInstances) {
  const std::vector<std::pair<int, int>> params{{3, 3}, {4, 4}, {5, 4}, {7, 5}};
  std::uint64_t seed = 0;
  for (const auto& [p, q] : params) {
    for (Scheme scheme : {Scheme::Helly, Scheme::Cluster, Scheme::Adversarial}) {
      for (int rep = 0; rep < 3; ++rep, ++seed) {
        const Family f = gen_planar_instance(static_cast<std::size_t>(p + 6), p, q, seed, scheme);
        ASSERT_TRUE(check_pq_property(f, p, q).verdict);
        const auto bf = stab_planar(f, {p, q, 3});
        const auto rnd = stab_planar(f, {p, q, 3}, XStarMode::Randomized, seed);
        for (const auto* r : {&bf, &rnd}) {
          ASSERT_LE(r->points.size(), static_cast<std::size_t>(p - q + 1));
          ASSERT_TRUE(verify_stabbing(f, r->points).verdict);
          ASSERT_FALSE(r->promise_violated);
          ASSERT_TRUE(each_point_is_useful(*r));
        }
        ASSERT_EQ(bf.points, rnd.points);
      }
    }
  }
}

TEST(StabPlanar, ReducesAtEveryIteration) {
  Family f = gen_planar_instance(20, 7, 5, 3, Scheme::Adversarial);
  const auto r = stab_planar(f, {7, 5, 3});
  ASSERT_FALSE(r.reduction_trail.empty());
  EXPECT_EQ(r.reduction_trail.front(), (PQParams{7, 5, 3}));
  for (std::size_t i = 1; i < r.reduction_trail.size(); ++i) {
    EXPECT_EQ(r.reduction_trail[i].p - r.reduction_trail[i].q, r.reduction_trail[i - 1].p - r.reduction_trail[i - 1].q - 1);
  }
}

TEST(StabPlanar, PromiseViolationReportsUncoveredSets) {
  Family f;
  for (long i = 0; i < 5; ++i) f.push_back(box(3 * i, 0, 3 * i + 1, 1));
  const auto r = stab_planar(f, {3, 3, 3});
  EXPECT_TRUE(r.promise_violated);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.uncovered.empty());
  EXPECT_FALSE(r.diagnostic.empty());
  EXPECT_LE(r.points.size(), 1u);
  EXPECT_EQ(verify_stabbing(f, r.points).witness, r.uncovered);
}

TEST(StabPlanar, RejectsInadmissibleParameters) {
  Family f{box(0, 0, 1, 1)};
  EXPECT_THROW(stab_planar(f, {6, 4, 3}), PreconditionError);
}
