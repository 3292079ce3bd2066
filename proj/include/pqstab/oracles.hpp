#pragma once

// Exhaustive checkers and planted-instance generators used to certify inputs
// and outputs of the stabbing algorithms on small instances.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqstab/discrete.hpp"
#include "pqstab/geometry.hpp"
#include "pqstab/planar_hd.hpp"

namespace pqstab {

enum class CertificateKind { PQProperty, Stabbing, MinimumStab, Decision };

std::string to_string(CertificateKind kind);

struct Certificate {
  CertificateKind kind = CertificateKind::Stabbing;
  bool verdict = false;
  // pq-property: a p-subfamily with no intersecting q-subfamily (on failure);
  // stabbing: the unstabbed sets; decision: the deciding pair.
  std::vector<std::size_t> witness;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultPQGuard = 2'000'000;
inline constexpr std::uint64_t kDefaultMinStabGuard = 20'000'000;

// Exhaustive over p-subfamilies (with pruning); throws SizeGuardError when
// C(|F|, p) exceeds `guard`.
Certificate check_pq_property(std::span<const ConvexPolygon> family, int p, int q,
                              std::uint64_t guard = kDefaultPQGuard);
Certificate check_pq_property(std::span<const ElementSet> family, int p, int q,
                              std::uint64_t guard = kDefaultPQGuard);

Certificate verify_stabbing(std::span<const ConvexPolygon> family, std::span<const Point2> points);
Certificate verify_stabbing(std::span<const ElementSet> family, std::span<const std::size_t> elements);

// Smallest number of points stabbing the family, or nullopt if it exceeds
// `budget`. Planar candidates are all vertices and the lexmins of pairwise
// intersections: any stabbing point can be moved to the lexmin of the
// intersection of the sets it stabs, which is the lexmin of some pair (or a
// vertex when it stabs one set). Throws SizeGuardError when the search
// exceeds `guard` nodes.
std::optional<int> min_stab_bruteforce(std::span<const ConvexPolygon> family, int budget,
                                       std::uint64_t guard = kDefaultMinStabGuard);
// Candidates are all elements 0..ground_size-1.
std::optional<int> min_stab_bruteforce(std::span<const ElementSet> family, std::size_t ground_size, int budget,
                                       std::uint64_t guard = kDefaultMinStabGuard);

enum class Scheme { Helly, Cluster, Adversarial };

std::string to_string(Scheme s);
// Throws InputError on an unknown name.
Scheme parse_scheme(const std::string& name);

// Convex polygon with 3..max_vertices vertices whose interior contains
// `center`, inside the box of half-width `radius` around it.
ConvexPolygon random_polygon_around(std::mt19937_64& rng, const Point2& center, long radius,
                                    std::size_t max_vertices = 8);

// n polygons with at most 8 vertices whose (p,q)-property holds by
// construction; the result is re-certified when small enough and rejected
// (InputError) for infeasible parameters.
Family gen_planar_instance(std::size_t n, int p, int q, std::uint64_t seed, Scheme scheme);

// Polygons scattered at random, no structure planted; re-rolled until x* has
// no rival candidate on its vertical line.
Family gen_general_position_family(std::size_t n, std::uint64_t seed, long spread = 60);

struct TreeInstance {
  Tree tree;
  std::vector<ElementSet> subtrees;
};

struct PosetInstance {
  Poset poset;
  std::vector<ElementSet> ideals;
};

Tree gen_tree(std::size_t n, std::uint64_t seed);
// Width at most `chains`.
Poset gen_poset(std::size_t n, std::size_t chains, std::uint64_t seed, double density = 0.25);

// Sets with the (p,q)-property planted via clusters sharing a vertex/element.
TreeInstance gen_tree_instance(std::size_t vertices, std::size_t sets, int p, int q, std::uint64_t seed);
PosetInstance gen_poset_instance(std::size_t elements, std::size_t chains, std::size_t sets, int p, int q,
                                 std::uint64_t seed);

// Triangles (0, n a[k] + k), (1, 2 a[k]), (1, 2 a[k] + 1) for k = 1..n and
// the line x = 0; some pair meets strictly right of it iff `a` repeats a
// value.
std::pair<Family, VerticalLine> gen_reduction_instance(std::span<const Scalar> a);

}  // namespace pqstab
