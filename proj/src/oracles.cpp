#include "pqstab/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "pqstab/combinatorics.hpp"
#include "pqstab/error.hpp"
#include "pqstab/pq_params.hpp"

namespace pqstab {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::PQProperty: return "pq-property";
    case CertificateKind::Stabbing: return "stabbing";
    case CertificateKind::MinimumStab: return "minimum-stab";
    case CertificateKind::Decision: return "decision";
  }
  return "unknown";
}

namespace {
// Largest subfamily of `members` with no q sets sharing a point, capped at
// `cap`. `groups` holds every intersecting subfamily of the current choice
// with fewer than q members, as (members, common region); the pair graph
// rules out most meets before any geometry is done.
template <class Region, class Meet>
class QFreeSearch {
 public:
  QFreeSearch(std::span<const Region> sets, const std::vector<std::vector<char>>& meets, int q, Meet meet)
      : sets_(sets), meets_(meets), q_(q), meet_(meet) {}

  std::vector<std::size_t> largest(std::vector<std::size_t> members, std::size_t cap) {
    members_ = std::move(members);
    cap_ = cap;
    best_.clear();
    std::vector<std::size_t> chosen;
    dfs(0, chosen, {});
    return best_;
  }

 private:
  struct Group {
    std::vector<std::size_t> members;
    Region region;
  };

  void dfs(std::size_t start, std::vector<std::size_t>& chosen, const std::vector<Group>& groups) {
    if (chosen.size() > best_.size()) best_ = chosen;
    if (best_.size() >= cap_) return;
    for (std::size_t k = start; k < members_.size(); ++k) {
      if (chosen.size() + (members_.size() - k) <= best_.size()) return;
      const std::size_t s = members_[k];
      std::vector<Group> next = groups;
      bool free = true;
      for (const Group& g : groups) {
        if (!std::all_of(g.members.begin(), g.members.end(), [&](std::size_t m) { return meets_[m][s] != 0; })) continue;
        auto common = meet_(g.region, sets_[s]);
        if (!common) continue;
        if (static_cast<int>(g.members.size()) + 1 >= q_) {
          free = false;
          break;
        }
        Group grown{g.members, std::move(*common)};
        grown.members.push_back(s);
        next.push_back(std::move(grown));
      }
      if (!free) continue;
      next.push_back(Group{{s}, sets_[s]});
      chosen.push_back(s);
      dfs(k + 1, chosen, next);
      chosen.pop_back();
      if (best_.size() >= cap_) return;
    }
  }

  std::span<const Region> sets_;
  const std::vector<std::vector<char>>& meets_;
  int q_;
  Meet meet_;
  std::vector<std::size_t> members_;
  std::size_t cap_ = 0;
  std::vector<std::size_t> best_;
};

// An intersecting subfamily lies inside one component of the pair graph, so
// p sets with no q sharing a point exist iff the per-component maxima add up
// to at least p.
template <class Region, class Meet>
Certificate pq_certificate(std::span<const Region> sets, int p, int q, std::uint64_t guard, Meet meet) {
  if (p < 1 || q < 1 || q > p) throw PreconditionError("check_pq_property: need p >= q >= 1");
  Certificate cert;
  cert.kind = CertificateKind::PQProperty;
  if (sets.size() < static_cast<std::size_t>(p)) {
    cert.verdict = true;
    cert.detail = "fewer than p sets";
    return cert;
  }
  const std::uint64_t subfamilies = binomial(sets.size(), static_cast<std::uint64_t>(p));
  if (subfamilies > guard) {
    throw SizeGuardError("pq-property", "C(" + std::to_string(sets.size()) + ", " + std::to_string(p) + ") = " +
                                            std::to_string(subfamilies) + " exceeds " + std::to_string(guard));
  }
  const std::size_t n = sets.size();
  std::vector<std::vector<char>> meets(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    meets[i][i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) meets[i][j] = meets[j][i] = meet(sets[i], sets[j]).has_value() ? 1 : 0;
  }
  std::vector<std::size_t> component(n, n);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] != n) continue;
    std::vector<std::size_t> members{root};
    component[root] = components.size();
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (meets[members[k]][j] && component[j] == n) {
          component[j] = components.size();
          members.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }

  std::vector<std::size_t> witness;
  if (q > 1) {
    QFreeSearch<Region, Meet> search(sets, meets, q, meet);
    for (auto& members : components) {
      const std::size_t cap = static_cast<std::size_t>(p) - witness.size();
      std::optional<Region> common = sets[members.front()];
      for (std::size_t k = 1; k < members.size() && common; ++k) common = meet(*common, sets[members[k]]);
      if (common) {
        // The whole component shares a point.
        const std::size_t take = std::min({members.size(), static_cast<std::size_t>(q - 1), cap});
        witness.insert(witness.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
        if (witness.size() >= static_cast<std::size_t>(p)) break;
        continue;
      }
      auto part = search.largest(std::move(members), cap);
      witness.insert(witness.end(), part.begin(), part.end());
      if (witness.size() >= static_cast<std::size_t>(p)) break;
    }
  }
  if (witness.size() >= static_cast<std::size_t>(p)) {
    std::sort(witness.begin(), witness.end());
    cert.verdict = false;
    cert.witness = std::move(witness);
    cert.detail = "these " + std::to_string(p) + " sets contain no " + std::to_string(q) + " with a common point";
  } else {
    cert.verdict = true;
  }
  return cert;
}

std::optional<ElementSet> meet_sets(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  if (out.empty()) return std::nullopt;
  return out;
}

using Mask = std::vector<std::uint64_t>;

class CoverSearch {
 public:
  CoverSearch(std::vector<Mask> candidates, std::size_t sets, std::uint64_t guard)
      : candidates_(std::move(candidates)), sets_(sets), guard_(guard) {
    prune();
  }

  std::optional<int> minimum(int budget) {
    if (sets_ == 0) return 0;
    for (int k = 1; k <= budget; ++k) {
      Mask covered(words(), 0);
      if (dfs(k, covered)) return k;
    }
    return std::nullopt;
  }

 private:
  std::size_t words() const { return (sets_ + 63) / 64; }

  static bool subset_of(const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] & ~b[i]) return false;
    }
    return true;
  }

  // Drops duplicate and dominated candidates.
  void prune() {
    std::sort(candidates_.begin(), candidates_.end());
    candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());
    std::vector<Mask> kept;
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < candidates_.size() && !dominated; ++j) {
        dominated = j != i && subset_of(candidates_[i], candidates_[j]);
      }
      if (!dominated) kept.push_back(candidates_[i]);
    }
    candidates_ = std::move(kept);
  }

  bool dfs(int left, Mask& covered) {
    if (++nodes_ > guard_) {
      throw SizeGuardError("min-stab", "search exceeded " + std::to_string(guard_) + " nodes");
    }
    std::size_t first = sets_;
    for (std::size_t w = 0; w < covered.size() && first == sets_; ++w) {
      std::uint64_t open = ~covered[w];
      if (w == covered.size() - 1 && sets_ % 64 != 0) open &= (std::uint64_t{1} << (sets_ % 64)) - 1;
      if (open) first = w * 64 + static_cast<std::size_t>(__builtin_ctzll(open));
    }
    if (first == sets_) return true;
    if (left == 0) return false;
    for (const Mask& c : candidates_) {
      if (!((c[first / 64] >> (first % 64)) & 1)) continue;
      Mask next = covered;
      for (std::size_t w = 0; w < next.size(); ++w) next[w] |= c[w];
      if (dfs(left - 1, next)) return true;
    }
    return false;
  }

  std::vector<Mask> candidates_;
  std::size_t sets_;
  std::uint64_t guard_;
  std::uint64_t nodes_ = 0;
};

template <class Contains>
Mask mask_of(std::size_t sets, Contains contains) {
  Mask m((sets + 63) / 64, 0);
  for (std::size_t s = 0; s < sets; ++s) {
    if (contains(s)) m[s / 64] |= std::uint64_t{1} << (s % 64);
  }
  return m;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); }

// Rational in (0, limit] with denominator 16.
Scalar offset(std::mt19937_64& rng, long limit) {
  return make_scalar(static_cast<long>(draw(rng, 1, static_cast<std::uint64_t>(limit) * 16)), 16);
}

// Splits n sets into clusters sharing a point so that any p of them include
// q from one cluster: sum over clusters of min(size, q-1) <= p-1. The first
// cluster is the large one.
std::vector<std::size_t> cluster_sizes(std::mt19937_64& rng, std::size_t n, int p, int q, Scheme scheme) {
  const std::size_t slack = static_cast<std::size_t>(p - q);
  switch (scheme) {
    case Scheme::Helly: return {n};
    case Scheme::Adversarial: {
      std::vector<std::size_t> sizes{n - slack};
      sizes.insert(sizes.end(), slack, 1);
      return sizes;
    }
    case Scheme::Cluster: {
      const std::size_t clusters = static_cast<std::size_t>(draw(rng, 1, slack + 1));
      const std::size_t small = clusters - 1;
      const std::size_t cap = std::min(slack, small * static_cast<std::size_t>(q - 1));
      const std::size_t total = small == 0 ? 0 : static_cast<std::size_t>(draw(rng, small, cap));
      std::vector<std::size_t> sizes(clusters, 1);
      for (std::size_t extra = total - small; extra > 0;) {
        const std::size_t c = 1 + static_cast<std::size_t>(draw(rng, 0, small - 1));
        if (sizes[c] < static_cast<std::size_t>(q - 1)) {
          ++sizes[c];
          --extra;
        }
      }
      sizes[0] = n - total;
      return sizes;
    }
  }
  return {n};
}

template <class T>
void shuffle_with(std::mt19937_64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

bool xstar_has_rival(std::span<const ConvexPolygon> family) {
  std::vector<Point2> lexmins;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (auto r = intersect_pair(family[i], family[j])) lexmins.push_back(r->lexmin());
    }
  }
  if (lexmins.empty()) return false;
  const Point2 best = *std::max_element(lexmins.begin(), lexmins.end());
  return std::any_of(lexmins.begin(), lexmins.end(), [&](const Point2& m) { return m.x == best.x && !(m == best); });
}

void check_admissible_instance(int h, int p, int q, std::size_t n) {
  if (!admissible(h, p, q)) {
    throw InputError("(p, q) = (" + std::to_string(p) + ", " + std::to_string(q) + ") is not admissible for h = " +
                         std::to_string(h),
                     "gen");
  }
  if (n < static_cast<std::size_t>(p)) throw InputError("need n >= p", "gen");
}

// A connected vertex set around `root` of roughly `target` vertices.
ElementSet grow_subtree(std::mt19937_64& rng, const Tree& t, std::size_t root, std::size_t target) {
  std::vector<char> in(t.size(), 0);
  ElementSet out{root};
  in[root] = 1;
  std::vector<std::size_t> frontier(t.neighbors(root).begin(), t.neighbors(root).end());
  while (out.size() < target && !frontier.empty()) {
    const std::size_t k = rng() % frontier.size();
    const std::size_t v = frontier[k];
    frontier[k] = frontier.back();
    frontier.pop_back();
    if (in[v]) continue;
    in[v] = 1;
    out.push_back(v);
    for (std::size_t w : t.neighbors(v)) {
      if (!in[w]) frontier.push_back(w);
    }
  }
  return normalize_set(std::move(out));
}

ElementSet down_closure(const Poset& p, const ElementSet& tops) {
  ElementSet out;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (std::any_of(tops.begin(), tops.end(), [&](std::size_t x) { return p.leq(y, x); })) out.push_back(y);
  }
  return out;
}

}  // namespace

Certificate check_pq_property(std::span<const ConvexPolygon> family, int p, int q, std::uint64_t guard) {
  return pq_certificate(family, p, q, guard,
                        [](const ConvexPolygon& a, const ConvexPolygon& b) { return intersect_pair(a, b); });
}

Certificate check_pq_property(std::span<const ElementSet> family, int p, int q, std::uint64_t guard) {
  return pq_certificate(family, p, q, guard, meet_sets);
}

Certificate verify_stabbing(std::span<const ConvexPolygon> family, std::span<const Point2> points) {
  Certificate cert;
  cert.kind = CertificateKind::Stabbing;
  for (std::size_t s = 0; s < family.size(); ++s) {
    if (std::none_of(points.begin(), points.end(), [&](const Point2& a) { return contains_point(family[s], a); })) {
      cert.witness.push_back(s);
    }
  }
  cert.verdict = cert.witness.empty();
  if (!cert.verdict) cert.detail = std::to_string(cert.witness.size()) + " sets are not stabbed";
  return cert;
}

Certificate verify_stabbing(std::span<const ElementSet> family, std::span<const std::size_t> elements) {
  Certificate cert;
  cert.kind = CertificateKind::Stabbing;
  for (std::size_t s = 0; s < family.size(); ++s) {
    const ElementSet& set = family[s];
    if (std::none_of(elements.begin(), elements.end(),
                     [&](std::size_t e) { return std::binary_search(set.begin(), set.end(), e); })) {
      cert.witness.push_back(s);
    }
  }
  cert.verdict = cert.witness.empty();
  if (!cert.verdict) cert.detail = std::to_string(cert.witness.size()) + " sets are not stabbed";
  return cert;
}

std::optional<int> min_stab_bruteforce(std::span<const ConvexPolygon> family, int budget, std::uint64_t guard) {
  std::vector<Point2> candidates;
  for (const ConvexPolygon& poly : family) candidates.insert(candidates.end(), poly.vertices().begin(), poly.vertices().end());
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (auto r = intersect_pair(family[i], family[j])) candidates.push_back(r->lexmin());
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Mask> masks;
  masks.reserve(candidates.size());
  for (const Point2& c : candidates) {
    masks.push_back(mask_of(family.size(), [&](std::size_t s) { return contains_point(family[s], c); }));
  }
  return CoverSearch(std::move(masks), family.size(), guard).minimum(budget);
}

std::optional<int> min_stab_bruteforce(std::span<const ElementSet> family, std::size_t ground_size, int budget,
                                       std::uint64_t guard) {
  std::vector<Mask> masks;
  for (std::size_t e = 0; e < ground_size; ++e) {
    masks.push_back(mask_of(family.size(), [&](std::size_t s) {
      return std::binary_search(family[s].begin(), family[s].end(), e);
    }));
  }
  return CoverSearch(std::move(masks), family.size(), guard).minimum(budget);
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Helly: return "helly";
    case Scheme::Cluster: return "cluster";
    case Scheme::Adversarial: return "adversarial";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "helly") return Scheme::Helly;
  if (name == "cluster") return Scheme::Cluster;
  if (name == "adversarial") return Scheme::Adversarial;
  throw InputError("unknown scheme '" + name + "' (expected helly, cluster or adversarial)", "scheme");
}

ConvexPolygon random_polygon_around(std::mt19937_64& rng, const Point2& center, long radius,
                                    std::size_t max_vertices) {
  if (max_vertices < 4) max_vertices = 4;
  std::vector<Point2> pts;
  // One point per open quadrant puts the center in the interior.
  const int sx[4] = {1, -1, -1, 1};
  const int sy[4] = {1, 1, -1, -1};
  for (int i = 0; i < 4; ++i) {
    pts.push_back(Point2{center.x + sx[i] * offset(rng, radius), center.y + sy[i] * offset(rng, radius)});
  }
  const std::size_t extra = static_cast<std::size_t>(draw(rng, 0, max_vertices - 4));
  for (std::size_t i = 0; i < extra; ++i) {
    const int qx = rng() % 2 ? 1 : -1;
    const int qy = rng() % 2 ? 1 : -1;
    pts.push_back(Point2{center.x + qx * offset(rng, radius), center.y + qy * offset(rng, radius)});
  }
  return ConvexPolygon::hull_of(std::move(pts));
}

Family gen_planar_instance(std::size_t n, int p, int q, std::uint64_t seed, Scheme scheme) {
  check_admissible_instance(3, p, q, n);
  std::mt19937_64 rng(seed);
  const std::vector<std::size_t> sizes = cluster_sizes(rng, n, p, q, scheme);
  Family family;
  family.reserve(n);
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    // Clusters sit 200 apart; every polygon stays within 40 of its center.
    const Point2 center{Scalar(static_cast<long>(200 * c)) + offset(rng, 20),
                        Scalar(static_cast<long>(150 * (c % 3))) + offset(rng, 20)};
    for (std::size_t i = 0; i < sizes[c]; ++i) {
      if (scheme == Scheme::Adversarial) {
        family.push_back(ConvexPolygon::box(center.x - 10 - offset(rng, 1), center.y - 10 - offset(rng, 1),
                                            center.x + 10 + offset(rng, 1), center.y + 10 + offset(rng, 1)));
      } else {
        family.push_back(random_polygon_around(rng, center, static_cast<long>(draw(rng, 4, 40))));
      }
    }
  }
  shuffle_with(rng, family);
  if (binomial(family.size(), static_cast<std::uint64_t>(p)) <= kDefaultPQGuard / 10 &&
      !check_pq_property(family, p, q).verdict) {
    throw PreconditionError("gen_planar_instance: planted (p,q)-property failed to hold");
  }
  return family;
}

Family gen_general_position_family(std::size_t n, std::uint64_t seed, long spread) {
  std::mt19937_64 rng(seed);
  while (true) {
    Family family;
    family.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 center{offset(rng, spread), offset(rng, spread)};
      family.push_back(random_polygon_around(rng, center, static_cast<long>(draw(rng, 3, 15))));
    }
    if (!xstar_has_rival(family)) return family;
  }
}

Tree gen_tree(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  shuffle_with(rng, label);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(label[rng() % v], label[v]);
  return Tree(n, edges);
}

Poset gen_poset(std::size_t n, std::size_t chains, std::uint64_t seed, double density) {
  std::mt19937_64 rng(seed);
  if (chains == 0) chains = 1;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  // Element i belongs to chain i % chains; every relation points from a
  // smaller to a larger index, so the relation is acyclic.
  for (std::size_t i = 0; i + chains < n; ++i) rel.emplace_back(i, i + chains);
  const auto threshold = static_cast<std::uint64_t>(density * 1'000'000);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j % chains != i % chains && rng() % 1'000'000 < threshold) rel.emplace_back(i, j);
    }
  }
  return Poset(n, rel);
}

TreeInstance gen_tree_instance(std::size_t vertices, std::size_t sets, int p, int q, std::uint64_t seed) {
  check_admissible_instance(2, p, q, sets);
  std::mt19937_64 rng(seed);
  TreeInstance inst{gen_tree(vertices, rng()), {}};
  const std::vector<std::size_t> sizes = cluster_sizes(rng, sets, p, q, Scheme::Cluster);
  for (std::size_t size : sizes) {
    const std::size_t root = rng() % vertices;
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t target = 1 + static_cast<std::size_t>(draw(rng, 0, std::max<std::size_t>(1, vertices / 3)));
      inst.subtrees.push_back(grow_subtree(rng, inst.tree, root, target));
    }
  }
  shuffle_with(rng, inst.subtrees);
  return inst;
}

PosetInstance gen_poset_instance(std::size_t elements, std::size_t chains, std::size_t sets, int p, int q,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Poset poset = gen_poset(elements, chains, rng());
  const int h = static_cast<int>(std::max<std::size_t>(2, poset_width(poset)));
  check_admissible_instance(h, p, q, sets);
  PosetInstance inst{std::move(poset), {}};
  const std::vector<std::size_t> sizes = cluster_sizes(rng, sets, p, q, Scheme::Cluster);
  for (std::size_t size : sizes) {
    const std::size_t planted = rng() % elements;
    for (std::size_t i = 0; i < size; ++i) {
      ElementSet tops{planted};
      const std::size_t extra = static_cast<std::size_t>(draw(rng, 0, 2));
      for (std::size_t k = 0; k < extra; ++k) tops.push_back(rng() % elements);
      inst.ideals.push_back(down_closure(inst.poset, tops));
    }
  }
  shuffle_with(rng, inst.ideals);
  return inst;
}

std::pair<Family, VerticalLine> gen_reduction_instance(std::span<const Scalar> a) {
  const Scalar n(static_cast<long>(a.size()));
  Family family;
  family.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Scalar k(static_cast<long>(i + 1));
    family.push_back(ConvexPolygon::hull_of({Point2{Scalar(0), Scalar(n * a[i] + k)}, Point2{Scalar(1), Scalar(2 * a[i])},
                                             Point2{Scalar(1), Scalar(2 * a[i] + 1)}}));
  }
  return {std::move(family), VerticalLine{Scalar(0)}};
}

}  // namespace pqstab
