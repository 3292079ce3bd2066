#pragma once

// All trees on few vertices up to isomorphism, their subtrees as bitmasks,
// and an exhaustive walk over pairwise-intersecting subtree families.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pqstab/discrete.hpp"

namespace tree_enum {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

inline Edges prufer_decode(const std::vector<std::size_t>& seq, std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t v : seq) ++degree[v];
  Edges edges;
  for (std::size_t v : seq) {
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
      if (degree[leaf] == 1) {
        edges.emplace_back(leaf, v);
        --degree[leaf];
        --degree[v];
        break;
      }
    }
  }
  std::vector<std::size_t> last;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 1) last.push_back(v);
  }
  if (last.size() == 2) edges.emplace_back(last[0], last[1]);
  return edges;
}

inline std::string rooted_code(const std::vector<std::vector<std::size_t>>& adj, std::size_t v, std::size_t parent) {
  std::vector<std::string> children;
  for (std::size_t w : adj[v]) {
    if (w != parent) children.push_back(rooted_code(adj, w, v));
  }
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto& c : children) out += c;
  return out + ")";
}

// Smallest rooted encoding over all roots: equal iff isomorphic.
inline std::string canonical(std::size_t n, const Edges& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::string best;
  for (std::size_t r = 0; r < n; ++r) {
    std::string c = rooted_code(adj, r, n);
    if (best.empty() || c < best) best = c;
  }
  return best;
}

// Every tree on n vertices, one per isomorphism class.
inline std::vector<Edges> trees_up_to_isomorphism(std::size_t n) {
  if (n == 1) return {Edges{}};
  if (n == 2) return {Edges{{0, 1}}};
  std::set<std::string> seen;
  std::vector<Edges> out;
  std::vector<std::size_t> seq(n - 2, 0);
  while (true) {
    Edges e = prufer_decode(seq, n);
    if (seen.insert(canonical(n, e)).second) out.push_back(std::move(e));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return out;
}

// Connected vertex subsets, found by flooding inside the mask.
inline std::vector<std::uint32_t> subtree_masks(std::size_t n, const Edges& edges) {
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [a, b] : edges) {
    nbr[a] |= 1u << b;
    nbr[b] |= 1u << a;
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t reached = mask & (~mask + 1);
    while (true) {
      std::uint32_t grow = reached;
      for (std::size_t v = 0; v < n; ++v) {
        if ((reached >> v) & 1) grow |= nbr[v] & mask;
      }
      if (grow == reached) break;
      reached = grow;
    }
    if (reached == mask) out.push_back(mask);
  }
  return out;
}

inline pqstab::ElementSet to_set(std::uint32_t mask) {
  pqstab::ElementSet s;
  for (std::size_t v = 0; v < 32; ++v) {
    if ((mask >> v) & 1) s.push_back(v);
  }
  return s;
}

struct HellyWalk {
  std::uint64_t families = 0;
  std::uint64_t without_common_vertex = 0;
  std::uint64_t pivot_misses = 0;
};

// Visits every family of 2..max_size distinct pairwise-intersecting subtrees.
// For each, checks that the family has a common vertex and that the
// latest-removed vertex among the per-set ⪯-mins (the h = 2 pivot) lies in
// all of them.
inline HellyWalk walk_pairwise_intersecting(const std::vector<std::uint32_t>& subs,
                                            const std::vector<std::size_t>& position, std::size_t max_size) {
  constexpr std::size_t kMax = 160;
  const std::size_t m = subs.size();
  std::vector<std::size_t> own_min(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t best = 32;
    for (std::size_t v = 0; v < 32; ++v) {
      if (((subs[i] >> v) & 1) && (best == 32 || position[v] > position[best])) best = v;
    }
    own_min[i] = best;
  }
  std::vector<std::bitset<kMax>> later(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (subs[i] & subs[j]) later[i].set(j);
    }
  }
  HellyWalk walk;
  std::function<void(std::size_t, std::uint32_t, std::size_t, const std::bitset<kMax>&)> dfs =
      [&](std::size_t size, std::uint32_t common, std::size_t pivot, const std::bitset<kMax>& cand) {
        for (std::size_t j = cand._Find_first(); j < m; j = cand._Find_next(j)) {
          const std::uint32_t c = common & subs[j];
          const std::size_t v = position[own_min[j]] < position[pivot] ? own_min[j] : pivot;
          ++walk.families;
          if (c == 0) ++walk.without_common_vertex;
          if (!((c >> v) & 1)) ++walk.pivot_misses;
          if (size + 1 < max_size) dfs(size + 1, c, v, cand & later[j]);
        }
      };
  for (std::size_t i = 0; i < m; ++i) dfs(1, subs[i], own_min[i], later[i]);
  return walk;
}

}  // namespace tree_enum
