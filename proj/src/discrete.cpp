#include "pqstab/discrete.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "pqstab/error.hpp"

namespace pqstab {

ElementSet normalize_set(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Tree::Tree(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges)
    : adj_(n), edges_(edges.begin(), edges.end()) {
  if (n == 0) throw InputError("tree must have at least one vertex", "tree");
  if (edges.size() != n - 1) {
    throw InputError("a tree on " + std::to_string(n) + " vertices has " + std::to_string(n - 1) + " edges, got " +
                         std::to_string(edges.size()),
                     "tree.edges");
  }
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n || a == b) {
      throw InputError("bad edge (" + std::to_string(a) + ", " + std::to_string(b) + ")", "tree.edges");
    }
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (!is_subtree(all)) throw InputError("edges do not connect all vertices", "tree.edges");
}

bool Tree::is_subtree(const ElementSet& vertices) const {
  if (vertices.empty()) return false;
  std::vector<char> in(adj_.size(), 0), seen(adj_.size(), 0);
  for (std::size_t v : vertices) {
    if (v >= adj_.size()) return false;
    in[v] = 1;
  }
  std::vector<std::size_t> stack{vertices.front()};
  seen[vertices.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t w : adj_[v]) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == vertices.size();
}

Poset::Poset(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> relations)
    : n_(n), leq_(n * n, 0), relations_(relations.begin(), relations.end()) {
  for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;
  for (const auto& [a, b] : relations) {
    if (a >= n || b >= n) {
      throw InputError("relation (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range",
                       "poset.relations");
    }
    leq_[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leq_[k * n + j]) leq_[i * n + j] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leq_[i * n + j] && leq_[j * n + i]) {
        throw InputError("relations form a cycle through " + std::to_string(i) + " and " + std::to_string(j),
                         "poset.relations");
      }
    }
  }
}

bool Poset::is_ideal(const ElementSet& elements) const {
  std::vector<char> in(n_, 0);
  for (std::size_t e : elements) {
    if (e >= n_) return false;
    in[e] = 1;
  }
  for (std::size_t x : elements) {
    for (std::size_t y = 0; y < n_; ++y) {
      if (leq(y, x) && !in[y]) return false;
    }
  }
  return true;
}

ShellingOrder make_shelling(std::vector<std::size_t> sequence) {
  ShellingOrder order;
  order.position.assign(sequence.size(), 0);
  for (std::size_t i = 0; i < sequence.size(); ++i) order.position[sequence[i]] = i;
  order.sequence = std::move(sequence);
  return order;
}

ShellingOrder tree_shelling(const Tree& t) {
  const std::size_t n = t.size();
  std::vector<std::size_t> degree(n);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = t.neighbors(v).size();
    if (degree[v] <= 1) leaves.push(v);
  }
  std::vector<char> removed(n, 0);
  std::vector<std::size_t> seq;
  seq.reserve(n);
  while (!leaves.empty()) {
    const std::size_t v = leaves.top();
    leaves.pop();
    if (removed[v]) continue;
    removed[v] = 1;
    seq.push_back(v);
    for (std::size_t w : t.neighbors(v)) {
      if (removed[w]) continue;
      if (--degree[w] == 1 || degree[w] == 0) leaves.push(w);
    }
  }
  return make_shelling(std::move(seq));
}

ShellingOrder poset_shelling(const Poset& p) {
  const std::size_t n = p.size();
  // above[x] = number of remaining elements strictly greater than x.
  std::vector<std::size_t> above(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) above[x] += p.less(x, y) ? 1 : 0;
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> maximal;
  for (std::size_t x = 0; x < n; ++x) {
    if (above[x] == 0) maximal.push(x);
  }
  std::vector<std::size_t> seq;
  seq.reserve(n);
  while (!maximal.empty()) {
    const std::size_t x = maximal.top();
    maximal.pop();
    seq.push_back(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (p.less(y, x) && --above[y] == 0) maximal.push(y);
    }
  }
  return make_shelling(std::move(seq));
}

std::size_t poset_width(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> match_right(n, n);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!p.less(a, b) || visited[b]) continue;
      visited[b] = 1;
      if (match_right[b] == n || augment(match_right[b])) {
        match_right[b] = a;
        return true;
      }
    }
    return false;
  };
  std::size_t matching = 0;
  for (std::size_t a = 0; a < n; ++a) {
    visited.assign(n, 0);
    if (augment(a)) ++matching;
  }
  return n - matching;
}

std::optional<std::size_t> ExplicitSystem::min_of_intersection(std::span<const ElementSet* const> sets) const {
  if (sets.empty()) throw PreconditionError("min_of_intersection: no sets");
  std::optional<std::size_t> best;
  for (std::size_t e : *sets.front()) {
    bool everywhere = true;
    for (std::size_t i = 1; i < sets.size() && everywhere; ++i) everywhere = contains(*sets[i], e);
    if (!everywhere) continue;
    if (!best || precedes_or_equal(e, *best)) best = e;
  }
  return best;
}

bool ExplicitSystem::contains(const ElementSet& set, std::size_t e) const {
  return std::binary_search(set.begin(), set.end(), e);
}

TreeSystem::TreeSystem(Tree t) : ExplicitSystem(tree_shelling(t)), tree_(std::move(t)) {}

void TreeSystem::validate(const ElementSet& s, std::size_t index) const {
  if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw InputError("subtree " + std::to_string(index) + " is not a sorted vertex set", "subtrees");
  }
  if (!tree_.is_subtree(s)) {
    throw InputError("subtree " + std::to_string(index) + " is empty, out of range or not connected", "subtrees");
  }
}

PosetSystem::PosetSystem(Poset p)
    : ExplicitSystem(poset_shelling(p)),
      poset_(std::move(p)),
      width_(poset_width(poset_)),
      h_(static_cast<int>(std::max<std::size_t>(2, width_))) {}

void PosetSystem::validate(const ElementSet& s, std::size_t index) const {
  if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw InputError("ideal " + std::to_string(index) + " is not a sorted element set", "ideals");
  }
  if (s.empty() || !poset_.is_ideal(s)) {
    throw InputError("ideal " + std::to_string(index) + " is empty, out of range or not downward closed", "ideals");
  }
}

}  // namespace pqstab
