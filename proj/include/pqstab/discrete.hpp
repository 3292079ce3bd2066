#pragma once

// Two combinatorial Ordered-Helly systems: subtrees of a tree (h = 2) and
// ideals of a poset (h = width). Sets are sorted element lists; the order on
// elements comes from a shelling, later-removed elements being ⪯-smaller.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pqstab {

using ElementSet = std::vector<std::size_t>;

// Sorts and removes duplicates.
ElementSet normalize_set(ElementSet s);

class Tree {
 public:
  // Throws InputError unless the edges form a tree on n >= 1 vertices.
  Tree(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);

  std::size_t size() const noexcept { return adj_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

  // True iff `vertices` (sorted, in range) is non-empty and connected.
  bool is_subtree(const ElementSet& vertices) const;

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

class Poset {
 public:
  // Relations (a, b) mean a <= b. The reflexive-transitive closure is taken;
  // a cycle through distinct elements throws InputError.
  Poset(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> relations);

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * n_ + b] != 0; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  const std::vector<std::pair<std::size_t, std::size_t>>& relations() const noexcept { return relations_; }

  // True iff `elements` (sorted, in range) is downward closed.
  bool is_ideal(const ElementSet& elements) const;

 private:
  std::size_t n_;
  std::vector<char> leq_;
  std::vector<std::pair<std::size_t, std::size_t>> relations_;
};

struct ShellingOrder {
  std::vector<std::size_t> sequence;  // removal order x_1, ..., x_n
  std::vector<std::size_t> position;  // position[x] = i when x = x_i

  // x_i ⪯ x_j iff i >= j.
  bool precedes_or_equal(std::size_t a, std::size_t b) const { return position[a] >= position[b]; }
};

ShellingOrder make_shelling(std::vector<std::size_t> sequence);

// Repeatedly removes the smallest-index leaf.
ShellingOrder tree_shelling(const Tree& t);
// Repeatedly removes the smallest-index maximal element.
ShellingOrder poset_shelling(const Poset& p);

// Maximum antichain size, as n minus a maximum matching of the strict order
// (minimum chain cover).
std::size_t poset_width(const Poset& p);

// Shared machinery for systems whose sets are explicit element lists.
class ExplicitSystem {
 public:
  using Element = std::size_t;
  using Set = ElementSet;

  bool precedes_or_equal(std::size_t a, std::size_t b) const { return order_.precedes_or_equal(a, b); }
  std::optional<std::size_t> min_of_intersection(std::span<const ElementSet* const> sets) const;
  std::optional<std::size_t> min_of_full_intersection(std::span<const ElementSet* const> sets) const {
    return min_of_intersection(sets);
  }
  bool contains(const ElementSet& set, std::size_t e) const;
  std::size_t complexity(const ElementSet& set) const { return set.size(); }
  const ShellingOrder& order() const noexcept { return order_; }

 protected:
  explicit ExplicitSystem(ShellingOrder order) : order_(std::move(order)) {}

 private:
  ShellingOrder order_;
};

class TreeSystem : public ExplicitSystem {
 public:
  explicit TreeSystem(Tree t);

  int helly_number() const { return 2; }
  const Tree& tree() const noexcept { return tree_; }
  // Throws InputError naming `index` unless `s` is a subtree.
  void validate(const ElementSet& s, std::size_t index) const;

 private:
  Tree tree_;
};

class PosetSystem : public ExplicitSystem {
 public:
  explicit PosetSystem(Poset p);

  // max(2, width): a chain has width 1, below the smallest Helly number the
  // stabbing recursion supports.
  int helly_number() const { return h_; }
  std::size_t width() const noexcept { return width_; }
  const Poset& poset() const noexcept { return poset_; }
  // Throws InputError naming `index` unless `s` is a non-empty ideal.
  void validate(const ElementSet& s, std::size_t index) const;

 private:
  Poset poset_;
  std::size_t width_;
  int h_;
};

}  // namespace pqstab
