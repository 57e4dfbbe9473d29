#pragma once

#include <cstdint>
#include <vector>

namespace cobtree {

/// Breadth-first node index, 1-based: the root is 1, children of i are 2i and 2i+1.
using NodeIndex = std::uint64_t;
/// 1-based storage slot of a node in a layout.
using Position = std::uint64_t;

/// Heights above this do not fit a 64-bit position space comfortably.
inline constexpr int kMaxHeight = 48;

/// Level of a breadth-first index: floor(log2 i). The root is on level 0.
constexpr int level_of_index(NodeIndex i) noexcept {
  int level = 0;
  while (i > 1) {
    i >>= 1;
    ++level;
  }
  return level;
}

/// A complete binary tree with `height` levels of nodes (2^h - 1 nodes).
class TreeShape {
 public:
  explicit TreeShape(int height);

  int height() const noexcept { return height_; }
  std::uint64_t node_count() const noexcept { return (std::uint64_t{1} << height_) - 1; }
  std::uint64_t edge_count() const noexcept { return node_count() - 1; }
  std::uint64_t nodes_on_level(int level) const noexcept { return std::uint64_t{1} << level; }

  bool contains(NodeIndex i) const noexcept { return i >= 1 && i <= node_count(); }

  /// Level of node `i`; throws DomainError when i is not a node of this tree.
  int level_of(NodeIndex i) const;

  friend bool operator==(const TreeShape&, const TreeShape&) = default;

 private:
  int height_;
};

/// A tree edge, identified by its child.
struct Edge {
  NodeIndex parent_bfs;
  NodeIndex child_bfs;
  int child_level;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// How edges are weighted by the likelihood that a random search traverses them.
///  - Geometric: w = 2^-d for an edge whose child is on level d.
///  - Exact:     w = (2^(h-d) - 1) / (2^h - 1), the fraction of nodes below the child.
enum class WeightScheme { Geometric, Exact };

const char* to_string(WeightScheme scheme) noexcept;

/// Weight of an edge whose child is on level `child_level` (1 <= d <= h-1).
double edge_weight(int child_level, const TreeShape& shape, WeightScheme scheme);

/// Sum of all edge weights. Geometric weights sum to h - 1.
double total_weight(const TreeShape& shape, WeightScheme scheme);

/// All 2^h - 2 edges, ordered by child index 2..2^h-1.
std::vector<Edge> edges(const TreeShape& shape);

/// 1-based in-order rank of node `i`, i.e. the key a search tree would store there.
std::uint64_t inorder_rank(NodeIndex i, const TreeShape& shape);

}  // namespace cobtree
