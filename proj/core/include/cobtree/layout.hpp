#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cobtree/layout_spec.hpp"
#include "cobtree/tree_model.hpp"

namespace cobtree {

/// Largest height build_layout materializes (2^28 32-bit positions, about 1 GiB).
inline constexpr int kMaxMaterializedHeight = 28;

/// A bijection from breadth-first index to 1-based storage position.
class Layout {
 public:
  /// Takes positions indexed by bfs - 1. Throws ConstructionError unless the
  /// values are a permutation of 1..2^h-1.
  static Layout from_positions(TreeShape shape, std::vector<std::uint32_t> positions);

  const TreeShape& shape() const noexcept { return shape_; }
  int height() const noexcept { return shape_.height(); }
  std::uint64_t size() const noexcept { return positions_.size(); }

  /// Throws DomainError for an index outside the tree.
  Position position(NodeIndex bfs) const;
  Position operator[](NodeIndex bfs) const noexcept { return positions_[bfs - 1]; }

  /// Positions indexed by bfs - 1.
  std::span<const std::uint32_t> positions() const noexcept { return positions_; }

  /// Breadth-first index stored at each position, indexed by position - 1.
  std::vector<std::uint32_t> inverse() const;

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  Layout(TreeShape shape, std::vector<std::uint32_t> positions)
      : shape_(shape), positions_(std::move(positions)) {}

  TreeShape shape_;
  std::vector<std::uint32_t> positions_;
};

/// Materializes a Recursive Layout. Throws ConstructionError for an invalid
/// spec and DomainError for h outside [1, kMaxMaterializedHeight].
Layout build_layout(const LayoutSpec& spec, int h);

/// True iff both position arrays are identical. Throws DomainError on a height mismatch.
bool layout_equal(const Layout& a, const Layout& b);

/// Writes `bfs,pos` lines under a header, sorted by bfs index.
void write_permutation(std::ostream& out, const Layout& layout);

/// Reads the format written by write_permutation. The height is inferred from
/// the node count. Throws ConfigError on malformed text and ConstructionError
/// if the positions are not a bijection.
Layout read_permutation(std::istream& in);

}  // namespace cobtree
