#pragma once

#include <memory>
#include <vector>

#include "cobtree/layout_spec.hpp"
#include "cobtree/tree_model.hpp"

namespace cobtree {

/// Evaluates the spec's cut policy. Throws DomainError if m < 2 or the policy
/// has no valid cut at m.
int cut_height(const LayoutSpec& spec, Orientation orientation, int m);

/// Breadth-first index to layout position without materializing the layout.
/// Construction validates the spec once (ConstructionError); each lookup costs O(h).
class IndexTranslator {
 public:
  IndexTranslator(const LayoutSpec& spec, int h);

  int height() const noexcept { return shape_.height(); }

  /// Throws DomainError for an index outside the tree.
  Position operator()(NodeIndex bfs) const;

  /// Same, with the depth of `bfs` supplied by the caller. Not range checked.
  Position at(NodeIndex bfs, int depth) const;

 private:
  struct Impl;
  TreeShape shape_;
  std::shared_ptr<const Impl> impl_;
};

/// One-shot translation. Throws ConstructionError or DomainError.
Position translate_index(const LayoutSpec& spec, int h, NodeIndex bfs);

struct SearchStep {
  NodeIndex bfs_index;
  int depth;
  Position layout_position;

  friend bool operator==(const SearchStep&, const SearchStep&) = default;
};

/// Root-to-target ancestor chain with layout positions.
std::vector<SearchStep> search_path(const LayoutSpec& spec, int h, NodeIndex target);
std::vector<SearchStep> search_path(const IndexTranslator& tr, NodeIndex target);

}  // namespace cobtree
