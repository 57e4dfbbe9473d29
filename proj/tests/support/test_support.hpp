#pragma once

// Shared helpers for the unit and acceptance tests: a seeded generator of
// random valid layout specs and a reference layout builder written
// independently of the library's offset arithmetic.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "cobtree/layout_spec.hpp"
#include "cobtree/tree_model.hpp"

namespace cobtree::test {

inline int random_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// A random spec that is valid for every height up to h_max.
inline LayoutSpec random_spec(std::mt19937_64& rng, int h_max) {
  LayoutSpec spec;
  spec.outer = random_int(rng, 0, 1) ? Orientation::PreOrder : Orientation::InOrder;
  const FirstInOrder ks[] = {FirstInOrder::One, FirstInOrder::Two, FirstInOrder::Never, FirstInOrder::Any};
  spec.first_inorder = ks[random_int(rng, 0, 3)];
  spec.alternating = random_int(rng, 0, 1) == 1;
  switch (random_int(rng, 0, 6)) {
    case 0:
      spec.cut = CutPolicy::constant(1);
      break;
    case 1:
      spec.cut = CutPolicy::half();
      break;
    case 2:
      spec.cut = CutPolicy::height_minus_one();
      break;
    case 3:
      spec.cut = CutPolicy::bender();
      break;
    case 4:
      spec.cut = CutPolicy::opt();
      break;
    case 5:
      spec.cut = CutPolicy::opt_normalized();
      break;
    default: {
      CutPolicy::TableMap table;
      for (int m = 2; m <= h_max; ++m) {
        table[{Orientation::InOrder, m}] = random_int(rng, 1, m - 1);
        table[{Orientation::PreOrder, m}] = random_int(rng, 1, m - 1);
      }
      spec.cut = CutPolicy::table(table);
    }
  }
  return spec;
}

/// Reference builder. Produces the node sequence of a subtree directly in
/// storage order by concatenating blocks, rather than computing offsets.
class ReferenceBuilder {
 public:
  explicit ReferenceBuilder(const LayoutSpec& spec) : spec_(spec) {}

  /// Positions by bfs - 1.
  std::vector<std::uint32_t> positions(int h) const {
    const auto order = sequence(1, h, spec_.outer, false);
    std::vector<std::uint32_t> pos(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) pos[order[p] - 1] = static_cast<std::uint32_t>(p + 1);
    return pos;
  }

 private:
  using Seq = std::vector<NodeIndex>;

  // Storage order of the subtree rooted at `root`. A mirrored frame lists its
  // blocks right to left; an in-order block never mirrors.
  Seq sequence(NodeIndex root, int m, Orientation o, bool mirrored) const {
    if (m == 1) return {root};
    const int g = spec_.cut(o, m);
    const Seq top = sequence(root, g, o, mirrored);

    // Leaves of the top subtree in the frame's own left-to-right order.
    Seq leaves;
    const int leaf_level = level_of_index(root) + g - 1;
    for (NodeIndex v : top) {
      if (level_of_index(v) == leaf_level) leaves.push_back(v);
    }
    if (mirrored) std::reverse(leaves.begin(), leaves.end());

    const int pre_slots = preorder_bottoms(spec_.first_inorder);
    const std::size_t half = leaves.size() / 2;
    std::vector<Seq> left_blocks, right_blocks;  // indexed by distance from the top block

    auto bottom = [&](NodeIndex child, std::size_t slot, bool left_side) {
      const Orientation co = static_cast<long long>(slot) < pre_slots ? Orientation::PreOrder : Orientation::InOrder;
      const bool cm = co == Orientation::PreOrder && (mirrored != left_side);
      auto& blocks = left_side ? left_blocks : right_blocks;
      if (blocks.size() <= slot) blocks.resize(slot + 1);
      blocks[slot] = sequence(child, m - g, co, cm);
    };

    if (o == Orientation::PreOrder) {
      Seq order = leaves;
      if (spec_.alternating) std::reverse(order.begin(), order.end());
      for (std::size_t j = 0; j < order.size(); ++j) {
        bottom(2 * order[j], 2 * j, false);
        bottom(2 * order[j] + 1, 2 * j + 1, false);
      }
    } else if (g == 1) {
      bottom(2 * root, 0, true);
      bottom(2 * root + 1, 0, false);
    } else {
      Seq left(leaves.begin(), leaves.begin() + static_cast<std::ptrdiff_t>(half));
      Seq right(leaves.begin() + static_cast<std::ptrdiff_t>(half), leaves.end());
      std::reverse(left.begin(), left.end());  // nearest to the top block first
      if (spec_.alternating) {
        std::reverse(left.begin(), left.end());
        std::reverse(right.begin(), right.end());
      }
      for (std::size_t j = 0; j < left.size(); ++j) {
        bottom(2 * left[j], 2 * j, true);
        bottom(2 * left[j] + 1, 2 * j + 1, true);
      }
      for (std::size_t j = 0; j < right.size(); ++j) {
        bottom(2 * right[j], 2 * j, false);
        bottom(2 * right[j] + 1, 2 * j + 1, false);
      }
    }

    std::vector<const Seq*> blocks;
    for (auto it = left_blocks.rbegin(); it != left_blocks.rend(); ++it) blocks.push_back(&*it);
    blocks.push_back(&top);
    for (const auto& b : right_blocks) blocks.push_back(&b);
    if (mirrored) std::reverse(blocks.begin(), blocks.end());
    Seq out;
    for (const Seq* b : blocks) out.insert(out.end(), b->begin(), b->end());
    return out;
  }

  LayoutSpec spec_;
};

}  // namespace cobtree::test
