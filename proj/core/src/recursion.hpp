#pragma once

// Geometry of one recursion branch, shared by the materializing builder and
// the implicit index translation. Offsets are relative to the branch's own
// block in local orientation: a mirrored pre-order branch reads right to left.

#include <array>
#include <cstdint>

#include "cobtree/errors.hpp"
#include "cobtree/layout_spec.hpp"
#include "cobtree/tree_model.hpp"

namespace cobtree::detail {

inline std::uint64_t subtree_size(int m) { return (std::uint64_t{1} << m) - 1; }

/// Cut heights resolved once per (spec, h). Zero marks an unreachable or invalid entry.
class CutTable {
 public:
  CutTable(const LayoutSpec& spec, int h) {
    const auto report = validate_spec(spec, h);
    if (!report) throw ConstructionError(spec.to_string() + ": " + report.summary());
    for (int o = 0; o < 2; ++o) {
      for (int m = 2; m <= h; ++m) {
        const auto g = spec.cut.raw(static_cast<Orientation>(o), m);
        cut_[o][m] = (g && *g >= 1 && *g < m) ? *g : 0;
      }
    }
    pre_slots_ = preorder_bottoms(spec.first_inorder);
    alternating_ = spec.alternating;
  }

  int cut(Orientation o, int m) const {
    const int g = cut_[static_cast<int>(o)][m];
    if (g == 0) throw ConstructionError("cut height undefined at subtree height " + std::to_string(m));
    return g;
  }
  int pre_slots() const { return pre_slots_; }
  bool alternating() const { return alternating_; }

 private:
  std::array<std::array<std::uint8_t, kMaxHeight + 1>, 2> cut_{};
  int pre_slots_ = 0;
  bool alternating_ = false;
};

struct Branch {
  Orientation orient;
  int m;                    // subtree height
  int g;                    // cut height
  std::uint64_t top_size;   // nodes in top subtree A
  std::uint64_t bot_size;   // nodes in each bottom subtree
  std::uint64_t leaves;     // leaves of A
  std::uint64_t top_offset; // local offset of A

  Branch(Orientation o, int height, int cut)
      : orient(o),
        m(height),
        g(cut),
        top_size(subtree_size(cut)),
        bot_size(subtree_size(height - cut)),
        leaves(std::uint64_t{1} << (cut - 1)),
        top_offset(o == Orientation::PreOrder ? 0 : leaves * bot_size) {}
};

struct BottomPlacement {
  std::uint64_t offset;  // local offset of the bottom block
  Orientation orient;
  bool left_side;        // lies left of A in an in-order branch
};

/// Where the bottom subtree hanging off A's leaf of local rank `rank` (0 = leftmost
/// in local orientation) as child `side` (0 = left, 1 = right) goes.
inline BottomPlacement place_bottom(const Branch& b, const CutTable& t, std::uint64_t rank, int side) {
  std::uint64_t outward;  // 0 = adjacent to A
  bool left = false;
  if (b.orient == Orientation::PreOrder) {
    const std::uint64_t leaf = t.alternating() ? b.leaves - 1 - rank : rank;
    outward = 2 * leaf + static_cast<std::uint64_t>(side);
  } else if (b.g == 1) {
    left = side == 0;
    outward = 0;
  } else {
    const std::uint64_t half = b.leaves / 2;
    left = rank < half;
    std::uint64_t leaf;
    if (left) {
      leaf = half - 1 - rank;  // nearest leaf first
      if (t.alternating()) leaf = half - 1 - leaf;
    } else {
      leaf = rank - half;
      if (t.alternating()) leaf = half - 1 - leaf;
    }
    outward = 2 * leaf + static_cast<std::uint64_t>(side);
  }
  const Orientation o = outward < static_cast<std::uint64_t>(t.pre_slots()) ? Orientation::PreOrder
                                                                           : Orientation::InOrder;
  std::uint64_t offset;
  if (b.orient == Orientation::PreOrder) {
    offset = b.top_size + outward * b.bot_size;
  } else if (left) {
    offset = b.top_offset - (outward + 1) * b.bot_size;
  } else {
    offset = b.top_offset + b.top_size + outward * b.bot_size;
  }
  return {offset, o, left};
}

}  // namespace cobtree::detail
