#include "cobtree/implicit_index.hpp"

#include "cobtree/errors.hpp"
#include "recursion.hpp"

namespace cobtree {

int cut_height(const LayoutSpec& spec, Orientation orientation, int m) {
  return spec.cut(orientation, m);
}

namespace {

struct Frame {
  NodeIndex root;
  int depth;  // level of root
  int m;
  Orientation orient;
  std::uint64_t start;  // global 0-based slot of the block
  bool mirrored;
};

}  // namespace

struct IndexTranslator::Impl {
  detail::CutTable table;
  Orientation outer;
  int h;

  // Rank of leaf `p` of frame f among f's leaves, in f's local order.
  std::uint64_t leaf_rank(const Frame& f, NodeIndex p) const {
    if (f.m == 1) return 0;
    const detail::Branch br(f.orient, f.m, table.cut(f.orient, f.m));
    const NodeIndex b = p >> (f.m - 1 - br.g);
    const Frame top{f.root, f.depth, br.g, f.orient, 0, f.mirrored};
    const auto bp = detail::place_bottom(br, table, leaf_rank(top, b >> 1), static_cast<int>(b & 1));
    const std::uint64_t before = bp.offset < br.top_offset ? bp.offset / br.bot_size
                                                           : (bp.offset - br.top_size) / br.bot_size;
    const bool bm = bp.orient == Orientation::PreOrder && (f.mirrored != bp.left_side);
    const Frame bottom{b, f.depth + br.g, f.m - br.g, bp.orient, 0, bm};
    const std::uint64_t count = std::uint64_t{1} << (f.m - br.g - 1);
    std::uint64_t inner = leaf_rank(bottom, p);
    if (bm != f.mirrored) inner = count - 1 - inner;
    return before * count + inner;
  }

  Position locate(NodeIndex t, int t_depth) const {
    Frame f{1, 0, h, outer, 0, false};
    while (f.m > 1) {
      const detail::Branch br(f.orient, f.m, table.cut(f.orient, f.m));
      const std::uint64_t n = detail::subtree_size(f.m);
      auto global_start = [&](std::uint64_t local, std::uint64_t len) {
        return f.mirrored ? f.start + n - local - len : f.start + local;
      };
      const int rel = t_depth - f.depth;
      if (rel < br.g) {
        f.start = global_start(br.top_offset, br.top_size);
        f.m = br.g;
        continue;
      }
      const NodeIndex b = t >> (rel - br.g);
      const Frame top{f.root, f.depth, br.g, f.orient, 0, f.mirrored};
      const auto bp = detail::place_bottom(br, table, leaf_rank(top, b >> 1), static_cast<int>(b & 1));
      f = Frame{b,
                f.depth + br.g,
                f.m - br.g,
                bp.orient,
                global_start(bp.offset, br.bot_size),
                bp.orient == Orientation::PreOrder && (f.mirrored != bp.left_side)};
    }
    return f.start + 1;
  }
};

IndexTranslator::IndexTranslator(const LayoutSpec& spec, int h)
    : shape_(h), impl_(std::make_shared<const Impl>(Impl{detail::CutTable(spec, h), spec.outer, h})) {}

Position IndexTranslator::operator()(NodeIndex bfs) const {
  if (!shape_.contains(bfs)) {
    throw DomainError("node index " + std::to_string(bfs) + " outside tree of height " +
                      std::to_string(shape_.height()));
  }
  return impl_->locate(bfs, level_of_index(bfs));
}

Position IndexTranslator::at(NodeIndex bfs, int depth) const { return impl_->locate(bfs, depth); }

Position translate_index(const LayoutSpec& spec, int h, NodeIndex bfs) {
  return IndexTranslator(spec, h)(bfs);
}

std::vector<SearchStep> search_path(const IndexTranslator& tr, NodeIndex target) {
  const Position last = tr(target);
  const int depth = level_of_index(target);
  std::vector<SearchStep> path(static_cast<std::size_t>(depth) + 1);
  path[depth] = {target, depth, last};
  NodeIndex node = target;
  for (int d = depth - 1; d >= 0; --d) {
    node >>= 1;
    path[d] = {node, d, tr.at(node, d)};
  }
  return path;
}

std::vector<SearchStep> search_path(const LayoutSpec& spec, int h, NodeIndex target) {
  return search_path(IndexTranslator(spec, h), target);
}

}  // namespace cobtree
