#include "cobtree/layout.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <utility>

#include "cobtree/errors.hpp"
#include "recursion.hpp"

namespace cobtree {

Layout Layout::from_positions(TreeShape shape, std::vector<std::uint32_t> positions) {
  const std::uint64_t n = shape.node_count();
  if (positions.size() != n) {
    throw ConstructionError("expected " + std::to_string(n) + " positions, got " +
                            std::to_string(positions.size()));
  }
  std::vector<bool> seen(n + 1, false);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint32_t p = positions[i];
    if (p < 1 || p > n) {
      throw ConstructionError("position " + std::to_string(p) + " of node " + std::to_string(i + 1) +
                              " outside [1, " + std::to_string(n) + "]");
    }
    if (seen[p]) throw ConstructionError("position " + std::to_string(p) + " assigned twice");
    seen[p] = true;
  }
  return Layout(shape, std::move(positions));
}

Position Layout::position(NodeIndex bfs) const {
  if (!shape_.contains(bfs)) {
    throw DomainError("node index " + std::to_string(bfs) + " outside tree of height " +
                      std::to_string(height()));
  }
  return positions_[bfs - 1];
}

std::vector<std::uint32_t> Layout::inverse() const {
  std::vector<std::uint32_t> out(positions_.size());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    out[positions_[i] - 1] = static_cast<std::uint32_t>(i + 1);
  }
  return out;
}

namespace {

class Builder {
 public:
  Builder(const LayoutSpec& spec, int h) : table_(spec, h), pos_(detail::subtree_size(h)) {
    scratch_.resize(static_cast<std::size_t>(h) + 1);
  }

  std::vector<std::uint32_t> run(Orientation outer, int h) {
    place(1, h, outer, 0, false, 0);
    return std::move(pos_);
  }

 private:
  // Places the subtree rooted at `root` of height m into global slots
  // [start, start + 2^m - 1). A mirrored frame fills its block right to left.
  void place(NodeIndex root, int m, Orientation o, std::uint64_t start, bool mirrored, int depth) {
    if (m == 1) {
      pos_[root - 1] = static_cast<std::uint32_t>(start + 1);
      return;
    }
    const detail::Branch br(o, m, table_.cut(o, m));
    const std::uint64_t n = detail::subtree_size(m);
    auto global_start = [&](std::uint64_t local, std::uint64_t len) {
      return mirrored ? start + n - local - len : start + local;
    };

    place(root, br.g, o, global_start(br.top_offset, br.top_size), mirrored, depth + 1);

    // Leaves of A in local ascending order.
    const NodeIndex first_leaf = root << (br.g - 1);
    auto& leaves = scratch_[depth];
    leaves.clear();
    for (std::uint64_t i = 0; i < br.leaves; ++i) {
      leaves.emplace_back(pos_[first_leaf + i - 1], first_leaf + i);
    }
    std::sort(leaves.begin(), leaves.end());
    if (mirrored) std::reverse(leaves.begin(), leaves.end());

    // Recursive calls below only touch deeper scratch slots.
    for (std::uint64_t rank = 0; rank < leaves.size(); ++rank) {
      const NodeIndex leaf = leaves[rank].second;
      for (int side = 0; side < 2; ++side) {
        const auto bp = detail::place_bottom(br, table_, rank, side);
        const bool child_mirror = bp.orient == Orientation::PreOrder && (mirrored != bp.left_side);
        place(2 * leaf + static_cast<NodeIndex>(side), m - br.g, bp.orient,
              global_start(bp.offset, br.bot_size), child_mirror, depth + 1);
      }
    }
  }

  detail::CutTable table_;
  std::vector<std::uint32_t> pos_;
  std::vector<std::vector<std::pair<std::uint32_t, NodeIndex>>> scratch_;
};

}  // namespace

Layout build_layout(const LayoutSpec& spec, int h) {
  if (h < 1 || h > kMaxMaterializedHeight) {
    throw DomainError("build_layout supports heights 1.." + std::to_string(kMaxMaterializedHeight) +
                      ", got " + std::to_string(h));
  }
  Builder b(spec, h);
  return Layout::from_positions(TreeShape(h), b.run(spec.outer, h));
}

bool layout_equal(const Layout& a, const Layout& b) {
  if (a.height() != b.height()) {
    throw DomainError("cannot compare layouts of heights " + std::to_string(a.height()) + " and " +
                      std::to_string(b.height()));
  }
  return std::equal(a.positions().begin(), a.positions().end(), b.positions().begin());
}

void write_permutation(std::ostream& out, const Layout& layout) {
  out << "bfs,pos\n";
  const auto pos = layout.positions();
  for (std::size_t i = 0; i < pos.size(); ++i) out << (i + 1) << ',' << pos[i] << '\n';
}

Layout read_permutation(std::istream& in) {
  std::string line;
  std::uint64_t line_no = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (rows.empty() && line_no == 1 && line == "bfs,pos") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'bfs,pos'");
    }
    try {
      std::size_t used_a = 0, used_b = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const auto bfs = std::stoull(a, &used_a);
      const auto pos = std::stoull(b, &used_b);
      if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing");
      rows.emplace_back(bfs, pos);
    } catch (const std::logic_error&) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected two unsigned integers");
    }
  }
  const std::uint64_t n = rows.size();
  int h = 0;
  while (h < kMaxMaterializedHeight && detail::subtree_size(h) < n) ++h;
  if (n == 0 || detail::subtree_size(h) != n) {
    throw ConfigError("permutation has " + std::to_string(n) + " rows, not 2^h - 1");
  }
  std::vector<std::uint32_t> positions(n, 0);
  for (const auto& [bfs, pos] : rows) {
    if (bfs < 1 || bfs > n) throw ConfigError("bfs index " + std::to_string(bfs) + " out of range");
    if (positions[bfs - 1] != 0) throw ConfigError("bfs index " + std::to_string(bfs) + " repeated");
    if (pos > n) throw ConstructionError("position " + std::to_string(pos) + " out of range");
    positions[bfs - 1] = static_cast<std::uint32_t>(pos);
  }
  return Layout::from_positions(TreeShape(h), std::move(positions));
}

}  // namespace cobtree
