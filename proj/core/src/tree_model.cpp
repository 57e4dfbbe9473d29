#include "cobtree/tree_model.hpp"

#include <cmath>
#include <string>

#include "cobtree/errors.hpp"

namespace cobtree {

TreeShape::TreeShape(int height) : height_(height) {
  if (height < 1 || height > kMaxHeight) {
    throw DomainError("tree height must lie in [1, " + std::to_string(kMaxHeight) +
                      "], got " + std::to_string(height));
  }
}

int TreeShape::level_of(NodeIndex i) const {
  if (!contains(i)) {
    throw DomainError("node index " + std::to_string(i) + " outside [1, " +
                      std::to_string(node_count()) + "]");
  }
  return level_of_index(i);
}

const char* to_string(WeightScheme scheme) noexcept {
  return scheme == WeightScheme::Geometric ? "geometric" : "exact";
}

double edge_weight(int child_level, const TreeShape& shape, WeightScheme scheme) {
  const int h = shape.height();
  if (child_level < 1 || child_level > h - 1) {
    throw DomainError("edge child level " + std::to_string(child_level) + " outside [1, " +
                      std::to_string(h - 1) + "]");
  }
  if (scheme == WeightScheme::Geometric) return std::ldexp(1.0, -child_level);
  const double below = std::ldexp(1.0, h - child_level) - 1.0;
  return below / (std::ldexp(1.0, h) - 1.0);
}

double total_weight(const TreeShape& shape, WeightScheme scheme) {
  double sum = 0.0;
  for (int d = 1; d < shape.height(); ++d) {
    sum += std::ldexp(1.0, d) * edge_weight(d, shape, scheme);
  }
  return sum;
}

std::vector<Edge> edges(const TreeShape& shape) {
  std::vector<Edge> out;
  out.reserve(shape.edge_count());
  for (NodeIndex c = 2; c <= shape.node_count(); ++c) {
    out.push_back(Edge{c / 2, c, level_of_index(c)});
  }
  return out;
}

std::uint64_t inorder_rank(NodeIndex i, const TreeShape& shape) {
  const int d = shape.level_of(i);
  const int below = shape.height() - 1 - d;
  return ((i - (NodeIndex{1} << d)) << (below + 1)) + (NodeIndex{1} << below);
}

}  // namespace cobtree
