#include "cobtree/locality.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cobtree/errors.hpp"

namespace cobtree {

namespace {

void require_edges(const Layout& layout) {
  if (layout.height() < 2) throw DomainError("locality measures need a tree of height >= 2");
}

std::uint64_t distance(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

}  // namespace

std::vector<std::uint64_t> edge_lengths(const Layout& layout) {
  const std::uint64_t n = layout.size();
  std::vector<std::uint64_t> out(n > 0 ? n - 1 : 0);
  for (NodeIndex c = 2; c <= n; ++c) out[c - 2] = distance(layout[c], layout[c / 2]);
  return out;
}

LocalityStats locality_stats(const Layout& layout, WeightScheme scheme) {
  require_edges(layout);
  const TreeShape& shape = layout.shape();
  double sum_w = 0, sum_wlog = 0, sum_wl = 0, sum_l = 0;
  std::uint64_t longest = 0, count = 0;
  for (int d = 1; d < shape.height(); ++d) {
    const double w = edge_weight(d, shape, scheme);
    const NodeIndex first = NodeIndex{1} << d;
    for (NodeIndex c = first; c < 2 * first; ++c) {
      const std::uint64_t l = distance(layout[c], layout[c / 2]);
      sum_w += w;
      sum_wlog += w * std::log(static_cast<double>(l));
      sum_wl += w * static_cast<double>(l);
      sum_l += static_cast<double>(l);
      longest = std::max(longest, l);
      ++count;
    }
  }
  return {std::exp(sum_wlog / sum_w), sum_wl / sum_w, sum_l / static_cast<double>(count), longest};
}

LengthHistogram::LengthHistogram(const Layout& layout, WeightScheme scheme) {
  require_edges(layout);
  const TreeShape& shape = layout.shape();
  std::map<std::uint64_t, double> acc;
  double total = 0;
  for (int d = 1; d < shape.height(); ++d) {
    const double w = edge_weight(d, shape, scheme);
    const NodeIndex first = NodeIndex{1} << d;
    for (NodeIndex c = first; c < 2 * first; ++c) {
      acc[distance(layout[c], layout[c / 2])] += w;
      total += w;
    }
  }
  lengths_.reserve(acc.size());
  weights_.reserve(acc.size());
  prefix_w_.assign(1, 0.0);
  prefix_wl_.assign(1, 0.0);
  for (const auto& [l, w] : acc) {
    lengths_.push_back(l);
    weights_.push_back(w / total);
    prefix_w_.push_back(prefix_w_.back() + w / total);
    prefix_wl_.push_back(prefix_wl_.back() + w / total * static_cast<double>(l));
  }
}

double LengthHistogram::cdf(std::uint64_t length) const {
  const auto k = std::upper_bound(lengths_.begin(), lengths_.end(), length) - lengths_.begin();
  return k == static_cast<std::ptrdiff_t>(lengths_.size()) ? 1.0 : prefix_w_[k];
}

double LengthHistogram::beta(std::uint64_t n) const {
  if (n == 0) throw DomainError("block size must be >= 1");
  const auto k = std::upper_bound(lengths_.begin(), lengths_.end(), n) - lengths_.begin();
  const double within = prefix_wl_[k] / static_cast<double>(n);
  const double beyond = k == static_cast<std::ptrdiff_t>(lengths_.size()) ? 0.0 : 1.0 - prefix_w_[k];
  return within + std::max(beyond, 0.0);
}

double block_transitions(const Layout& layout, WeightScheme scheme, std::uint64_t n) {
  if (n == 0) throw DomainError("block size must be >= 1");
  return LengthHistogram(layout, scheme).beta(n);
}

BetaCurve beta_curve(const Layout& layout, WeightScheme scheme,
                     const std::vector<std::uint64_t>& block_sizes) {
  const LengthHistogram hist(layout, scheme);
  BetaCurve curve{block_sizes, {}};
  curve.values.reserve(block_sizes.size());
  for (auto n : block_sizes) curve.values.push_back(hist.beta(n));
  return curve;
}

double acmr_mu(std::uint64_t length, std::uint64_t base) {
  if (base < 2) throw DomainError("acmr base must be >= 2");
  if (length == 0) throw DomainError("edge length must be >= 1");
  // f = floor(log_base(length)), computed exactly; power = base^f.
  int f = 0;
  std::uint64_t power = 1;
  while (power <= length / base) {
    power *= base;
    ++f;
  }
  return f + static_cast<double>(length) / static_cast<double>(power) / static_cast<double>(base - 1);
}

AcmrResult acmr(const Layout& layout, WeightScheme scheme, std::uint64_t base) {
  if (base < 2) throw DomainError("acmr base must be >= 2");
  const LengthHistogram hist(layout, scheme);
  double exact = 0;
  for (std::size_t i = 0; i < hist.lengths().size(); ++i) {
    exact += hist.weights()[i] * acmr_mu(hist.lengths()[i], base);
  }
  const double p0w = locality_stats(layout, scheme).p0w;
  return {exact, std::log(p0w) / std::log(static_cast<double>(base))};
}

std::vector<CdfPoint> weight_cdf(const Layout& layout, WeightScheme scheme) {
  const LengthHistogram hist(layout, scheme);
  std::vector<CdfPoint> out;
  out.reserve(hist.lengths().size());
  double run = 0;
  for (std::size_t i = 0; i < hist.lengths().size(); ++i) {
    run += hist.weights()[i];
    out.push_back({hist.lengths()[i], i + 1 == hist.lengths().size() ? 1.0 : run});
  }
  return out;
}

}  // namespace cobtree
