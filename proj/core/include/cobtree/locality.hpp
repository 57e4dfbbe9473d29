#pragma once

#include <cstdint>
#include <vector>

#include "cobtree/layout.hpp"
#include "cobtree/tree_model.hpp"

namespace cobtree {

/// |position(parent) - position(child)| per edge; element i belongs to the
/// edge whose child has breadth-first index i + 2.
std::vector<std::uint64_t> edge_lengths(const Layout& layout);

struct LocalityStats {
  double p0w = 0;          // weighted geometric mean edge length
  double p1w = 0;          // weighted arithmetic mean edge length
  double p1 = 0;           // unweighted mean edge length
  std::uint64_t pinf = 0;  // longest edge
};

/// Throws DomainError for h < 2.
LocalityStats locality_stats(const Layout& layout, WeightScheme scheme = WeightScheme::Geometric);

/// Total edge weight per distinct edge length, normalized so the weights sum to 1.
class LengthHistogram {
 public:
  /// Throws DomainError for h < 2.
  LengthHistogram(const Layout& layout, WeightScheme scheme);

  const std::vector<std::uint64_t>& lengths() const noexcept { return lengths_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::uint64_t max_length() const noexcept { return lengths_.back(); }

  /// Fraction of weight on edges no longer than `length`.
  double cdf(std::uint64_t length) const;
  /// Weighted mean of min(l / n, 1). Throws DomainError for n = 0.
  double beta(std::uint64_t n) const;
  /// Weighted mean edge length.
  double mean() const noexcept { return prefix_wl_.back(); }

 private:
  std::vector<std::uint64_t> lengths_;
  std::vector<double> weights_;
  std::vector<double> prefix_w_;   // prefix_w_[i] = sum of weights_[0..i)
  std::vector<double> prefix_wl_;  // same for weight * length
};

/// Probability that a weighted random edge crosses a block boundary for blocks
/// of `n` nodes at uniformly random alignment. Throws DomainError for n = 0.
double block_transitions(const Layout& layout, WeightScheme scheme, std::uint64_t n);

struct BetaCurve {
  std::vector<std::uint64_t> block_sizes;
  std::vector<double> values;
};

BetaCurve beta_curve(const Layout& layout, WeightScheme scheme,
                     const std::vector<std::uint64_t>& block_sizes);

/// Expected misses summed over an infinite hierarchy of block sizes b, b^2, ...
/// for an edge of length `length`. Throws DomainError for base < 2 or length 0.
double acmr_mu(std::uint64_t length, std::uint64_t base);

struct AcmrResult {
  double exact = 0;       // weighted mean of acmr_mu
  double log_approx = 0;  // log_base(p0w)
};

/// Throws DomainError for base < 2 or h < 2.
AcmrResult acmr(const Layout& layout, WeightScheme scheme, std::uint64_t base);

struct CdfPoint {
  std::uint64_t length;
  double fraction;
};

/// Cumulative weight fraction at each distinct edge length, ascending.
std::vector<CdfPoint> weight_cdf(const Layout& layout, WeightScheme scheme);

}  // namespace cobtree
