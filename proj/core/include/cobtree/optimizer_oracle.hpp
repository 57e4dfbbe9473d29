#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cobtree/layout.hpp"
#include "cobtree/layout_spec.hpp"
#include "cobtree/tree_model.hpp"

namespace cobtree {

enum class Metric { P0w, P1w };

const char* to_string(Metric m) noexcept;

/// Cut-height-1 layout described node by node: each node whose subtree has
/// height >= 2 is placed in-order (between its child blocks) or pre-order (at
/// the end of its block facing its parent, children outward left then right).
struct G1Assignment {
  int height = 1;
  /// Indexed by bfs - 1 for the 2^(h-1) - 1 internal nodes.
  std::vector<Orientation> orient;

  /// Bit i of `mask` set means node i + 1 is pre-order.
  static G1Assignment from_mask(int h, std::uint64_t mask);
  std::uint64_t mask() const;
  std::string to_string() const;

  friend bool operator==(const G1Assignment&, const G1Assignment&) = default;
};

Layout build_g1_layout(const G1Assignment& a);

/// In-order root; in-order nodes get two pre-order children; pre-order nodes
/// get a pre-order near child and an in-order far child.
G1Assignment minep_assignment(int h);
/// In-order root, every other node pre-order.
G1Assignment minwla_assignment(int h);

double metric_value(const Layout& layout, WeightScheme scheme, Metric metric);

struct G1Ranking {
  std::uint64_t mask;
  double cost;
};

struct G1Result {
  std::vector<G1Assignment> minimizers;  // all assignments within tolerance of the best
  double cost = 0;                       // metric value of the minimizers
  std::uint64_t evaluated = 0;
  std::vector<G1Ranking> ranking;        // ascending cost, only when requested
};

/// Exhaustive search over all 2^(2^(h-1)-1) assignments. Throws DomainError for h > 5.
G1Result enumerate_g1(int h, WeightScheme scheme, Metric metric, bool full_ranking = false);

/// C_I and C_P: the base-2 weighted log-length sum (geometric weights relative
/// to the subtree root) of the best g = 1 arrangement with an in-order or
/// pre-order root.
struct CostPair {
  int height = 0;
  double c_in = 0;
  double c_pre = 0;
};

/// Closed-form recurrences, heights 2..h. Throws DomainError for h < 2.
std::vector<CostPair> dp_g1_costs(int h);

/// Same quantity from an explicit minimum over child placements at each node,
/// heights 1..h. Independent of the closed form.
std::vector<CostPair> dp_g1_choice_costs(int h);

struct TinyOptimum {
  std::vector<std::uint32_t> positions;  // by bfs - 1
  double cost = 1;
  bool recursive_attains = true;
  std::string attained_by;               // first Recursive Layout reaching the optimum
};

/// Exhaustive search over all (2^h - 1)! permutations. Throws DomainError for h > 3.
TinyOptimum best_permutation_tiny(int h, WeightScheme scheme, Metric metric);

struct CutChoice {
  int g = 1;                  // chosen cut (largest among ties)
  std::vector<int> ties;      // every g whose cost is within tolerance of the best
  std::vector<double> costs;  // cost for g = 1..floor(m/2)
};

using CutTableResult = std::map<std::pair<Orientation, int>, CutChoice>;

/// Memoized search, heights 2..h_max: each (orientation, m) tries every
/// g in [1, floor(m/2)] with all smaller heights fixed at their optimum, and
/// keeps the g minimizing the subtree's weighted log-length sum.
/// Throws DomainError unless 2 <= h_max <= 12.
CutTableResult optimal_cut_heights(int h_max, WeightScheme scheme,
                                   FirstInOrder k = FirstInOrder::Two, bool alternating = true);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Inequalities and the closed-form/choice agreement for 3 <= h <= h_max.
std::vector<CheckResult> verify_recurrence_inequalities(int h_max);

/// Connecting edges between the top subtree and its bottoms at one branch
/// type, with the leaf-to-bottom assignment in plain and reversed order.
struct BranchComparison {
  Orientation orient;
  int m = 0;
  int g = 0;
  double plain_sum = 0, alt_sum = 0;
  double plain_log_product = 0, alt_log_product = 0;  // natural log
};

/// Every branch type the spec reaches at height h, evaluated with identical
/// sub-arrangements (the alternating build of the top subtree).
std::vector<BranchComparison> branch_comparisons(const LayoutSpec& spec, int h);

}  // namespace cobtree
