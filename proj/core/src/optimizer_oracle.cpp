#include "cobtree/optimizer_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cobtree/errors.hpp"
#include "cobtree/locality.hpp"
#include "recursion.hpp"

namespace cobtree {

const char* to_string(Metric m) noexcept { return m == Metric::P0w ? "p0w" : "p1w"; }

namespace {

bool within(double value, double best) { return value <= best + 1e-12 * std::max(1.0, std::fabs(best)); }

std::uint64_t internal_nodes(int h) { return (std::uint64_t{1} << (h - 1)) - 1; }

}  // namespace

G1Assignment G1Assignment::from_mask(int h, std::uint64_t mask) {
  TreeShape shape(h);
  G1Assignment a;
  a.height = shape.height();
  a.orient.resize(internal_nodes(h));
  for (std::size_t i = 0; i < a.orient.size(); ++i) {
    a.orient[i] = (mask >> i) & 1 ? Orientation::PreOrder : Orientation::InOrder;
  }
  return a;
}

std::uint64_t G1Assignment::mask() const {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < orient.size() && i < 64; ++i) {
    if (orient[i] == Orientation::PreOrder) m |= std::uint64_t{1} << i;
  }
  return m;
}

std::string G1Assignment::to_string() const {
  std::string s;
  for (auto o : orient) s += cobtree::to_string(o);
  return s.empty() ? "-" : s;
}

namespace {

class G1Builder {
 public:
  explicit G1Builder(const G1Assignment& a) : a_(a), pos_(detail::subtree_size(a.height)) {}

  std::vector<std::uint32_t> run() {
    place(1, a_.height, a_.height >= 2 ? a_.orient[0] : Orientation::InOrder, 0, false);
    return std::move(pos_);
  }

 private:
  Orientation orient_of(NodeIndex node, int m) const {
    return m >= 2 ? a_.orient[node - 1] : Orientation::InOrder;
  }

  void place(NodeIndex node, int m, Orientation o, std::uint64_t start, bool mirrored) {
    if (m == 1) {
      pos_[node - 1] = static_cast<std::uint32_t>(start + 1);
      return;
    }
    const std::uint64_t s = detail::subtree_size(m - 1);
    const std::uint64_t n = 2 * s + 1;
    const Orientation left = orient_of(2 * node, m - 1);
    const Orientation right = orient_of(2 * node + 1, m - 1);
    if (o == Orientation::InOrder) {
      pos_[node - 1] = static_cast<std::uint32_t>(start + s + 1);
      place(2 * node, m - 1, left, start, left == Orientation::PreOrder);
      place(2 * node + 1, m - 1, right, start + s + 1, false);
      return;
    }
    auto global_start = [&](std::uint64_t local, std::uint64_t len) {
      return mirrored ? start + n - local - len : start + local;
    };
    pos_[node - 1] = static_cast<std::uint32_t>(global_start(0, 1) + 1);
    place(2 * node, m - 1, left, global_start(1, s), left == Orientation::PreOrder && mirrored);
    place(2 * node + 1, m - 1, right, global_start(1 + s, s), right == Orientation::PreOrder && mirrored);
  }

  const G1Assignment& a_;
  std::vector<std::uint32_t> pos_;
};

}  // namespace

Layout build_g1_layout(const G1Assignment& a) {
  if (a.height < 1 || a.height > kMaxMaterializedHeight) {
    throw DomainError("g=1 layouts support heights 1.." + std::to_string(kMaxMaterializedHeight));
  }
  if (a.orient.size() != internal_nodes(a.height)) {
    throw ConstructionError("assignment has " + std::to_string(a.orient.size()) +
                            " entries, expected " + std::to_string(internal_nodes(a.height)));
  }
  return Layout::from_positions(TreeShape(a.height), G1Builder(a).run());
}

G1Assignment minep_assignment(int h) {
  G1Assignment a = G1Assignment::from_mask(h, 0);
  if (a.orient.empty()) return a;
  a.orient[0] = Orientation::InOrder;
  for (std::size_t i = 0; 2 * i + 2 < a.orient.size(); ++i) {
    if (a.orient[i] == Orientation::InOrder) {
      a.orient[2 * i + 1] = a.orient[2 * i + 2] = Orientation::PreOrder;
    } else {
      a.orient[2 * i + 1] = Orientation::PreOrder;
      a.orient[2 * i + 2] = Orientation::InOrder;
    }
  }
  return a;
}

G1Assignment minwla_assignment(int h) {
  G1Assignment a = G1Assignment::from_mask(h, ~std::uint64_t{0});
  if (!a.orient.empty()) a.orient[0] = Orientation::InOrder;
  return a;
}

double metric_value(const Layout& layout, WeightScheme scheme, Metric metric) {
  const auto stats = locality_stats(layout, scheme);
  return metric == Metric::P0w ? stats.p0w : stats.p1w;
}

G1Result enumerate_g1(int h, WeightScheme scheme, Metric metric, bool full_ranking) {
  if (h < 2 || h > 5) {
    throw DomainError("exhaustive g=1 enumeration supports heights 2..5 (got " + std::to_string(h) +
                      "; 2^" + std::to_string(internal_nodes(std::clamp(h, 1, 63))) +
                      " assignments)");
  }
  const std::uint64_t total = std::uint64_t{1} << internal_nodes(h);
  std::vector<G1Ranking> all;
  all.reserve(total);
  double best = INFINITY;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const double c = metric_value(build_g1_layout(G1Assignment::from_mask(h, mask)), scheme, metric);
    all.push_back({mask, c});
    best = std::min(best, c);
  }
  G1Result result;
  result.cost = best;
  result.evaluated = total;
  for (const auto& r : all) {
    if (within(r.cost, best)) result.minimizers.push_back(G1Assignment::from_mask(h, r.mask));
  }
  if (full_ranking) {
    std::stable_sort(all.begin(), all.end(),
                     [](const G1Ranking& a, const G1Ranking& b) { return a.cost < b.cost; });
    result.ranking = std::move(all);
  }
  return result;
}

namespace {

// log2(2^x + 2^(x-1) - 1): distance from a pre-order root to the middle of its far child block.
double far_inorder_log(int x) { return std::log2(std::ldexp(1.0, x) + std::ldexp(1.0, x - 1) - 1.0); }

}  // namespace

std::vector<CostPair> dp_g1_costs(int h) {
  if (h < 2) throw DomainError("dp_g1_costs needs h >= 2");
  std::vector<CostPair> out{{2, 0.0, 0.5}};
  for (int m = 3; m <= h; ++m) {
    const CostPair& p = out.back();
    out.push_back({m, p.c_pre, 0.5 * (p.c_in + p.c_pre + far_inorder_log(m - 1))});
  }
  return out;
}

std::vector<CostPair> dp_g1_choice_costs(int h) {
  if (h < 1) throw DomainError("dp_g1_choice_costs needs h >= 1");
  std::vector<CostPair> out{{1, 0.0, 0.0}};
  for (int m = 2; m <= h; ++m) {
    const double ci = out.back().c_in, cp = out.back().c_pre;
    // A pre-order child puts its root next to the parent; an in-order child
    // puts it mid-block, 2^(m-2) away from the block edge.
    const double near = std::min(cp, ci + (m - 2));
    const double far = std::min(cp + (m - 1), ci + far_inorder_log(m - 1));
    out.push_back({m, near, 0.5 * (near + far)});
  }
  return out;
}

namespace {

struct Candidate {
  std::string name;
  Layout layout;
};

std::vector<Candidate> recursive_candidates(int h) {
  std::vector<Candidate> out;
  for (const auto& name : layout_names()) out.push_back({name, build_layout(named_spec(name), h)});
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << internal_nodes(h)); ++mask) {
    const auto a = G1Assignment::from_mask(h, mask);
    out.push_back({"g1:" + a.to_string(), build_g1_layout(a)});
  }
  // Every cut table over heights 2..h.
  std::vector<std::pair<Orientation, int>> keys;
  for (int m = 2; m <= h; ++m) {
    keys.emplace_back(Orientation::InOrder, m);
    keys.emplace_back(Orientation::PreOrder, m);
  }
  std::vector<int> g(keys.size(), 1);
  for (;;) {
    CutPolicy::TableMap table;
    std::string label;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      table[keys[i]] = g[i];
      label += std::string(to_string(keys[i].first)) + std::to_string(keys[i].second) + "=" +
               std::to_string(g[i]) + " ";
    }
    for (auto outer : {Orientation::InOrder, Orientation::PreOrder}) {
      for (auto k : {FirstInOrder::One, FirstInOrder::Two, FirstInOrder::Never}) {
        for (bool alt : {false, true}) {
          const LayoutSpec spec{outer, k, CutPolicy::table(table), alt};
          out.push_back({spec.to_string() + " [" + label + "]", build_layout(spec, h)});
        }
      }
    }
    std::size_t i = 0;
    while (i < keys.size() && ++g[i] >= keys[i].second) g[i++] = 1;
    if (i == keys.size()) break;
  }
  return out;
}

}  // namespace

TinyOptimum best_permutation_tiny(int h, WeightScheme scheme, Metric metric) {
  if (h < 1 || h > 3) {
    throw DomainError("unrestricted permutation search supports heights 1..3 (got " +
                      std::to_string(h) + ")");
  }
  TinyOptimum best;
  if (h == 1) {
    best.positions = {1};
    best.attained_by = "single node";
    return best;
  }
  const TreeShape shape(h);
  std::vector<std::uint32_t> perm(shape.node_count());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::uint32_t>(i + 1);
  best.cost = INFINITY;
  do {
    const double c = metric_value(Layout::from_positions(shape, perm), scheme, metric);
    if (c < best.cost) {
      best.cost = c;
      best.positions = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  best.recursive_attains = false;
  for (const auto& cand : recursive_candidates(h)) {
    if (within(metric_value(cand.layout, scheme, metric), best.cost)) {
      best.recursive_attains = true;
      best.attained_by = cand.name;
      break;
    }
  }
  return best;
}

CutTableResult optimal_cut_heights(int h_max, WeightScheme scheme, FirstInOrder k, bool alternating) {
  if (h_max < 2 || h_max > 12) {
    throw DomainError("optimal cut search supports h_max in 2..12 (got " + std::to_string(h_max) + ")");
  }
  CutPolicy::TableMap table;
  CutTableResult result;
  for (int m = 2; m <= h_max; ++m) {
    const TreeShape shape(m);
    std::vector<double> weight(m);
    for (int d = 1; d < m; ++d) weight[d] = edge_weight(d, shape, scheme);
    for (auto o : {Orientation::InOrder, Orientation::PreOrder}) {
      CutChoice choice;
      for (int g = 1; g <= m / 2; ++g) {
        table[{o, m}] = g;
        const auto layout = build_layout(LayoutSpec{o, k, CutPolicy::table(table), alternating}, m);
        const auto lengths = edge_lengths(layout);
        double cost = 0;
        for (NodeIndex c = 2; c <= layout.size(); ++c) {
          cost += weight[level_of_index(c)] * std::log2(static_cast<double>(lengths[c - 2]));
        }
        choice.costs.push_back(cost);
      }
      const double best = *std::min_element(choice.costs.begin(), choice.costs.end());
      for (std::size_t i = 0; i < choice.costs.size(); ++i) {
        if (choice.costs[i] <= best + 1e-9 * std::max(1.0, std::fabs(best))) {
          choice.ties.push_back(static_cast<int>(i) + 1);
        }
      }
      choice.g = choice.ties.back();
      table[{o, m}] = choice.g;
      result[{o, m}] = std::move(choice);
    }
  }
  return result;
}

std::vector<CheckResult> verify_recurrence_inequalities(int h_max) {
  if (h_max < 3) throw DomainError("recurrence checks need h_max >= 3");
  const auto closed = dp_g1_costs(h_max);       // closed[i] is height i + 2
  const auto choice = dp_g1_choice_costs(h_max);  // choice[i] is height i + 1
  constexpr double tol = 1e-9;

  struct Tracker {
    std::string name;
    double worst = INFINITY;
    int worst_h = 0;
    void add(double slack, int h) {
      if (slack < worst) {
        worst = slack;
        worst_h = h;
      }
    }
  };
  Tracker ineq3{"recurrence-inequality-near-preorder"}, ineq4{"recurrence-inequality-far-inorder"};
  Tracker eq_in{"recurrence-inorder-equality"}, eq_pre{"recurrence-preorder-equality"};
  for (int h = 3; h <= h_max; ++h) {
    const CostPair& prev = closed[h - 3];
    ineq3.add(prev.c_in + (h - 2) - prev.c_pre, h);
    ineq4.add(prev.c_pre + (h - 1) - (prev.c_in + far_inorder_log(h - 1)), h);
  }
  for (int h = 2; h <= h_max; ++h) {
    eq_in.add(-std::fabs(choice[h - 1].c_in - closed[h - 2].c_in), h);
    eq_pre.add(-std::fabs(choice[h - 1].c_pre - closed[h - 2].c_pre), h);
  }
  std::vector<CheckResult> out;
  for (const Tracker* t : {&ineq3, &ineq4}) {
    std::ostringstream os;
    os << "h=3.." << h_max << " min_slack=" << t->worst << " at h=" << t->worst_h;
    out.push_back({t->name, t->worst >= -tol, os.str()});
  }
  for (const Tracker* t : {&eq_in, &eq_pre}) {
    std::ostringstream os;
    os << "h=2.." << h_max << " max_diff=" << -t->worst << " at h=" << t->worst_h;
    out.push_back({t->name, t->worst >= -tol, os.str()});
  }
  return out;
}

std::vector<BranchComparison> branch_comparisons(const LayoutSpec& spec, int h) {
  if (h < 1 || h > kMaxMaterializedHeight) {
    throw DomainError("branch comparisons support heights 1.." + std::to_string(kMaxMaterializedHeight));
  }
  const detail::CutTable outer_table(spec, h);
  const int pre_slots = outer_table.pre_slots();

  std::set<std::pair<Orientation, int>> seen;
  std::vector<std::pair<Orientation, int>> order, work{{spec.outer, h}};
  while (!work.empty()) {
    auto [o, m] = work.back();
    work.pop_back();
    if (m < 2 || !seen.insert({o, m}).second) continue;
    order.emplace_back(o, m);
    const int g = outer_table.cut(o, m);
    work.emplace_back(o, g);
    const std::uint64_t per_side = std::uint64_t{1} << (o == Orientation::PreOrder ? g : g - 1);
    if (pre_slots > 0) work.emplace_back(Orientation::PreOrder, m - g);
    if (per_side > static_cast<std::uint64_t>(pre_slots)) work.emplace_back(Orientation::InOrder, m - g);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; });

  std::vector<BranchComparison> out;
  for (const auto& [o, m] : order) {
    LayoutSpec plain = spec;
    plain.outer = o;
    plain.alternating = false;
    LayoutSpec alt = alternate(plain);
    const detail::CutTable plain_table(plain, m), alt_table(alt, m);
    const detail::Branch br(o, m, plain_table.cut(o, m));

    const Layout top = build_layout(alt, br.g);
    std::vector<std::uint64_t> leaf_pos;
    for (NodeIndex leaf = NodeIndex{1} << (br.g - 1); leaf < (NodeIndex{1} << br.g); ++leaf) {
      leaf_pos.push_back(br.top_offset + top[leaf] - 1);
    }
    std::sort(leaf_pos.begin(), leaf_pos.end());

    auto root_of = [&](const detail::BottomPlacement& bp) {
      if (bp.orient == Orientation::InOrder) return bp.offset + (br.bot_size - 1) / 2;
      return bp.left_side ? bp.offset + br.bot_size - 1 : bp.offset;
    };
    BranchComparison cmp{o, m, br.g};
    for (std::uint64_t rank = 0; rank < leaf_pos.size(); ++rank) {
      for (int side = 0; side < 2; ++side) {
        for (bool use_alt : {false, true}) {
          const auto bp = detail::place_bottom(br, use_alt ? alt_table : plain_table, rank, side);
          const std::uint64_t r = root_of(bp);
          const double len = static_cast<double>(r > leaf_pos[rank] ? r - leaf_pos[rank] : leaf_pos[rank] - r);
          (use_alt ? cmp.alt_sum : cmp.plain_sum) += len;
          (use_alt ? cmp.alt_log_product : cmp.plain_log_product) += std::log(len);
        }
      }
    }
    out.push_back(cmp);
  }
  return out;
}

}  // namespace cobtree
