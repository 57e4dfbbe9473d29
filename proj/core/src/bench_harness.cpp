#include "cobtree/bench_harness.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>

#include "cobtree/errors.hpp"
#include "cobtree/implicit_index.hpp"
#include "cobtree/layout.hpp"

namespace cobtree {

const char* to_string(BenchMode m) noexcept {
  switch (m) {
    case BenchMode::ExplicitLink:
      return "explicit_link";
    case BenchMode::Implicit:
      return "implicit";
    case BenchMode::ImplicitNoMemory:
      return "implicit_no_memory";
  }
  return "?";
}

BenchMode parse_bench_mode(const std::string& s) {
  for (auto m : {BenchMode::ExplicitLink, BenchMode::Implicit, BenchMode::ImplicitNoMemory}) {
    if (s == to_string(m)) return m;
  }
  throw LookupError("unknown bench mode '" + s + "' (explicit_link, implicit, implicit_no_memory)");
}

std::vector<NodeIndex> generate_targets(int h, std::uint64_t count, std::uint64_t seed) {
  const TreeShape shape(h);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeIndex> dist(1, shape.node_count());
  std::vector<NodeIndex> out(count);
  for (auto& t : out) t = dist(rng);
  return out;
}

namespace {

struct Node {
  std::uint32_t key;
  std::uint32_t left;   // position of left child, 0 at a leaf
  std::uint32_t right;
};

std::uint64_t available_memory() {
  const long pages = sysconf(_SC_AVPHYS_PAGES);
  const long page = sysconf(_SC_PAGESIZE);
  if (pages <= 0 || page <= 0) return UINT64_MAX;
  return static_cast<std::uint64_t>(pages) * static_cast<std::uint64_t>(page);
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double idx = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (idx - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Each searcher returns the final position of every search through `sink`
// (validation pass) or folds them into a checksum (timed pass).

class ExplicitSearcher {
 public:
  ExplicitSearcher(const Layout& layout, const IndexTranslator& tr) {
    const std::uint64_t n = layout.size();
    nodes_.resize(n);
    for (NodeIndex i = 1; i <= n; ++i) {
      Node& node = nodes_[layout[i] - 1];
      node.key = static_cast<std::uint32_t>(inorder_rank(i, layout.shape()));
      node.left = 2 * i <= n ? static_cast<std::uint32_t>(layout[2 * i]) : 0;
      node.right = 2 * i + 1 <= n ? static_cast<std::uint32_t>(layout[2 * i + 1]) : 0;
    }
    root_ = static_cast<std::uint32_t>(layout[1]);
    // The table must agree with the index arithmetic.
    for (NodeIndex i = 1; i <= n; ++i) {
      const Node& node = nodes_[tr(i) - 1];
      if (2 * i <= n && (node.left != tr(2 * i) || node.right != tr(2 * i + 1))) {
        throw ConstructionError("explicit link table disagrees with translate_index at node " +
                                std::to_string(i));
      }
    }
  }

  std::uint64_t search(std::uint64_t key) const {
    std::uint32_t pos = root_;
    for (;;) {
      const Node& node = nodes_[pos - 1];
      if (node.key == key) return pos;
      pos = key < node.key ? node.left : node.right;
    }
  }

 private:
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
};

class ImplicitSearcher {
 public:
  ImplicitSearcher(const IndexTranslator& tr, int h, bool with_memory) : tr_(tr), h_(h) {
    if (!with_memory) return;
    const TreeShape shape(h);
    keys_.resize(shape.node_count());
    for (NodeIndex i = 1; i <= shape.node_count(); ++i) {
      keys_[tr(i) - 1] = static_cast<std::uint32_t>(inorder_rank(i, shape));
    }
  }

  std::uint64_t search(std::uint64_t key) const {
    NodeIndex i = 1;
    for (int d = 0;; ++d) {
      const Position pos = tr_.at(i, d);
      const int below = h_ - 1 - d;
      const std::uint64_t node_key =
          keys_.empty() ? ((i - (NodeIndex{1} << d)) << (below + 1)) + (std::uint64_t{1} << below) : keys_[pos - 1];
      if (node_key == key) return pos;
      i = 2 * i + (key < node_key ? 0 : 1);
    }
  }

 private:
  const IndexTranslator& tr_;
  int h_;
  std::vector<std::uint32_t> keys_;
};

template <class Searcher>
void run_passes(const Searcher& s, const IndexTranslator& tr, const TreeShape& shape,
                const std::vector<NodeIndex>& targets, BenchReport& report) {
  std::vector<std::uint64_t> keys(targets.size());
  for (std::size_t q = 0; q < targets.size(); ++q) keys[q] = inorder_rank(targets[q], shape);

  std::uint64_t expected = 0;
  for (std::size_t q = 0; q < targets.size(); ++q) {
    const std::uint64_t got = s.search(keys[q]);
    const Position want = tr(targets[q]);
    if (got != want) {
      throw Error("search for node " + std::to_string(targets[q]) + " ended at position " + std::to_string(got) +
                  ", expected " + std::to_string(want));
    }
    expected += got;
  }
  report.validated_searches = targets.size();

  for (int r = 0; r < report.runs; ++r) {
    std::uint64_t checksum = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t key : keys) checksum += s.search(key);
    const auto t1 = std::chrono::steady_clock::now();
    if (checksum != expected) throw Error("timed pass produced a different checksum");
    report.run_ns_per_search.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() /
                                       static_cast<double>(targets.size()));
  }
}

}  // namespace

std::uint64_t bench_memory_bytes(int h, BenchMode mode) {
  const std::uint64_t n = TreeShape(h).node_count();
  switch (mode) {
    case BenchMode::ExplicitLink:
      return n * (sizeof(Node) + sizeof(std::uint32_t));  // node table plus the transient layout
    case BenchMode::Implicit:
      return n * sizeof(std::uint32_t);
    case BenchMode::ImplicitNoMemory:
      return 0;
  }
  return 0;
}

BenchReport run_benchmark(const LayoutSpec& spec, int h, BenchMode mode, std::uint64_t queries, int runs,
                          std::uint64_t seed, const std::string& layout_name, std::uint64_t memory_limit) {
  if (queries == 0) throw DomainError("benchmark needs at least one query");
  if (runs < 1) throw DomainError("benchmark needs at least one run");
  const TreeShape shape(h);
  if (mode != BenchMode::ImplicitNoMemory) {
    const std::uint64_t need = bench_memory_bytes(h, mode);
    const std::uint64_t limit = memory_limit == 0 ? available_memory() : memory_limit;
    if (h > kMaxMaterializedHeight || need > limit) {
      throw ResourceError(std::string(to_string(mode)) + " at h=" + std::to_string(h) + " needs about " +
                          std::to_string(need) + " bytes; limit is " +
                          (h > kMaxMaterializedHeight ? "h <= " + std::to_string(kMaxMaterializedHeight)
                                                      : std::to_string(limit) + " bytes"));
    }
  }
  const IndexTranslator tr(spec, h);
  BenchReport report;
  report.layout = layout_name.empty() ? spec.to_string() : layout_name;
  report.h = h;
  report.mode = mode;
  report.queries = queries;
  report.runs = runs;
  const auto targets = generate_targets(h, queries, seed);
  if (mode == BenchMode::ExplicitLink) {
    run_passes(ExplicitSearcher(build_layout(spec, h), tr), tr, shape, targets, report);
  } else {
    run_passes(ImplicitSearcher(tr, h, mode == BenchMode::Implicit), tr, shape, targets, report);
  }
  report.median_ns_per_search = quantile(report.run_ns_per_search, 0.5);
  report.iqr_ns = quantile(report.run_ns_per_search, 0.75) - quantile(report.run_ns_per_search, 0.25);
  return report;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchReport>& reports, int precision) {
  out << "layout,h,mode,queries,runs,median_ns_per_search,iqr_ns\n";
  out << std::fixed << std::setprecision(precision);
  for (const auto& r : reports) {
    out << r.layout << ',' << r.h << ',' << to_string(r.mode) << ',' << r.queries << ',' << r.runs << ','
        << r.median_ns_per_search << ',' << r.iqr_ns << '\n';
  }
}

}  // namespace cobtree
