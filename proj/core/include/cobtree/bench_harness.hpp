#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cobtree/layout_spec.hpp"
#include "cobtree/tree_model.hpp"

namespace cobtree {

enum class BenchMode {
  ExplicitLink,     // nodes {key, left, right} in layout order, follow stored positions
  Implicit,         // translate each step, read the key from a layout-ordered array
  ImplicitNoMemory  // translate each step, derive the key from the in-order rank
};

const char* to_string(BenchMode m) noexcept;
/// Accepts explicit_link, implicit, implicit_no_memory. Throws LookupError.
BenchMode parse_bench_mode(const std::string& s);

struct BenchReport {
  std::string layout;
  int h = 0;
  BenchMode mode = BenchMode::ExplicitLink;
  std::uint64_t queries = 0;
  int runs = 0;
  double median_ns_per_search = 0;
  double iqr_ns = 0;
  std::vector<double> run_ns_per_search;
  std::uint64_t validated_searches = 0;  // searches checked against translate_index
};

/// Uniform targets over all 2^h - 1 nodes; identical for identical arguments.
std::vector<NodeIndex> generate_targets(int h, std::uint64_t count, std::uint64_t seed);

/// Bytes a mode allocates for a tree of height h.
std::uint64_t bench_memory_bytes(int h, BenchMode mode);

/// Times `runs` passes of `queries` searches. The first, untimed pass checks
/// every search ends at translate_index(target); timed passes must reproduce its
/// checksum. Throws ResourceError when the mode's tables exceed `memory_limit`
/// bytes (0 = available physical memory) or h > kMaxMaterializedHeight for a
/// materialized mode, and DomainError for queries = 0 or runs < 1.
BenchReport run_benchmark(const LayoutSpec& spec, int h, BenchMode mode, std::uint64_t queries, int runs,
                          std::uint64_t seed, const std::string& layout_name = {},
                          std::uint64_t memory_limit = 0);

/// `layout,h,mode,queries,runs,median_ns_per_search,iqr_ns`.
void write_bench_csv(std::ostream& out, const std::vector<BenchReport>& reports, int precision = 3);

}  // namespace cobtree
