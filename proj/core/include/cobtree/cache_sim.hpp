#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cobtree/layout.hpp"
#include "cobtree/layout_spec.hpp"
#include "cobtree/tree_model.hpp"

namespace cobtree {

/// One set-associative LRU level.
struct CacheLevel {
  std::uint64_t capacity_bytes = 32 * 1024;
  std::uint64_t line_bytes = 64;
  std::uint32_t associativity = 8;
};

struct Alignment {
  enum class Kind { Fixed, Uniform };
  Kind kind = Kind::Uniform;
  std::uint64_t offset_nodes = 0;  // used when Fixed

  static Alignment fixed(std::uint64_t nodes) { return {Kind::Fixed, nodes}; }
  static Alignment uniform() { return {Kind::Uniform, 0}; }
};

struct CacheConfig {
  std::vector<CacheLevel> levels{CacheLevel{}};
  std::uint64_t node_bytes = 4;
  Alignment alignment = Alignment::uniform();

  /// Nodes per line of the level with the widest lines.
  std::uint64_t line_nodes() const;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  /// One level holding a single line of `line_nodes` nodes.
  static CacheConfig single_line(std::uint64_t line_nodes, std::uint64_t node_bytes = 4);

  /// Reads `key = value` lines: level<i>.capacity, level<i>.line, level<i>.assoc,
  /// node_bytes, alignment (an offset in nodes, or "uniform"). Sizes accept K and M
  /// suffixes. '#' starts a comment. Throws ConfigError.
  static CacheConfig parse(std::istream& in);
};

/// Storage positions (1-based node slots) in access order.
using Trace = std::vector<Position>;

/// Root-first search paths for each key, concatenated. Throws DomainError for a
/// key outside the tree.
Trace trace_from_searches(const LayoutSpec& spec, int h, const std::vector<NodeIndex>& keys);
Trace trace_from_searches(const Layout& layout, const std::vector<NodeIndex>& keys);

struct LevelStats {
  std::uint64_t accesses = 0;
  std::uint64_t misses = 0;

  double miss_ratio() const noexcept {
    return accesses == 0 ? 0.0 : static_cast<double>(misses) / static_cast<double>(accesses);
  }
  friend bool operator==(const LevelStats&, const LevelStats&) = default;
};

/// Inclusive multi-level LRU hierarchy. A hit at level i stops probing; every
/// level above it that missed is filled.
class CacheSimulator {
 public:
  /// Throws ConfigError.
  explicit CacheSimulator(CacheConfig config);

  /// Empties every level and sets the alignment offset (in nodes) of position 1.
  /// Counters keep accumulating.
  void reset(std::uint64_t offset_nodes);

  /// Returns the index of the level that hit, or levels().size() for a full miss.
  std::size_t access(Position pos);

  const std::vector<LevelStats>& stats() const noexcept { return stats_; }
  const CacheConfig& config() const noexcept { return config_; }

 private:
  struct Level {
    std::uint64_t sets;
    std::uint32_t ways;
    std::uint64_t line_bytes;
    std::vector<std::uint64_t> tags;    // sets * ways, kEmpty when unused
    std::vector<std::uint64_t> stamps;  // last use
  };

  bool probe(Level& level, std::uint64_t address);
  void fill(Level& level, std::uint64_t address);

  CacheConfig config_;
  std::vector<Level> levels_;
  std::vector<LevelStats> stats_;
  std::uint64_t offset_bytes_ = 0;
  std::uint64_t clock_ = 0;
};

/// Runs the trace on a cold hierarchy. Uniform alignment draws one offset in
/// [0, line_nodes) from `seed`. Throws ConfigError or DomainError (empty trace).
std::vector<LevelStats> simulate(const Trace& trace, const CacheConfig& config, std::uint64_t seed);

/// `level,accesses,misses,miss_ratio` with levels numbered from 1.
void write_level_stats_csv(std::ostream& out, const std::vector<LevelStats>& stats, int precision = 6);

}  // namespace cobtree
