#include "cobtree/cache_sim.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <string>

#include "cobtree/errors.hpp"
#include "cobtree/implicit_index.hpp"

namespace cobtree {

namespace {

constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::uint64_t parse_size(const std::string& key, std::string v) {
  std::uint64_t mult = 1;
  std::string upper = v;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper.size() > 1 && upper.back() == 'B' && !std::isdigit(static_cast<unsigned char>(upper[upper.size() - 2]))) {
    upper.pop_back();
  }
  if (!upper.empty() && (upper.back() == 'K' || upper.back() == 'M')) {
    mult = upper.back() == 'K' ? 1024 : 1024 * 1024;
    upper.pop_back();
  }
  if (upper.empty() || !std::all_of(upper.begin(), upper.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      upper.size() > 15) {
    throw ConfigError("'" + key + "': expected a size, got '" + v + "'");
  }
  return std::stoull(upper) * mult;
}

}  // namespace

std::uint64_t CacheConfig::line_nodes() const {
  std::uint64_t widest = 0;
  for (const auto& l : levels) widest = std::max(widest, l.line_bytes);
  return node_bytes == 0 ? 0 : widest / node_bytes;
}

void CacheConfig::validate() const {
  if (levels.empty()) throw ConfigError("cache config needs at least one level");
  if (node_bytes == 0) throw ConfigError("node_bytes must be positive");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    const std::string name = "level" + std::to_string(i + 1);
    if (l.line_bytes == 0 || l.line_bytes % node_bytes != 0) {
      throw ConfigError(name + ".line (" + std::to_string(l.line_bytes) +
                        ") must be a positive multiple of node_bytes (" + std::to_string(node_bytes) + ")");
    }
    if (l.associativity == 0) throw ConfigError(name + ".assoc must be positive");
    const std::uint64_t way_set = l.line_bytes * l.associativity;
    if (l.capacity_bytes == 0 || l.capacity_bytes % way_set != 0) {
      throw ConfigError(name + ".capacity (" + std::to_string(l.capacity_bytes) +
                        ") must be a positive multiple of line * assoc (" + std::to_string(way_set) + ")");
    }
  }
  if (alignment.kind == Alignment::Kind::Fixed && alignment.offset_nodes >= line_nodes()) {
    throw ConfigError("alignment offset " + std::to_string(alignment.offset_nodes) + " must be below " +
                      std::to_string(line_nodes()) + " nodes per line");
  }
}

CacheConfig CacheConfig::single_line(std::uint64_t line_nodes, std::uint64_t node_bytes) {
  CacheConfig c;
  c.node_bytes = node_bytes;
  c.levels = {CacheLevel{line_nodes * node_bytes, line_nodes * node_bytes, 1}};
  return c;
}

CacheConfig CacheConfig::parse(std::istream& in) {
  std::map<int, std::map<std::string, std::uint64_t>> level_keys;
  CacheConfig c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "node_bytes") {
      c.node_bytes = parse_size(key, value);
    } else if (key == "alignment") {
      if (value == "uniform") {
        c.alignment = Alignment::uniform();
      } else {
        c.alignment = Alignment::fixed(parse_size(key, value));
      }
    } else if (key.rfind("level", 0) == 0 && key.find('.') != std::string::npos) {
      const auto dot = key.find('.');
      const std::string num = key.substr(5, dot - 5);
      const std::string field = key.substr(dot + 1);
      if (num.empty() || num.size() > 2 ||
          !std::all_of(num.begin(), num.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad level number in '" + key + "'");
      }
      if (field == "policy") {
        if (value != "lru" && value != "LRU") throw ConfigError("only LRU replacement is supported");
        continue;
      }
      if (field != "capacity" && field != "line" && field != "assoc") {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
      level_keys[std::stoi(num)][field] = parse_size(key, value);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!level_keys.empty()) {
    c.levels.clear();
    int expect = 1;
    for (const auto& [idx, fields] : level_keys) {
      if (idx != expect++) throw ConfigError("cache levels must be numbered 1, 2, ... without gaps");
      for (const char* f : {"capacity", "line", "assoc"}) {
        if (!fields.count(f)) throw ConfigError("level" + std::to_string(idx) + "." + f + " missing");
      }
      c.levels.push_back({fields.at("capacity"), fields.at("line"),
                          static_cast<std::uint32_t>(fields.at("assoc"))});
    }
  }
  c.validate();
  return c;
}

Trace trace_from_searches(const LayoutSpec& spec, int h, const std::vector<NodeIndex>& keys) {
  const IndexTranslator tr(spec, h);
  Trace trace;
  for (NodeIndex key : keys) {
    for (const auto& step : search_path(tr, key)) trace.push_back(step.layout_position);
  }
  return trace;
}

Trace trace_from_searches(const Layout& layout, const std::vector<NodeIndex>& keys) {
  Trace trace;
  for (NodeIndex key : keys) {
    if (!layout.shape().contains(key)) {
      throw DomainError("search key " + std::to_string(key) + " outside tree of height " +
                        std::to_string(layout.height()));
    }
    const int depth = level_of_index(key);
    for (int d = 0; d <= depth; ++d) trace.push_back(layout[key >> (depth - d)]);
  }
  return trace;
}

CacheSimulator::CacheSimulator(CacheConfig config) : config_(std::move(config)) {
  config_.validate();
  for (const auto& l : config_.levels) {
    const std::uint64_t sets = l.capacity_bytes / (l.line_bytes * l.associativity);
    levels_.push_back({sets, l.associativity, l.line_bytes, {}, {}});
  }
  stats_.resize(levels_.size());
  reset(config_.alignment.kind == Alignment::Kind::Fixed ? config_.alignment.offset_nodes : 0);
}

void CacheSimulator::reset(std::uint64_t offset_nodes) {
  offset_bytes_ = offset_nodes * config_.node_bytes;
  for (auto& l : levels_) {
    l.tags.assign(l.sets * l.ways, kEmpty);
    l.stamps.assign(l.sets * l.ways, 0);
  }
  clock_ = 0;
}

bool CacheSimulator::probe(Level& level, std::uint64_t address) {
  const std::uint64_t line = address / level.line_bytes;
  const std::uint64_t base = (line % level.sets) * level.ways;
  for (std::uint32_t w = 0; w < level.ways; ++w) {
    if (level.tags[base + w] == line) {
      level.stamps[base + w] = clock_;
      return true;
    }
  }
  return false;
}

void CacheSimulator::fill(Level& level, std::uint64_t address) {
  const std::uint64_t line = address / level.line_bytes;
  const std::uint64_t base = (line % level.sets) * level.ways;
  std::uint64_t victim = base;
  for (std::uint32_t w = 0; w < level.ways; ++w) {
    if (level.tags[base + w] == kEmpty) {
      victim = base + w;
      break;
    }
    if (level.stamps[base + w] < level.stamps[victim]) victim = base + w;
  }
  level.tags[victim] = line;
  level.stamps[victim] = clock_;
}

std::size_t CacheSimulator::access(Position pos) {
  ++clock_;
  const std::uint64_t address = (pos - 1) * config_.node_bytes + offset_bytes_;
  std::size_t hit = levels_.size();
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    ++stats_[i].accesses;
    if (probe(levels_[i], address)) {
      hit = i;
      break;
    }
    ++stats_[i].misses;
  }
  for (std::size_t i = 0; i < hit; ++i) fill(levels_[i], address);
  return hit;
}

std::vector<LevelStats> simulate(const Trace& trace, const CacheConfig& config, std::uint64_t seed) {
  if (trace.empty()) throw DomainError("cannot simulate an empty trace");
  CacheSimulator sim(config);
  std::uint64_t offset = config.alignment.offset_nodes;
  if (config.alignment.kind == Alignment::Kind::Uniform) {
    std::mt19937_64 rng(seed);
    offset = std::uniform_int_distribution<std::uint64_t>(0, config.line_nodes() - 1)(rng);
  }
  sim.reset(offset);
  for (Position p : trace) sim.access(p);
  return sim.stats();
}

void write_level_stats_csv(std::ostream& out, const std::vector<LevelStats>& stats, int precision) {
  out << "level,accesses,misses,miss_ratio\n";
  out << std::fixed << std::setprecision(precision);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    out << (i + 1) << ',' << stats[i].accesses << ',' << stats[i].misses << ',' << stats[i].miss_ratio() << '\n';
  }
}

}  // namespace cobtree
