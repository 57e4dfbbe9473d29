#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "cobtree/bench_harness.hpp"
#include "cobtree/cache_sim.hpp"
#include "cobtree/errors.hpp"
#include "cobtree/implicit_index.hpp"
#include "cobtree/layout.hpp"
#include "cobtree/locality.hpp"
#include "cobtree/optimizer_oracle.hpp"
#include "cobtree/verify.hpp"

namespace cobtree {

namespace {

struct Common {
  std::string layout;
  int height = 6;
  std::string weights = "geometric";
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> precision;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 19 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ConfigError("bad " + what + " '" + s + "'");
  }
  return std::stoull(s);
}

WeightScheme scheme_of(const std::string& s) { return s == "exact" ? WeightScheme::Exact : WeightScheme::Geometric; }

std::uint64_t seed_of(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("COBTREE_SEED")) return parse_uint(env, "COBTREE_SEED");
  return 1;
}

// Layout names from a comma list; "all" expands to every named layout.
std::vector<std::string> layout_list(const std::string& arg) {
  std::vector<std::string> names;
  for (const auto& item : split(arg)) {
    if (item == "all") {
      names.insert(names.end(), layout_names().begin(), layout_names().end());
    } else {
      names.push_back(item);
    }
  }
  if (names.empty()) throw ConfigError("no layout given");
  return names;
}

LayoutSpec checked_spec(const std::string& name, int h) {
  const LayoutSpec spec = resolve_layout(name);
  const auto report = validate_spec(spec, h);
  if (!report) throw ConfigError(name + ": " + report.summary());
  return spec;
}

// Comma list of block sizes; "a..b" expands to every integer in [a, b].
std::vector<std::uint64_t> block_list(const std::string& arg, int h) {
  std::vector<std::uint64_t> out;
  if (arg.empty()) {
    for (int k = 0; k <= h; ++k) out.push_back(std::uint64_t{1} << k);
    return out;
  }
  for (const auto& item : split(arg)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_uint(item, "block size"));
      continue;
    }
    const auto lo = parse_uint(item.substr(0, dots), "block size");
    const auto hi = parse_uint(item.substr(dots + 2), "block size");
    if (hi < lo || hi - lo > 10'000'000) throw ConfigError("bad block range '" + item + "'");
    for (auto n = lo; n <= hi; ++n) out.push_back(n);
  }
  for (auto n : out) {
    if (n == 0) throw ConfigError("block size must be >= 1");
  }
  return out;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot open '" + path + "' for writing");
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void add_layout(CLI::App* cmd, Common& c, const std::string& default_layout = "") {
  c.layout = default_layout;
  auto* opt = cmd->add_option("--layout,-l", c.layout, "layout name or spec string, comma list, or 'all'");
  if (default_layout.empty()) opt->required();
}

void add_height(CLI::App* cmd, Common& c, int default_height) {
  c.height = default_height;
  cmd->add_option("--height,-H", c.height, "tree height")->capture_default_str()->check(CLI::Range(1, kMaxHeight));
}

void add_weights(CLI::App* cmd, Common& c) {
  cmd->add_option("--weights,-w", c.weights, "edge weights")
      ->capture_default_str()
      ->check(CLI::IsMember({"geometric", "exact"}));
}

void add_out(CLI::App* cmd, Common& c) { cmd->add_option("--out,-o", c.out_path, "write output to a file"); }
void add_seed(CLI::App* cmd, Common& c) { cmd->add_option("--seed", c.seed, "random seed (default: $COBTREE_SEED or 1)"); }
void add_precision(CLI::App* cmd, Common& c) {
  cmd->add_option("--precision", c.precision, "decimal places")->check(CLI::Range(0, 17));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cache-oblivious binary tree layout laboratory", "cobtree"};
  app.require_subcommand(1);

  // One option set per subcommand so defaults do not leak between them.
  std::map<const CLI::App*, Common> commons;
  std::vector<std::string> perms;
  std::string blocks, bfs_list, config_path, suite = "all", k_arg = "2", modes_arg = "all";
  bool show_path = false, plain = false;
  int hmax = 5;
  std::uint64_t queries = 0;
  int runs = 15;

  auto* generate = app.add_subcommand("generate", "write a layout's permutation as bfs,pos");
  add_layout(generate, commons[generate]);
  add_height(generate, commons[generate], 6);
  add_out(generate, commons[generate]);

  auto* metrics = app.add_subcommand("metrics", "locality statistics: layout,h,weights,p0w,p1w,p1,pinf");
  add_layout(metrics, commons[metrics], "");
  metrics->get_option("--layout")->required(false);
  metrics->add_option("--perm", perms, "permutation file(s) to evaluate instead of named layouts");
  add_height(metrics, commons[metrics], 6);
  add_weights(metrics, commons[metrics]);
  add_out(metrics, commons[metrics]);
  add_precision(metrics, commons[metrics]);

  auto* beta = app.add_subcommand("beta", "block transition curve: layout,h,N,beta");
  add_layout(beta, commons[beta]);
  add_height(beta, commons[beta], 6);
  add_weights(beta, commons[beta]);
  beta->add_option("--blocks,-N", blocks, "block sizes, e.g. 2,5,16 or 1..4096 (default powers of two)");
  add_out(beta, commons[beta]);
  add_precision(beta, commons[beta]);

  auto* cdf = app.add_subcommand("cdf", "cumulative edge weight by length: layout,h,L,F");
  add_layout(cdf, commons[cdf]);
  add_height(cdf, commons[cdf], 6);
  add_weights(cdf, commons[cdf]);
  add_out(cdf, commons[cdf]);
  add_precision(cdf, commons[cdf]);

  auto* translate = app.add_subcommand("translate", "layout position of breadth-first indices");
  add_layout(translate, commons[translate]);
  add_height(translate, commons[translate], 6);
  translate->add_option("--bfs,-i", bfs_list, "breadth-first index or comma list")->required();
  translate->add_flag("--path", show_path, "print the root-to-node path as bfs,depth,position");
  add_out(translate, commons[translate]);

  auto* simulate_cmd = app.add_subcommand("simulate", "replay random searches through a cache model");
  add_layout(simulate_cmd, commons[simulate_cmd]);
  add_height(simulate_cmd, commons[simulate_cmd], 20);
  simulate_cmd->add_option("--queries,-q", queries, "number of searches (default 100000)");
  simulate_cmd->add_option("--config,-c", config_path, "cache config file (default 32K/64B/8-way L1)");
  add_seed(simulate_cmd, commons[simulate_cmd]);
  add_out(simulate_cmd, commons[simulate_cmd]);
  add_precision(simulate_cmd, commons[simulate_cmd]);

  auto* verify = app.add_subcommand("verify", "run oracle checks: PASS|FAIL <check> <detail>");
  verify->add_option("--suite", suite, "check suite")->capture_default_str()->check(CLI::IsMember(verify_suite_names()));
  verify->add_option("--hmax", hmax, "largest height for exhaustive checks")->capture_default_str()->check(CLI::Range(1, 20));
  add_seed(verify, commons[verify]);
  add_out(verify, commons[verify]);

  auto* optimize = app.add_subcommand("optimize-cuts", "memoized optimal cut heights: orientation,h,g,ties,cost");
  optimize->add_option("--hmax", hmax, "largest subtree height (<= 12)")->check(CLI::Range(2, 12));
  add_weights(optimize, commons[optimize]);
  optimize->add_option("--k", k_arg, "first in-order bottom subtree")->capture_default_str()->check(CLI::IsMember({"1", "2", "inf"}));
  optimize->add_flag("--plain", plain, "search without alternation");
  add_out(optimize, commons[optimize]);
  add_precision(optimize, commons[optimize]);

  auto* bench = app.add_subcommand("bench", "search timing: layout,h,mode,queries,runs,median_ns_per_search,iqr_ns");
  add_layout(bench, commons[bench], "minwep,pre-veb");
  add_height(bench, commons[bench], 20);
  bench->add_option("--mode,-m", modes_arg, "explicit_link, implicit, implicit_no_memory, comma list or all")->capture_default_str();
  bench->add_option("--queries,-q", queries, "searches per run (default 1000000)");
  bench->add_option("--runs,-r", runs, "timed runs")->capture_default_str()->check(CLI::Range(1, 1000));
  add_seed(bench, commons[bench]);
  add_out(bench, commons[bench]);
  add_precision(bench, commons[bench]);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Common& c = commons.at(app.get_subcommands().front());
  try {
    Output sink(c.out_path, out);
    std::ostream& os = *sink;
    const WeightScheme scheme = scheme_of(c.weights);
    const int h = c.height;

    if (generate->parsed()) {
      write_permutation(os, build_layout(checked_spec(c.layout, h), h));
    } else if (metrics->parsed()) {
      if (c.layout.empty() && perms.empty()) throw ConfigError("metrics needs --layout or --perm");
      std::vector<std::pair<std::string, Layout>> layouts;
      if (!c.layout.empty()) {
        for (const auto& name : layout_list(c.layout)) layouts.emplace_back(name, build_layout(checked_spec(name, h), h));
      }
      for (const auto& path : perms) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot read '" + path + "'");
        layouts.emplace_back(path, read_permutation(in));
      }
      os << "layout,h,weights,p0w,p1w,p1,pinf\n" << std::fixed << std::setprecision(c.precision.value_or(3));
      for (const auto& [label, layout] : layouts) {
        const auto s = locality_stats(layout, scheme);
        os << label << ',' << layout.height() << ',' << c.weights << ',' << s.p0w << ',' << s.p1w << ',' << s.p1
           << ',' << s.pinf << '\n';
      }
    } else if (beta->parsed()) {
      const auto sizes = block_list(blocks, h);
      os << "layout,h,N,beta\n" << std::fixed << std::setprecision(c.precision.value_or(6));
      for (const auto& name : layout_list(c.layout)) {
        const LengthHistogram hist(build_layout(checked_spec(name, h), h), scheme);
        for (auto n : sizes) os << name << ',' << h << ',' << n << ',' << hist.beta(n) << '\n';
      }
    } else if (cdf->parsed()) {
      os << "layout,h,L,F\n" << std::fixed << std::setprecision(c.precision.value_or(6));
      for (const auto& name : layout_list(c.layout)) {
        for (const auto& p : weight_cdf(build_layout(checked_spec(name, h), h), scheme)) {
          os << name << ',' << h << ',' << p.length << ',' << p.fraction << '\n';
        }
      }
    } else if (translate->parsed()) {
      const IndexTranslator tr(checked_spec(c.layout, h), h);
      if (show_path) os << "bfs,depth,position\n";
      for (const auto& item : split(bfs_list)) {
        const NodeIndex bfs = parse_uint(item, "bfs index");
        if (show_path) {
          for (const auto& s : search_path(tr, bfs)) os << s.bfs_index << ',' << s.depth << ',' << s.layout_position << '\n';
        } else {
          os << tr(bfs) << '\n';
        }
      }
    } else if (simulate_cmd->parsed()) {
      const LayoutSpec spec = checked_spec(c.layout, h);
      CacheConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read '" + config_path + "'");
        config = CacheConfig::parse(in);
      }
      const std::uint64_t seed = seed_of(c);
      const auto keys = generate_targets(h, queries == 0 ? 100000 : queries, seed);
      const Trace trace = h <= kMaxMaterializedHeight ? trace_from_searches(build_layout(spec, h), keys)
                                                      : trace_from_searches(spec, h, keys);
      write_level_stats_csv(os, simulate(trace, config, seed), c.precision.value_or(6));
    } else if (verify->parsed()) {
      bool all_pass = true;
      for (const auto& r : run_verify_suite(suite, hmax, seed_of(c))) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name << ' ' << r.detail << '\n';
        all_pass = all_pass && r.passed;
      }
      return all_pass ? 0 : 1;
    } else if (optimize->parsed()) {
      const FirstInOrder k = k_arg == "1" ? FirstInOrder::One : k_arg == "2" ? FirstInOrder::Two : FirstInOrder::Never;
      const int top = optimize->count("--hmax") ? hmax : 10;
      const auto table = optimal_cut_heights(top, scheme, k, !plain);
      os << "orientation,h,g,ties,cost\n" << std::fixed << std::setprecision(c.precision.value_or(6));
      for (auto o : {Orientation::InOrder, Orientation::PreOrder}) {
        for (int m = 2; m <= top; ++m) {
          const auto& choice = table.at({o, m});
          std::string ties;
          for (int g : choice.ties) ties += (ties.empty() ? "" : ";") + std::to_string(g);
          os << to_string(o) << ',' << m << ',' << choice.g << ',' << ties << ',' << choice.costs[choice.g - 1] << '\n';
        }
      }
    } else if (bench->parsed()) {
      std::vector<BenchMode> modes;
      for (const auto& m : split(modes_arg)) {
        if (m == "all") {
          modes = {BenchMode::ExplicitLink, BenchMode::Implicit, BenchMode::ImplicitNoMemory};
        } else {
          modes.push_back(parse_bench_mode(m));
        }
      }
      std::vector<BenchReport> reports;
      for (const auto& name : layout_list(c.layout)) {
        const LayoutSpec spec = checked_spec(name, h);
        for (auto mode : modes) {
          reports.push_back(run_benchmark(spec, h, mode, queries == 0 ? 1'000'000 : queries, runs, seed_of(c), name));
        }
      }
      write_bench_csv(os, reports, c.precision.value_or(3));
    }
    os.flush();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cobtree
