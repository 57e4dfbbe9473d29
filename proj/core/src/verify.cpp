#include "cobtree/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "cobtree/bench_harness.hpp"
#include "cobtree/cache_sim.hpp"
#include "cobtree/errors.hpp"
#include "cobtree/implicit_index.hpp"
#include "cobtree/locality.hpp"

namespace cobtree {

namespace {

struct Reference {
  const char* layout;
  double p0w, p1w, p1;
  std::uint64_t pinf;
};

// Geometric-weight locality statistics of the named layouts at h = 6.
constexpr Reference kReferenceH6[] = {
    {"minwep", 1.818, 4.063, 2.581, 23},   {"minep", 1.818, 4.063, 2.581, 23},
    {"halfwep", 1.823, 3.938, 3.097, 26},  {"in-veba", 2.184, 4.300, 3.161, 27},
    {"pre-veba", 2.691, 7.100, 5.145, 54}, {"in-veb", 2.227, 4.300, 3.161, 25},
    {"pre-veb", 2.824, 7.100, 5.145, 50},  {"in-order", 4.000, 6.200, 2.581, 16},
    {"pre-order", 2.828, 6.700, 3.081, 32}, {"in-breadth", 3.096, 4.700, 8.258, 16},
    {"pre-breadth", 5.824, 9.300, 16.500, 32}, {"minwla", 2.000, 3.600, 2.581, 16},
    {"bender", 2.930, 6.900, 4.113, 46},
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

using Sink = std::vector<CheckResult>&;

void golden(Sink out) {
  for (const auto& r : kReferenceH6) {
    const auto s = locality_stats(build_layout(named_spec(r.layout), 6));
    const bool ok = std::fabs(s.p0w - r.p0w) <= 1e-3 + 1e-12 && std::fabs(s.p1w - r.p1w) <= 1e-3 + 1e-12 &&
                    std::fabs(s.p1 - r.p1) <= 1e-3 + 1e-12 && s.pinf == r.pinf;
    out.push_back({std::string("locality-h6-") + r.layout, ok,
                   fmt(s.p0w, 4) + "/" + fmt(s.p1w, 5) + "/" + fmt(s.p1, 4) + "/" + std::to_string(s.pinf)});
  }
}

void analytic(Sink out) {
  const auto s = locality_stats(build_layout(named_spec("in-order"), 6));
  const bool ok = std::fabs(s.p0w - 4.0) <= 1e-9 && std::fabs(s.p1w - 6.2) <= 1e-9 &&
                  std::fabs(s.p1 - 160.0 / 62.0) <= 1e-9 && s.pinf == 16;
  out.push_back({"in-order-h6-closed-form", ok,
                 fmt(s.p0w, 12) + "/" + fmt(s.p1w, 12) + "/" + fmt(s.p1, 12) + "/" + std::to_string(s.pinf)});
}

void recurrences(Sink out, int h_max) {
  for (auto& r : verify_recurrence_inequalities(std::max(h_max, 3))) out.push_back(std::move(r));
  const auto dp = dp_g1_costs(5);
  for (int h = 2; h <= std::min(h_max, 5); ++h) {
    const double enumerated = (h - 1) * std::log2(enumerate_g1(h, WeightScheme::Geometric, Metric::P0w).cost);
    const double closed = dp[h - 2].c_in;
    out.push_back({"dp-matches-enumeration-h" + std::to_string(h), std::fabs(enumerated - closed) <= 1e-9,
                   "dp=" + fmt(closed, 10) + " enumeration=" + fmt(enumerated, 10)});
  }
}

void minimizers(Sink out, int h_max) {
  for (int h = 3; h <= std::min(h_max, 5); ++h) {
    for (auto scheme : {WeightScheme::Geometric, WeightScheme::Exact}) {
      for (auto metric : {Metric::P0w, Metric::P1w}) {
        const auto want = metric == Metric::P0w ? minep_assignment(h) : minwla_assignment(h);
        const auto res = enumerate_g1(h, scheme, metric);
        const bool found = std::find(res.minimizers.begin(), res.minimizers.end(), want) != res.minimizers.end();
        out.push_back({std::string(metric == Metric::P0w ? "minep" : "minwla") + "-is-g1-optimum-" +
                           to_string(scheme) + "-h" + std::to_string(h),
                       found, std::to_string(res.minimizers.size()) + " minimizer(s) of " +
                                  std::to_string(res.evaluated) + ", cost " + fmt(res.cost, 8)});
      }
    }
  }
  for (int h = 1; h <= std::min(h_max, 3); ++h) {
    const auto t = best_permutation_tiny(h, WeightScheme::Geometric, Metric::P0w);
    out.push_back({"unrestricted-optimum-h" + std::to_string(h), true,
                   "p0w=" + fmt(t.cost, 8) + (t.recursive_attains ? " attained by " + t.attained_by
                                                                   : " not attained by a recursive layout")});
  }
}

void cuts(Sink out, int h_max) {
  const int top = std::max(10, std::min(h_max, 12));
  const auto table = optimal_cut_heights(top, WeightScheme::Geometric);
  for (int m = 2; m <= top; ++m) {
    for (auto o : {Orientation::InOrder, Orientation::PreOrder}) {
      const auto& c = table.at({o, m});
      const int want = o == Orientation::InOrder ? opt_inorder_cut(m) : opt_preorder_cut(m);
      std::string ties;
      for (int g : c.ties) ties += (ties.empty() ? "" : ";") + std::to_string(g);
      out.push_back({std::string("optimal-cut-") + to_string(o) + "-h" + std::to_string(m), c.g == want,
                     "g=" + std::to_string(c.g) + " ties={" + ties + "} expected " + std::to_string(want)});
    }
  }
}

void translate(Sink out, int h_max) {
  for (const auto& name : layout_names()) {
    const auto spec = named_spec(name);
    std::uint64_t checked = 0;
    std::string bad;
    for (int h = 1; h <= std::min(h_max, 16) && bad.empty(); ++h) {
      const auto layout = build_layout(spec, h);
      const IndexTranslator tr(spec, h);
      for (NodeIndex i = 1; i <= layout.size(); ++i, ++checked) {
        if (tr(i) != layout[i]) {
          bad = "h=" + std::to_string(h) + " bfs=" + std::to_string(i);
          break;
        }
      }
    }
    out.push_back({"translate-matches-build-" + name, bad.empty(),
                   bad.empty() ? std::to_string(checked) + " nodes" : "mismatch at " + bad});
  }
}

void normalization(Sink out, int h_max) {
  LayoutSpec opt = named_spec("minwep"), optn = opt;
  optn.cut = CutPolicy::opt_normalized();
  int last = 1;
  bool ok = true;
  for (int h = 2; h <= std::min(h_max, 14) && ok; ++h, ++last) ok = layout_equal(build_layout(opt, h), build_layout(optn, h));
  out.push_back({"opt-equals-opt-normalized", ok, "h=2.." + std::to_string(last)});
  ok = true;
  for (int h = 1; h <= std::min(h_max, 6) && ok; ++h) {
    ok = layout_equal(build_layout(named_spec("minep"), h), build_layout(named_spec("minwep"), h));
  }
  out.push_back({"minep-equals-minwep", ok, "h<=" + std::to_string(std::min(h_max, 6))});
}

void alternation(Sink out, int h_max) {
  for (const auto& name : layout_names()) {
    LayoutSpec plain = named_spec(name);
    plain.alternating = false;
    const LayoutSpec alt = alternate(plain);
    std::string bad;
    for (int h = 2; h <= std::min(h_max, 12) && bad.empty(); ++h) {
      const auto a = locality_stats(build_layout(alt, h)), p = locality_stats(build_layout(plain, h));
      if (std::fabs(a.p1w - p.p1w) > 1e-9 * p.p1w) bad = "p1w changed at h=" + std::to_string(h);
      if (a.p0w > p.p0w * (1 + 1e-12)) bad = "p0w increased at h=" + std::to_string(h);
      for (const auto& b : branch_comparisons(plain, h)) {
        if (std::fabs(b.alt_sum - b.plain_sum) > 1e-9 || b.alt_log_product > b.plain_log_product + 1e-9) {
          bad = std::string("branch ") + to_string(b.orient) + std::to_string(b.m) + " at h=" + std::to_string(h);
        }
      }
    }
    out.push_back({"alternation-" + name, bad.empty(), bad.empty() ? "h<=" + std::to_string(std::min(h_max, 12)) : bad});
  }
}

void closure(Sink out, int h_max) {
  for (const auto& name : layout_names()) {
    std::string bad;
    for (int h = 2; h <= std::min(h_max, 16) && bad.empty(); ++h) {
      const auto layout = build_layout(named_spec(name), h);
      const auto stats = locality_stats(layout);
      const LengthHistogram hist(layout, WeightScheme::Geometric);
      for (std::uint64_t n : {stats.pinf, stats.pinf + 1, 2 * stats.pinf}) {
        if (std::fabs(hist.beta(n) * static_cast<double>(n) - stats.p1w) > 1e-9) bad = "beta*N at h=" + std::to_string(h);
      }
      if (std::fabs(hist.beta(1) - 1.0) > 1e-12) bad = "beta(1) at h=" + std::to_string(h);
      double sum = 0;
      std::uint64_t n = 2;
      for (; n < stats.pinf; n *= 2) sum += hist.beta(n);
      sum += 2.0 * stats.p1w / static_cast<double>(n);  // geometric tail of p1w / 2^k
      if (std::fabs(sum - acmr(layout, WeightScheme::Geometric, 2).exact) > 1e-12) bad = "acmr at h=" + std::to_string(h);
    }
    out.push_back({"beta-closure-" + name, bad.empty(), bad.empty() ? "h<=" + std::to_string(std::min(h_max, 16)) : bad});
  }
}

void simulator(Sink out, std::uint64_t seed) {
  const int h = 20;
  const auto keys = generate_targets(h, 100000, seed);
  CacheConfig l1;
  l1.levels = {CacheLevel{32 * 1024, 64, 8}};
  double ratio[3];
  const char* names[3] = {"minwep", "in-veb", "pre-veb"};
  for (int i = 0; i < 3; ++i) {
    ratio[i] = simulate(trace_from_searches(build_layout(named_spec(names[i]), h), keys), l1, seed)[0].miss_ratio();
  }
  out.push_back({"simulated-miss-ordering", ratio[0] <= ratio[1] && ratio[1] < ratio[2],
                 "minwep=" + fmt(ratio[0]) + " in-veb=" + fmt(ratio[1]) + " pre-veb=" + fmt(ratio[2])});

  const auto trace = trace_from_searches(build_layout(named_spec("minwep"), 12), generate_targets(12, 1000, seed));
  out.push_back({"simulation-deterministic", simulate(trace, l1, seed) == simulate(trace, l1, seed), "same seed twice"});
}

void bench(Sink out, int h_max, std::uint64_t seed) {
  const int h = std::clamp(h_max, 2, 12);
  for (auto mode : {BenchMode::ExplicitLink, BenchMode::Implicit, BenchMode::ImplicitNoMemory}) {
    for (const char* name : {"minwep", "pre-veb"}) {
      const auto r = run_benchmark(named_spec(name), h, mode, 2000, 3, seed, name);
      out.push_back({std::string("bench-correct-") + name + "-" + to_string(mode), r.validated_searches == 2000,
                     std::to_string(r.validated_searches) + " searches at h=" + std::to_string(h)});
    }
  }
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"all",        "golden",      "analytic",  "recurrences",
                                                 "minimizers", "cuts",        "translate", "normalization",
                                                 "alternation", "closure",    "simulator", "bench"};
  return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite, int h_max, std::uint64_t seed) {
  const auto& names = verify_suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw LookupError("unknown verify suite '" + suite + "'");
  }
  std::vector<CheckResult> out;
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  auto guarded = [&](const char* s, const std::function<void()>& fn) {
    if (!want(s)) return;
    try {
      fn();
    } catch (const std::exception& e) {
      out.push_back({std::string(s) + "-error", false, e.what()});
    }
  };
  guarded("golden", [&] { golden(out); });
  guarded("analytic", [&] { analytic(out); });
  guarded("recurrences", [&] { recurrences(out, h_max); });
  guarded("minimizers", [&] { minimizers(out, h_max); });
  guarded("cuts", [&] { cuts(out, h_max); });
  guarded("translate", [&] { translate(out, h_max); });
  guarded("normalization", [&] { normalization(out, h_max); });
  guarded("alternation", [&] { alternation(out, h_max); });
  guarded("closure", [&] { closure(out, h_max); });
  guarded("simulator", [&] { simulator(out, seed); });
  guarded("bench", [&] { bench(out, h_max, seed); });
  return out;
}

}  // namespace cobtree
