#include <gtest/gtest.h>

#include <sstream>

#include "cobtree/bench_harness.hpp"
#include "cobtree/errors.hpp"

using namespace cobtree;

TEST(BenchTargets, DeterministicAndInRange) {
  const auto a = generate_targets(10, 5000, 42);
  EXPECT_EQ(a, generate_targets(10, 5000, 42));
  EXPECT_NE(a, generate_targets(10, 5000, 43));
  for (NodeIndex t : a) {
    EXPECT_GE(t, 1u);
    EXPECT_LE(t, 1023u);
  }
}

TEST(BenchMode, Parse) {
  for (auto m : {BenchMode::ExplicitLink, BenchMode::Implicit, BenchMode::ImplicitNoMemory})
    EXPECT_EQ(parse_bench_mode(to_string(m)), m);
  EXPECT_THROW(parse_bench_mode("pointer"), LookupError);
}

TEST(RunBenchmark, ValidatesEverySearch) {
  for (const char* name : {"minwep", "pre-veb", "in-order", "bender"}) {
    for (auto mode : {BenchMode::ExplicitLink, BenchMode::Implicit, BenchMode::ImplicitNoMemory}) {
      const auto r = run_benchmark(named_spec(name), 12, mode, 2000, 3, 5, name);
      EXPECT_EQ(r.validated_searches, 2000u);
      EXPECT_EQ(r.run_ns_per_search.size(), 3u);
      EXPECT_GT(r.median_ns_per_search, 0.0);
      EXPECT_GE(r.iqr_ns, 0.0);
      EXPECT_EQ(r.layout, name);
    }
  }
}

TEST(RunBenchmark, ImplicitNoMemoryWorksBeyondMaterializedHeights) {
  const auto r = run_benchmark(named_spec("in-veb"), 40, BenchMode::ImplicitNoMemory, 500, 1, 1);
  EXPECT_EQ(r.validated_searches, 500u);
  EXPECT_EQ(bench_memory_bytes(40, BenchMode::ImplicitNoMemory), 0u);
}

TEST(RunBenchmark, Refusals) {
  const auto spec = named_spec("minwep");
  EXPECT_THROW(run_benchmark(spec, 29, BenchMode::Implicit, 10, 1, 1), ResourceError);
  EXPECT_THROW(run_benchmark(spec, 16, BenchMode::ExplicitLink, 10, 1, 1, "", 1024), ResourceError);
  EXPECT_THROW(run_benchmark(spec, 10, BenchMode::Implicit, 0, 1, 1), DomainError);
  EXPECT_THROW(run_benchmark(spec, 10, BenchMode::Implicit, 10, 0, 1), DomainError);
  EXPECT_LT(bench_memory_bytes(16, BenchMode::Implicit), bench_memory_bytes(16, BenchMode::ExplicitLink));
  try {
    run_benchmark(spec, 16, BenchMode::ExplicitLink, 10, 1, 1, "", 1024);
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find(std::to_string(bench_memory_bytes(16, BenchMode::ExplicitLink))),
              std::string::npos);
  }
}

TEST(BenchCsv, Header) {
  BenchReport r;
  r.layout = "minwep";
  r.h = 10;
  r.mode = BenchMode::Implicit;
  r.queries = 100;
  r.runs = 3;
  r.median_ns_per_search = 12.5;
  r.iqr_ns = 1;
  std::ostringstream out;
  write_bench_csv(out, {r});
  EXPECT_EQ(out.str(), "layout,h,mode,queries,runs,median_ns_per_search,iqr_ns\nminwep,10,implicit,100,3,12.500,1.000\n");
}
