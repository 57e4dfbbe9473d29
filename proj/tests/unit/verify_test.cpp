#include <gtest/gtest.h>

#include "cobtree/errors.hpp"
#include "cobtree/verify.hpp"

using namespace cobtree;

TEST(VerifySuite, EverySuitePassesAtSmallHeights) {
  for (const auto& suite : verify_suite_names()) {
    if (suite == "all") continue;
    const auto checks = run_verify_suite(suite, 5, 1);
    EXPECT_FALSE(checks.empty()) << suite;
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << suite << ": " << c.name << " " << c.detail;
  }
}

TEST(VerifySuite, AllIsUnionOfSuites) {
  std::size_t total = 0;
  for (const auto& suite : verify_suite_names())
    if (suite != "all") total += run_verify_suite(suite, 4, 2).size();
  EXPECT_EQ(run_verify_suite("all", 4, 2).size(), total);
}

TEST(VerifySuite, UnknownSuite) { EXPECT_THROW(run_verify_suite("everything", 5, 1), LookupError); }
