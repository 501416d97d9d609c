#include <gtest/gtest.h>

#include "icisres/verify.hpp"

using namespace icisres;

namespace {

VerificationPlan quick(std::vector<std::string> suites, std::size_t trials, std::uint64_t seed) {
  VerificationPlan plan;
  plan.suites = std::move(suites);
  plan.trials = trials;
  plan.seed = seed;
  return plan;
}

}  // namespace

TEST(Verify, FastSuitesHaveNoFailures) {
  auto out = run(quick({"det-lemmas", "eq1", "eq2-transform", "ann-invariance", "smooth-duality", "cor-mult"}, 20, 7));
  ASSERT_EQ(out.size(), 6U);
  for (const auto& o : out) {
    EXPECT_EQ(o.trials, 20U) << o.suite;
    EXPECT_EQ(o.skipped, 0U) << o.suite;
    EXPECT_TRUE(o.failures.empty()) << o.suite << ": " << o.failures.front().payload;
  }
}

TEST(Verify, Lem2AndTheoremOnFewTrials) {
  auto out = run(quick({"lem2", "theorem1"}, 5, 3));
  for (const auto& o : out) {
    EXPECT_EQ(o.skipped, 0U) << o.suite;
    EXPECT_TRUE(o.failures.empty()) << o.suite;
  }
  // the corpus is always covered
  EXPECT_EQ(out[1].trials, builtin_corpus().size());
}

TEST(Verify, Deterministic) {
  auto a = run(quick({"eq1", "cor-mult"}, 10, 11));
  auto b = run(quick({"eq1", "cor-mult"}, 10, 11));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].trials, b[i].trials);
    EXPECT_EQ(a[i].resamples, b[i].resamples);
    EXPECT_EQ(a[i].failures.size(), b[i].failures.size());
  }
}

TEST(Verify, TrialReproducesFromSeed) {
  auto first = reproduce_trial("cor-mult", 12345, 0);
  auto second = reproduce_trial("cor-mult", 12345, 0);
  EXPECT_EQ(first.resamples, second.resamples);
  EXPECT_EQ(first.failure, second.failure);
}

TEST(Verify, UnknownSuite) {
  EXPECT_THROW(run(quick({"nope"}, 1, 1)), InvalidProblem);
  EXPECT_THROW(run(quick({"eq1"}, 0, 1)), InvalidProblem);
}
