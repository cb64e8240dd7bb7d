#include <gtest/gtest.h>

#include "oracles.hpp"
#include "parsim/harness/generate.hpp"
#include "parsim/offline/belady.hpp"

using namespace parsim;

TEST(Belady, MatchesExhaustiveOptimum) {
  Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t pages = 1 + uniform_index(rng, 6);
    const std::size_t k = 1 + uniform_index(rng, 3);
    auto seq = uniform_trace(pages, 1 + uniform_index(rng, 40), rng);
    EXPECT_EQ(belady_schedule(seq, k).opt_cost, oracle::dp_opt(seq, k)) << "rep " << rep;
  }
}

TEST(Belady, CycleOfKPlusOnePages) {
  // k=2 over 0 1 2 0 1 2 ...: 3 cold misses, then one miss every 2 requests.
  auto seq = cycle_trace(3, 12);
  EXPECT_EQ(belady_schedule(seq, 2).opt_cost, oracle::dp_opt(seq, 2));
}

TEST(Belady, TiesGoToSmallestPage) {
  // Pages 0 and 1 are never requested again when 2 arrives.
  auto seq = RequestSequence::from_ids({1, 0, 2});
  auto s = belady_schedule(seq, 2);
  EXPECT_EQ(s.evicted_at[2], 0u);
}

TEST(Belady, SingleRepeatedPage) {
  auto seq = RequestSequence::from_ids({4, 4, 4, 4});
  EXPECT_EQ(belady_schedule(seq, 1).opt_cost, 1u);
}

TEST(Belady, PrefixConsistency) {
  Rng rng(2);
  for (int rep = 0; rep < 30; ++rep) {
    auto seq = uniform_trace(2 + uniform_index(rng, 6), 1 + uniform_index(rng, 50), rng);
    const std::size_t k = 1 + uniform_index(rng, 4);
    auto full = belady_schedule(seq, k);
    for (Time t = 0; t < seq.length(); ++t) {
      RequestSequence prefix{{seq.requests.begin(), seq.requests.begin() + t + 1}, seq.universe_size};
      auto part = belady_schedule(prefix, k);
      EXPECT_EQ(part.opt_cost, full.faults_in(0, t + 1));
      EXPECT_EQ(belady_prefix_fault(full, t), static_cast<bool>(part.fault_at[t]));
    }
  }
}

TEST(Belady, PrefixFaultOutOfRange) {
  auto s = belady_schedule(RequestSequence::from_ids({0, 1}), 1);
  EXPECT_THROW(belady_prefix_fault(s, 2), Error);
}

TEST(Belady, RestartFromCacheEqualsOptimumOfSuffix) {
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    auto seq = uniform_trace(5, 30, rng);
    NextArrivalIndex idx(seq);
    const Time start = uniform_index(rng, seq.length());
    PageSet initial(seq.universe_size);
    // An empty initial cache gives the optimum of the suffix.
    auto ledger = belady_restart(seq, 2, start, initial, idx);
    RequestSequence suffix{{seq.requests.begin() + static_cast<long>(start), seq.requests.end()}, 5};
    EXPECT_EQ(ledger.belady_cost, oracle::dp_opt(suffix, 2));
  }
}

TEST(Belady, RunnerRejectsOversizedInitialCache) {
  auto seq = RequestSequence::from_ids({0, 1, 2});
  NextArrivalIndex idx(seq);
  PageSet init(3);
  init.insert(0);
  init.insert(1);
  EXPECT_THROW(BeladyRunner(seq, idx, 1, 0, &init), Error);
}
