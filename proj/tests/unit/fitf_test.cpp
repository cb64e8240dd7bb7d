#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "parsim/core/simulate.hpp"
#include "parsim/fitf/fitf.hpp"
#include "parsim/harness/generate.hpp"

using namespace parsim;

namespace {

Instance random_instance(Rng& rng) {
  const std::size_t k = 2 + uniform_index(rng, 7);
  const std::size_t pages = k + 1 + uniform_index(rng, 2 * k);
  return Instance(uniform_trace(pages, 100 + uniform_index(rng, 200), rng), k);
}

std::size_t log_k(std::size_t k) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(k)))));
}

/// Names a page that is not cached.
class BrokenOracle final : public FitfOracle {
 public:
  std::string name() const override { return "broken"; }
  void reset(const Instance&, Rng&) override {}
  PageId furthest(Time, const PageSet& cache) override {
    for (PageId p = 0;; ++p)
      if (!cache.contains(p)) return p;
  }
};

}  // namespace

TEST(Fitf, PerfectOracleIsOptimal) {
  Rng rng(1);
  for (int rep = 0; rep < 100; ++rep) {
    auto inst = random_instance(rng);
    for (std::size_t b : {std::size_t{1}, log_k(inst.k)}) {
      auto p = fitf_policy(fitf_probabilistic(0.0), b);
      auto r = simulate(*p, inst, rep);
      EXPECT_EQ(r.ledger.alg_cost, inst.opt.opt_cost);
      EXPECT_LE(r.stats.queries, 3 * b * inst.opt.opt_cost);
      EXPECT_EQ(r.stats.robust_phases, 0u);
    }
  }
}

TEST(Fitf, PerfectOracleMatchesExhaustiveOptimum) {
  Rng rng(2);
  for (int rep = 0; rep < 40; ++rep) {
    Instance inst(uniform_trace(5, 35, rng), 2 + uniform_index(rng, 2));
    auto p = fitf_policy(fitf_probabilistic(0.0), 1);
    EXPECT_EQ(simulate(*p, inst, 0).ledger.alg_cost, oracle::dp_opt(inst.seq, inst.k));
  }
}

TEST(Fitf, NoisyOracleStaysWithinQueryBudget) {
  Rng rng(3);
  for (int rep = 0; rep < 60; ++rep) {
    auto inst = random_instance(rng);
    const std::size_t b = 1 + uniform_index(rng, log_k(inst.k));
    FitfCore core(fitf_probabilistic(0.3), b);
    auto r = simulate_eager(core, inst, rep);
    EXPECT_LE(r.stats.queries, 3 * b * inst.opt.opt_cost);
  }
}

TEST(Fitf, AlwaysWrongOracleEventuallySwitches) {
  Rng rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    auto inst = random_instance(rng);
    FitfCore core(fitf_adversarial(), 1);
    simulate_eager(core, inst, rep);
    EXPECT_GT(core.stats().robust_phases, 0u);
  }
}

TEST(Fitf, SinglePageNeverSwitches) {
  Instance inst(RequestSequence::from_ids({0, 0, 0, 0, 0}), 1);
  FitfCore core(fitf_adversarial(), 1);
  auto r = simulate_eager(core, inst, 0);
  EXPECT_EQ(r.ledger.alg_cost, 1u);
  EXPECT_EQ(r.stats.robust_phases, 0u);
}

TEST(Fitf, CorrectRobustEvictionsAreNotRequestedAgainInPhase) {
  Rng rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    auto inst = random_instance(rng);
    FitfCore core(fitf_probabilistic(0.4), log_k(inst.k));
    simulate_eager(core, inst, rep);
    const auto segs = core.segments();
    for (const auto& ev : core.oracle_evictions()) {
      if (!ev.in_robust || !ev.correct) continue;
      Time end = inst.length();
      for (const auto& s : segs)
        if (s.robust && s.begin <= ev.time && ev.time < s.end) end = s.end;
      EXPECT_GE(oracle::next_after(inst.seq, ev.time, ev.page), end);
    }
  }
}

TEST(Fitf, PhaseWithoutCleanPagesEvictsNothing) {
  // After 0 1 2 with k=3 every request stays inside the cache.
  Instance inst(RequestSequence::from_ids({0, 1, 2, 2, 1, 0, 1, 2}), 3);
  FitfCore core(fitf_adversarial(), 1);
  auto r = simulate_eager(core, inst, 0);
  EXPECT_EQ(r.ledger.alg_cost, 3u);
  EXPECT_TRUE(core.oracle_evictions().empty());
}

TEST(Fitf, RobustPhaseQueriesRespectGuards) {
  Rng rng(6);
  for (int rep = 0; rep < 40; ++rep) {
    auto inst = random_instance(rng);
    const std::size_t b = log_k(inst.k);
    FitfCore core(fitf_adversarial(), b);
    simulate_eager(core, inst, rep);
    for (const auto& s : core.segments()) {
      if (!s.robust) continue;
      // Fewer than b * c answers with at most k clean pages.
      EXPECT_LT(s.queries, b * inst.k + 1);
    }
  }
}

TEST(Fitf, IllegalOracleAnswerThrows) {
  Instance inst(cycle_trace(3, 10), 2);
  FitfCore core(std::make_unique<BrokenOracle>(), 1);
  EXPECT_THROW(simulate_eager(core, inst, 0), Error);
}

TEST(Fitf, BudgetOutsideRangeThrows) {
  EXPECT_THROW(FitfCore(fitf_adversarial(), 0), Error);
  Instance inst(cycle_trace(9, 20), 8);
  FitfCore too_big(fitf_adversarial(), 4);  // log 8 = 3
  EXPECT_THROW(simulate_eager(too_big, inst, 0), Error);
  FitfCore ok(fitf_adversarial(), 3);
  EXPECT_NO_THROW(simulate_eager(ok, inst, 0));
}
