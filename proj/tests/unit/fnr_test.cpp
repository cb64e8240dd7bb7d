#include <gtest/gtest.h>

#include <filesystem>

#include "oracles.hpp"
#include "parsim/core/simulate.hpp"
#include "parsim/fnr/fnr.hpp"
#include "parsim/harness/generate.hpp"
#include "parsim/harness/ingest.hpp"
#include "parsim/predictors/action_predictors.hpp"

using namespace parsim;

namespace {

/// Forwards to another predictor and records when it was asked.
class RecordingPredictor final : public ActionPredictor {
 public:
  RecordingPredictor(ActionPredictorPtr inner, std::vector<Time>* times) : inner_(std::move(inner)), times_(times) {}
  std::string name() const override { return inner_->name(); }
  void reset(const Instance& inst, Rng& rng) override { inner_->reset(inst, rng); }
  void observe(Time t, PageId p) override { inner_->observe(t, p); }
  void predict(Time t, const PageSet& caller, std::vector<PageId>& out) override {
    times_->push_back(t);
    inner_->predict(t, caller, out);
  }

 private:
  ActionPredictorPtr inner_;
  std::vector<Time>* times_;
};

Instance random_instance(Rng& rng) {
  const std::size_t k = 2 + uniform_index(rng, 6);
  const std::size_t pages = k + 1 + uniform_index(rng, 2 * k);
  if (uniform_index(rng, 2)) return Instance(zipf_trace(pages, 150 + uniform_index(rng, 200), 0.9, rng), k);
  return Instance(uniform_trace(pages, 150 + uniform_index(rng, 200), rng), k);
}

std::vector<std::filesystem::path> fixture_traces() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(PARSIM_FIXTURES))
    if (e.path().extension() == ".txt" && e.path().stem() != "mts_small") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Fnr, PerfectPredictorIsOptimalWithOptQueries) {
  Rng rng(1);
  for (int rep = 0; rep < 100; ++rep) {
    auto inst = random_instance(rng);
    auto p = fnr_policy(belady_predictor());
    auto r = simulate(*p, inst, rep);
    EXPECT_EQ(r.ledger.alg_cost, inst.opt.opt_cost) << "rep " << rep;
    EXPECT_EQ(r.stats.queries, inst.opt.opt_cost);
    EXPECT_EQ(r.stats.robust_phases, 0u);
  }
}

TEST(Fnr, PerfectPredictorMatchesExhaustiveOptimumOnSmallInstances) {
  Rng rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    Instance inst(uniform_trace(5, 40, rng), 1 + uniform_index(rng, 3));
    auto p = fnr_policy(belady_predictor());
    EXPECT_EQ(simulate(*p, inst, 0).ledger.alg_cost, oracle::dp_opt(inst.seq, inst.k));
  }
}

TEST(Fnr, PerfectPredictorOnFixtures) {
  for (const auto& path : fixture_traces()) {
    auto trace = read_trace(path);
    for (std::size_t k : {2u, 4u, 10u}) {
      Instance inst(trace.seq, k);
      auto p = fnr_policy(belady_predictor());
      auto r = simulate(*p, inst, 3);
      EXPECT_EQ(r.ledger.alg_cost, inst.opt.opt_cost) << path << " k=" << k;
      EXPECT_EQ(r.stats.queries, inst.opt.opt_cost) << path << " k=" << k;
    }
  }
}

TEST(Fnr, ExactNextArrivalsAreAlsoConsistent) {
  Rng rng(3);
  for (int rep = 0; rep < 40; ++rep) {
    auto inst = random_instance(rng);
    auto p = fnr_policy(next_arrival_to_action(synthetic_next_arrival(0.0)));
    EXPECT_EQ(simulate(*p, inst, rep).ledger.alg_cost, inst.opt.opt_cost);
  }
}

TEST(Fnr, QueriesPerRobustPhaseWithinBudget) {
  const GrowthFunction fs[] = {GrowthFunction::exponential(), GrowthFunction::quadratic(),
                               GrowthFunction::linear(), GrowthFunction::zero()};
  Rng rng(4);
  for (const auto& f : fs) {
    for (int rep = 0; rep < 15; ++rep) {
      auto inst = random_instance(rng);
      FnrConfig cfg;
      cfg.f = f;
      FnrCore core(next_arrival_to_action(synthetic_next_arrival(5.0)), cfg);
      simulate_eager(core, inst, rep);
      const long long bound = f(core.plan().log_k()) + 1;
      for (const auto& s : core.segments())
        if (s.kind == FnrSegment::Kind::robust) {
          EXPECT_LE(static_cast<long long>(s.queries), bound);
        }
    }
  }
}

TEST(Fnr, ZeroGrowthUsesAtMostTwiceOpt) {
  Rng rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    auto inst = random_instance(rng);
    FnrConfig cfg;
    cfg.f = GrowthFunction::zero();
    auto p = fnr_policy(adversarial_predictor(), cfg);
    auto r = simulate(*p, inst, rep);
    EXPECT_LE(r.stats.queries, 2 * inst.opt.opt_cost);
  }
}

TEST(Fnr, LazyNeverCostsMoreThanEager) {
  Rng rng(6);
  for (int rep = 0; rep < 40; ++rep) {
    auto inst = random_instance(rng);
    FnrCore eager(adversarial_predictor(), {});
    const Cost e = simulate_eager(eager, inst, rep).ledger.alg_cost;
    auto lazy = fnr_policy(adversarial_predictor());
    EXPECT_LE(simulate(*lazy, inst, rep).ledger.alg_cost, e);
  }
}

TEST(Fnr, RobustPhaseEndsWithMarkedCache) {
  Rng rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    auto inst = random_instance(rng);
    FnrCore core(next_arrival_to_action(synthetic_next_arrival(10.0)), {});
    simulate_eager(core, inst, rep);
    for (const auto& s : core.segments())
      if (s.kind == FnrSegment::Kind::robust && s.completed) {
        EXPECT_TRUE(s.ended_with_marked_cache);
      }
  }
}

TEST(Fnr, GapFaultsBoundedByBeladyInGapAndPreviousPhase) {
  Rng rng(8);
  for (int rep = 0; rep < 40; ++rep) {
    auto inst = random_instance(rng);
    FnrCore core(next_arrival_to_action(synthetic_next_arrival(1.0 + rep % 5)), {});
    simulate_eager(core, inst, rep);
    const auto segs = core.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (segs[i].kind != FnrSegment::Kind::follower) continue;
      Cost prev = 0;
      if (i > 0 && segs[i - 1].kind == FnrSegment::Kind::robust)
        prev = inst.opt.faults_in(segs[i - 1].begin, segs[i - 1].end);
      EXPECT_LE(segs[i].cost, inst.opt.faults_in(segs[i].begin, segs[i].end) + prev) << "rep " << rep;
    }
  }
}

TEST(Fnr, AdversaryOnCycleStaysLogarithmic) {
  const std::size_t k = 16;
  Instance inst(cycle_trace(k + 1, 40 * (k + 1)), k);
  double sum = 0;
  for (int s = 0; s < 30; ++s) {
    auto p = fnr_policy(adversarial_predictor());
    sum += static_cast<double>(simulate(*p, inst, s).ledger.alg_cost) / static_cast<double>(inst.opt.opt_cost);
  }
  EXPECT_LE(sum / 30, 4 * (std::log(static_cast<double>(k)) + 1));
}

TEST(Fnr, SeparatedQueriesAreSpacedApart) {
  Rng rng(9);
  for (std::size_t a : {1u, 3u, 7u}) {
    for (int rep = 0; rep < 10; ++rep) {
      auto inst = random_instance(rng);
      std::vector<Time> times;
      FnrConfig cfg;
      cfg.mode = QueryMode::a_separated(a);
      auto p = fnr_policy(
          std::make_unique<RecordingPredictor>(next_arrival_to_action(popu_predictor()), &times), cfg);
      simulate(*p, inst, rep);
      for (std::size_t i = 1; i < times.size(); ++i) EXPECT_GE(times[i] - times[i - 1], a);
    }
  }
  EXPECT_THROW(QueryMode::a_separated(0), Error);
}

TEST(Fnr, ExplicitQueryArrivalsAreHonoured) {
  Rng rng(10);
  Instance inst(cycle_trace(11, 600), 10);
  FnrConfig cfg;
  cfg.query_arrivals = {1, 6, 9};
  FnrCore core(adversarial_predictor(), cfg);
  simulate_eager(core, inst, 1);
  EXPECT_EQ(core.plan().label(), "F:1,6,9");
  for (const auto& s : core.segments())
    if (s.kind == FnrSegment::Kind::robust) {
      EXPECT_LE(s.queries, 3u);
    }
}

TEST(Fnr, RejectsAlphaBelowOne) {
  FnrConfig cfg;
  cfg.alpha = 0.5;
  EXPECT_THROW(FnrCore(belady_predictor(), cfg), Error);
}

TEST(Fnr, RunsAreReproducible) {
  Rng rng(11);
  auto inst = random_instance(rng);
  auto a = fnr_policy(next_arrival_to_action(synthetic_next_arrival(4.0)));
  auto b = fnr_policy(next_arrival_to_action(synthetic_next_arrival(4.0)));
  EXPECT_EQ(simulate(*a, inst, 42).fault_trace, simulate(*b, inst, 42).fault_trace);
}
