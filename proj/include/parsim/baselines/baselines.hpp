#ifndef PARSIM_BASELINES_BASELINES_HPP
#define PARSIM_BASELINES_BASELINES_HPP

#include <memory>
#include <vector>

#include "parsim/baselines/marking.hpp"
#include "parsim/core/policy.hpp"
#include "parsim/predictors/action.hpp"
#include "parsim/predictors/next_arrival.hpp"

namespace parsim {

class LruPolicy final : public EvictionPolicy {
 public:
  std::string name() const override { return "LRU"; }

  void reset(const SimContext& ctx) override { recency_ = RecencyList(ctx.instance.universe()); }

  std::optional<PageId> serve(Time t, PageId page, const CacheState& cache) override {
    std::optional<PageId> victim;
    if (!cache.contains(page) && cache.full()) {
      victim = recency_.least_recent([&](PageId p) { return cache.contains(p); });
    }
    recency_.touch(page, t);
    return victim;
  }

 private:
  RecencyList recency_;
};

/// Randomized marking: on a miss, evict a uniformly random unmarked page.
class MarkerPolicy final : public EvictionPolicy {
 public:
  std::string name() const override { return "Marker"; }

  void reset(const SimContext& ctx) override {
    rng_ = &ctx.rng;
    phase_ = MarkingPhase(ctx.instance.k, ctx.instance.universe());
  }

  std::optional<PageId> serve(Time t, PageId page, const CacheState& cache) override {
    phase_.observe(t, page);
    if (cache.contains(page) || !cache.full()) return std::nullopt;
    unmarked_.clear();
    for (PageId p : cache.contents().sorted()) {
      if (!phase_.marked(p)) unmarked_.push_back(p);
    }
    if (unmarked_.empty()) throw Error("marker: no unmarked page to evict");
    return unmarked_[uniform_index(*rng_, unmarked_.size())];
  }

  const MarkingPhase& phase() const { return phase_; }

 private:
  Rng* rng_ = nullptr;
  MarkingPhase phase_;
  std::vector<PageId> unmarked_;
};

/// Follow the Prediction: on a miss, evict a cached page missing from the
/// freshly queried predicted cache; LRU if the prediction excludes nothing.
class FtpPolicy final : public EvictionPolicy {
 public:
  explicit FtpPolicy(ActionPredictorPtr predictor) : channel_(std::move(predictor)) {}

  std::string name() const override { return "FtP"; }

  void reset(const SimContext& ctx) override {
    channel_.reset(ctx.instance, ctx.rng);
    recency_ = RecencyList(ctx.instance.universe());
    fallbacks_ = 0;
  }

  std::optional<PageId> serve(Time t, PageId page, const CacheState& cache) override {
    channel_.observe(t, page);
    std::optional<PageId> victim;
    if (!cache.contains(page) && cache.full()) {
      ActionPrediction pred = channel_.query(t, cache.contents(), 1);
      if (!pred.reported_evictions.empty()) {
        victim = recency_.least_recent(
            [&](PageId p) { return cache.contains(p) && !pred.contains(p); });
      } else {
        ++fallbacks_;
        victim = recency_.least_recent([&](PageId p) { return cache.contains(p); });
      }
    }
    recency_.touch(page, t);
    return victim;
  }

  PolicyStats stats() const override {
    const auto& m = channel_.meter();
    return {m.query_count(), m.reported_page_count(), m.eta(), 0, 0};
  }

  Cost lru_fallbacks() const { return fallbacks_; }

 private:
  ActionChannel channel_;
  RecencyList recency_;
  Cost fallbacks_ = 0;
};

/// Marking phases; on a miss evict the unmarked page with the furthest
/// predicted next arrival (ties to the smallest id).
class FtpmPolicy final : public EvictionPolicy {
 public:
  explicit FtpmPolicy(NextArrivalPredictorPtr predictor) : predictor_(std::move(predictor)) {}

  std::string name() const override { return "FtPM"; }

  void reset(const SimContext& ctx) override {
    predictor_->reset(ctx.instance, ctx.rng);
    phase_ = MarkingPhase(ctx.instance.k, ctx.instance.universe());
    predicted_.assign(ctx.instance.universe(), kNever);
    queries_ = 0;
  }

  std::optional<PageId> serve(Time t, PageId page, const CacheState& cache) override {
    phase_.observe(t, page);
    predicted_[page] = predictor_->predict(t, page);
    ++queries_;
    if (cache.contains(page) || !cache.full()) return std::nullopt;
    PageId best = kNoPage;
    for (PageId p : cache.contents()) {
      if (phase_.marked(p)) continue;
      if (best == kNoPage || predicted_[p] > predicted_[best] ||
          (predicted_[p] == predicted_[best] && p < best)) {
        best = p;
      }
    }
    if (best == kNoPage) throw Error("ftpm: no unmarked page to evict");
    return best;
  }

  PolicyStats stats() const override { return {queries_, 0, 0, 0, 0}; }

 private:
  NextArrivalPredictorPtr predictor_;
  MarkingPhase phase_;
  std::vector<Time> predicted_;
  Cost queries_ = 0;
};

inline PolicyPtr lru_policy() { return std::make_unique<LruPolicy>(); }
inline PolicyPtr marker_policy() { return std::make_unique<MarkerPolicy>(); }
inline PolicyPtr ftp_policy(ActionPredictorPtr p) { return std::make_unique<FtpPolicy>(std::move(p)); }
inline PolicyPtr ftpm_policy(NextArrivalPredictorPtr p) {
  return std::make_unique<FtpmPolicy>(std::move(p));
}

}  // namespace parsim

#endif  // PARSIM_BASELINES_BASELINES_HPP
