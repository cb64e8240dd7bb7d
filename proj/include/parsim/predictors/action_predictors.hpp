#ifndef PARSIM_PREDICTORS_ACTION_PREDICTORS_HPP
#define PARSIM_PREDICTORS_ACTION_PREDICTORS_HPP

#include <set>
#include <utility>

#include "parsim/predictors/action.hpp"
#include "parsim/predictors/next_arrival.hpp"

namespace parsim {

/// Perfect predictor: P_t is Belady's cache after serving r_t.
class BeladyActionPredictor final : public ActionPredictor {
 public:
  std::string name() const override { return "belady"; }

  void reset(const Instance& inst, Rng&) override {
    inst_ = &inst;
    cache_ = PageSet(inst.universe());
  }

  void observe(Time t, PageId page) override {
    PageId ev = inst_->opt.evicted_at[t];
    if (ev != kNoPage) cache_.erase(ev);
    cache_.insert(page);
  }

  void predict(Time, const PageSet&, std::vector<PageId>& out) override {
    out.assign(cache_.begin(), cache_.end());
  }

 private:
  const Instance* inst_ = nullptr;
  PageSet cache_;
};

/// Turns next-arrival predictions into action predictions by simulating a
/// lazy cache that evicts the page with the furthest predicted next arrival
/// (ties to the smallest id, as Belady).
class NextArrivalActionPredictor final : public ActionPredictor {
 public:
  explicit NextArrivalActionPredictor(NextArrivalPredictorPtr source) : source_(std::move(source)) {}

  std::string name() const override { return source_->name(); }
  NextArrivalPredictor& source() { return *source_; }

  void reset(const Instance& inst, Rng& rng) override {
    source_->reset(inst, rng);
    k_ = inst.k;
    cache_ = PageSet(inst.universe());
    key_.assign(inst.universe(), kNever);
    by_next_.clear();
    loads_ = 0;
  }

  void observe(Time t, PageId page) override {
    const Time predicted = source_->predict(t, page);
    if (cache_.contains(page)) {
      by_next_.erase({key_[page], page});
    } else {
      ++loads_;
      if (cache_.size() >= k_) {
        Time furthest = std::prev(by_next_.end())->first;
        auto it = by_next_.lower_bound({furthest, 0});
        cache_.erase(it->second);
        by_next_.erase(it);
      }
      cache_.insert(page);
    }
    key_[page] = predicted;
    by_next_.emplace(predicted, page);
  }

  void predict(Time, const PageSet&, std::vector<PageId>& out) override {
    out.assign(cache_.begin(), cache_.end());
  }

  const PageSet& cache() const { return cache_; }
  Cost loads() const { return loads_; }

 private:
  NextArrivalPredictorPtr source_;
  std::size_t k_ = 0;
  PageSet cache_;
  std::vector<Time> key_;
  std::set<std::pair<Time, PageId>> by_next_;
  Cost loads_ = 0;
};

/// Worst-case advice: P is the caller's cache plus r_t, minus the caller's
/// pages with the nearest true next arrival (at least one, and enough to fit k).
class AdversarialActionPredictor final : public ActionPredictor {
 public:
  std::string name() const override { return "adversarial"; }

  void reset(const Instance& inst, Rng& rng) override {
    inst_ = &inst;
    rng_ = &rng;
  }

  void observe(Time, PageId page) override { current_ = page; }

  void predict(Time t, const PageSet& caller, std::vector<PageId>& out) override {
    std::vector<std::pair<Time, std::uint64_t>> order;  // (next arrival, random tiebreak)
    std::vector<PageId> others;
    for (PageId p : caller.sorted()) {
      if (p != current_) others.push_back(p);
    }
    for (PageId p : others) order.emplace_back(inst_->index.next_after(t, p), (*rng_)());
    std::vector<std::size_t> idx(others.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return order[a] < order[b]; });
    // Keep at most k-1 others, and always drop the nearest one.
    std::size_t drop = others.empty() ? 0 : 1;
    if (others.size() + 1 > inst_->k) drop = std::max(drop, others.size() + 1 - inst_->k);
    out.clear();
    out.push_back(current_);
    for (std::size_t i = drop; i < idx.size(); ++i) out.push_back(others[idx[i]]);
  }

 private:
  const Instance* inst_ = nullptr;
  Rng* rng_ = nullptr;
  PageId current_ = kNoPage;
};

inline ActionPredictorPtr belady_predictor() { return std::make_unique<BeladyActionPredictor>(); }

inline ActionPredictorPtr next_arrival_to_action(NextArrivalPredictorPtr source) {
  return std::make_unique<NextArrivalActionPredictor>(std::move(source));
}

inline ActionPredictorPtr adversarial_predictor() {
  return std::make_unique<AdversarialActionPredictor>();
}

}  // namespace parsim

#endif  // PARSIM_PREDICTORS_ACTION_PREDICTORS_HPP
