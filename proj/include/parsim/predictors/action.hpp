#ifndef PARSIM_PREDICTORS_ACTION_HPP
#define PARSIM_PREDICTORS_ACTION_HPP

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "parsim/core/policy.hpp"

namespace parsim {

/// One answer of an action predictor: its cache P at `query_time`, plus the
/// pages of the caller's cache that are absent from P.
struct ActionPrediction {
  std::vector<PageId> predicted_cache;  ///< sorted
  Time query_time = 0;
  std::vector<PageId> reported_evictions;

  bool contains(PageId p) const {
    return std::binary_search(predicted_cache.begin(), predicted_cache.end(), p);
  }
};

/// Source of predicted cache contents.
///
/// `observe` is called once per request, in order; afterwards `predict`
/// may be asked for the predicted cache right after serving that request.
class ActionPredictor {
 public:
  virtual ~ActionPredictor() = default;
  virtual std::string name() const = 0;
  virtual void reset(const Instance& inst, Rng& rng) = 0;
  virtual void observe(Time t, PageId page) = 0;
  virtual void predict(Time t, const PageSet& caller_cache, std::vector<PageId>& out) = 0;
};

using ActionPredictorPtr = std::unique_ptr<ActionPredictor>;

/// Error of action predictions against the fixed-tie Belady schedule:
/// eta_t = |B_t \ P_t|, where B_t is Belady's cache after serving r_t.
class PredictionErrorMeter {
 public:
  void reset(const Instance& inst) {
    inst_ = &inst;
    belady_ = PageSet(inst.universe());
    eta_t_ = eta_ = queries_ = reported_ = 0;
  }

  void observe(Time t, PageId page) {
    PageId ev = inst_->opt.evicted_at[t];
    if (ev != kNoPage) belady_.erase(ev);
    belady_.insert(page);
  }

  Cost record(const ActionPrediction& pred) {
    eta_t_ = 0;
    for (PageId p : belady_) eta_t_ += !pred.contains(p);
    eta_ += eta_t_;
    ++queries_;
    reported_ += pred.reported_evictions.size();
    return eta_t_;
  }

  const PageSet& belady_cache() const { return belady_; }
  Cost eta_t() const { return eta_t_; }
  Cost eta() const { return eta_; }
  Cost query_count() const { return queries_; }
  Cost reported_page_count() const { return reported_; }

 private:
  const Instance* inst_ = nullptr;
  PageSet belady_;
  Cost eta_t_ = 0, eta_ = 0, queries_ = 0, reported_ = 0;
};

/// A predictor together with its error meter, as owned by one policy.
class ActionChannel {
 public:
  ActionChannel() = default;
  explicit ActionChannel(ActionPredictorPtr predictor) : predictor_(std::move(predictor)) {}

  explicit operator bool() const { return static_cast<bool>(predictor_); }
  std::string name() const { return predictor_ ? predictor_->name() : "none"; }

  void reset(const Instance& inst, Rng& rng) {
    predictor_->reset(inst, rng);
    meter_.reset(inst);
  }

  void observe(Time t, PageId page) {
    predictor_->observe(t, page);
    meter_.observe(t, page);
  }

  /// Queries P_t; reports up to `max_reported` cached pages missing from P_t.
  ActionPrediction query(Time t, const PageSet& caller_cache, std::size_t max_reported) {
    ActionPrediction pred;
    pred.query_time = t;
    predictor_->predict(t, caller_cache, pred.predicted_cache);
    std::sort(pred.predicted_cache.begin(), pred.predicted_cache.end());
    for (PageId p : caller_cache.sorted()) {
      if (pred.reported_evictions.size() >= max_reported) break;
      if (!pred.contains(p)) pred.reported_evictions.push_back(p);
    }
    meter_.record(pred);
    return pred;
  }

  const PredictionErrorMeter& meter() const { return meter_; }

 private:
  ActionPredictorPtr predictor_;
  PredictionErrorMeter meter_;
};

}  // namespace parsim

#endif  // PARSIM_PREDICTORS_ACTION_HPP
