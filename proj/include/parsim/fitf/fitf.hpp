#ifndef PARSIM_FITF_FITF_HPP
#define PARSIM_FITF_FITF_HPP

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parsim/baselines/marking.hpp"
#include "parsim/core/lazify.hpp"
#include "parsim/fnr/window_plan.hpp"
#include "parsim/predictors/fitf_oracle.hpp"

namespace parsim {

/// Prediction budget of the robust part: per phase fewer than b * c_t
/// answers, per window fewer than c_t, where c_t counts clean arrivals so far.
struct FitfBudget {
  std::size_t b = 1;
  std::size_t phase_queries = 0;
  std::size_t window_queries = 0;
  std::size_t clean = 0;

  bool allows() const { return phase_queries < b * clean && window_queries < clean; }
};

/// An eviction made on an oracle answer.
struct OracleEviction {
  Time time = 0;
  PageId page = kNoPage;
  bool correct = false;
  bool in_robust = false;
  std::size_t phase = 0;
};

struct FitfSegment {
  bool robust = false;
  Time begin = 0;
  Time end = 0;
  Cost cost = 0;
  Cost queries = 0;
  Cost wrong = 0;  ///< incorrect oracle answers consumed
  PageSet start_cache;
};

/// Follower with a FitF oracle and the budgeted robust phase, as an eager
/// policy.
///
/// Follower evicts the oracle's page as long as Belady, restarted at the
/// beginning of this Follower execution from the same cache, faults
/// together with it; otherwise one budgeted marking phase runs, after which
/// all marked pages are loaded.
class FitfCore final : public EagerPolicy {
 public:
  FitfCore(FitfOraclePtr oracle, std::size_t b) : oracle_(std::move(oracle)), b_(b) {
    if (b == 0) throw Error("budget b must be >= 1");
  }

  std::string name() const override { return "FitF-F&R_b" + std::to_string(b_); }

  void reset(const SimContext& ctx) override {
    inst_ = &ctx.instance;
    rng_ = &ctx.rng;
    k_ = inst_->k;
    plan_ = WindowPlan::with_queries(k_, {});
    if (static_cast<double>(b_) > std::max(1.0, std::ceil(std::log2(static_cast<double>(k_))))) {
      throw Error("budget b must lie in 1..log k");
    }
    oracle_->reset(*inst_, *rng_);
    cache_ = CacheState(k_, inst_->universe());
    phase_ = MarkingPhase(k_, inst_->universe());
    old_ = PageSet(inst_->universe());
    robust_ = false;
    queries_ = wrong_ = 0;
    evictions_.clear();
    segments_.clear();
    phase_index_ = 0;
    start_follower(0);
  }

  const CacheState& serve(Time t, PageId page) override {
    if (robust_ && phase_.ends_phase(page)) {
      end_robust(t);
      start_follower(t);
    }
    if (!robust_) {
      const bool belady_fault = runner_->step().fault;
      if (!cache_.contains(page)) {
        if (belady_fault) {
          if (cache_.full()) oracle_evict(t, false);
          cache_.load(page);
        } else {
          close_segment(t);
          start_robust(t);
        }
      }
    }
    if (robust_) robust_step(t, page);
    return cache_;
  }

  PolicyStats stats() const override {
    Cost phases = 0;
    for (const auto& s : segments_) phases += s.robust;
    phases += open_.robust;
    return {queries_, queries_, wrong_, phases, 0};
  }

  std::vector<FitfSegment> segments() const {
    auto out = segments_;
    FitfSegment cur = open_;
    cur.end = inst_->length();
    cur.cost = cache_.faults() - open_cost_;
    cur.queries = queries_ - open_queries_;
    cur.wrong = wrong_ - open_wrong_;
    out.push_back(std::move(cur));
    return out;
  }

  const std::vector<OracleEviction>& oracle_evictions() const { return evictions_; }
  Cost wrong_answers() const { return wrong_; }
  std::size_t budget() const { return b_; }

 private:
  void start_follower(Time t) {
    open_segment(false, t);
    runner_.emplace(inst_->seq, inst_->index, k_, t, &cache_.contents());
  }

  void start_robust(Time t) {
    open_segment(true, t);
    robust_ = true;
    old_ = cache_.contents();
    phase_.start(t);
    budget_ = FitfBudget{b_, 0, 0, 0};
    window_ = static_cast<std::size_t>(-1);
    ++phase_index_;
  }

  void robust_step(Time t, PageId page) {
    const auto ev = phase_.observe(t, page);
    if (ev.arrival) {
      if (!old_.contains(page)) ++budget_.clean;
      const std::size_t w = plan_.window_of(ev.arrival_number);
      if (w != window_) {
        window_ = w;
        budget_.window_queries = 0;
      }
    }
    if (cache_.contains(page)) return;
    if (cache_.full()) {
      if (budget_.allows()) {
        oracle_evict(t, true);
        ++budget_.phase_queries;
        ++budget_.window_queries;
      } else {
        std::vector<PageId> unmarked;
        for (PageId p : cache_.contents().sorted()) {
          if (!phase_.marked(p)) unmarked.push_back(p);
        }
        if (unmarked.empty()) throw Error("fitf: no unmarked page to evict");
        cache_.evict(unmarked[uniform_index(*rng_, unmarked.size())]);
      }
    }
    cache_.load(page);
  }

  void end_robust(Time t) {
    const PageSet& marked = phase_.marks();
    std::vector<PageId> drop;
    for (PageId p : cache_.contents()) {
      if (!marked.contains(p)) drop.push_back(p);
    }
    for (PageId p : drop) cache_.evict(p);
    for (PageId p : marked) cache_.load(p);
    robust_ = false;
    close_segment(t);
  }

  void oracle_evict(Time t, bool in_robust) {
    const PageId p = oracle_->furthest(t, cache_.contents());
    if (p == kNoPage || !cache_.contains(p)) throw Error("illegal oracle answer");
    const bool correct = is_fitf_page(*inst_, t, cache_.contents(), p);
    ++queries_;
    wrong_ += !correct;
    evictions_.push_back({t, p, correct, in_robust, phase_index_});
    cache_.evict(p);
  }

  void open_segment(bool robust, Time t) {
    open_ = FitfSegment{};
    open_.robust = robust;
    open_.begin = t;
    open_.start_cache = cache_.contents();
    open_cost_ = cache_.faults();
    open_queries_ = queries_;
    open_wrong_ = wrong_;
  }

  void close_segment(Time t) {
    open_.end = t;
    open_.cost = cache_.faults() - open_cost_;
    open_.queries = queries_ - open_queries_;
    open_.wrong = wrong_ - open_wrong_;
    segments_.push_back(open_);
  }

  FitfOraclePtr oracle_;
  std::size_t b_;
  const Instance* inst_ = nullptr;
  Rng* rng_ = nullptr;
  std::size_t k_ = 0;
  WindowPlan plan_;
  CacheState cache_;
  std::optional<BeladyRunner> runner_;

  bool robust_ = false;
  MarkingPhase phase_;
  PageSet old_;
  FitfBudget budget_;
  std::size_t window_ = 0;
  std::size_t phase_index_ = 0;

  Cost queries_ = 0;
  Cost wrong_ = 0;
  std::vector<OracleEviction> evictions_;

  FitfSegment open_;
  Cost open_cost_ = 0, open_queries_ = 0, open_wrong_ = 0;
  std::vector<FitfSegment> segments_;
};

inline EagerPtr fitf_eager(FitfOraclePtr oracle, std::size_t b) {
  return std::make_unique<FitfCore>(std::move(oracle), b);
}

inline PolicyPtr fitf_policy(FitfOraclePtr oracle, std::size_t b) {
  return lazify(fitf_eager(std::move(oracle), b));
}

}  // namespace parsim

#endif  // PARSIM_FITF_FITF_HPP
