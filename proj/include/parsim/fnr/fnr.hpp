#ifndef PARSIM_FNR_FNR_HPP
#define PARSIM_FNR_FNR_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parsim/baselines/marking.hpp"
#include "parsim/core/lazify.hpp"
#include "parsim/fnr/window_plan.hpp"
#include "parsim/predictors/action.hpp"

namespace parsim {

/// How F&R may talk to its predictor.
struct QueryMode {
  /// 0: unbounded (queries whenever the algorithm asks); a >= 1: queries at
  /// least `a` steps apart, Follower falls back to LRU and Robust ignores F.
  std::size_t separation = 0;

  static QueryMode unbounded() { return {}; }
  static QueryMode a_separated(std::size_t a) {
    if (a == 0) throw Error("separation a must be >= 1");
    return {a};
  }
  bool separated() const { return separation != 0; }
};

struct FnrConfig {
  /// Window plan for a given k; defaults to f(i) = i.
  std::optional<GrowthFunction> f = GrowthFunction::linear();
  /// Explicit F arrivals, used instead of f when non-empty.
  std::vector<std::size_t> query_arrivals;
  double alpha = 1.0;
  QueryMode mode;
  /// Load all marked pages when a Robust phase ends.
  bool final_load = true;
  /// Clean-arrival misses evict an unmarked page outside P once Robust has
  /// received a prediction in the current phase.
  bool clean_evicts_unpredicted = true;
  /// Ask for a fresh prediction at every clean arrival (off by default).
  bool query_clean_arrivals = false;

  WindowPlan plan_for(std::size_t k) const {
    if (!query_arrivals.empty()) return WindowPlan::with_queries(k, query_arrivals);
    return WindowPlan::make(k, f.value_or(GrowthFunction::linear()));
  }
};

/// Pages evicted at the start of a Robust window: (M ∪ C_i) \ cache.
struct WindowRecord {
  std::size_t phase = 0;
  std::size_t window = 0;  ///< 0-based
  Time time = 0;
  std::vector<PageId> evicted;
  std::size_t clean_before = 0;  ///< c_i, clean arrivals before the window
  bool cache_full = true;
};

/// One stretch of Follower or Robust execution, [begin, end).
struct FnrSegment {
  enum class Kind { follower, robust };
  Kind kind = Kind::follower;
  Time begin = 0;
  Time end = 0;
  Cost cost = 0;     ///< eager page loads
  Cost queries = 0;
  std::size_t clean = 0;              ///< robust only
  bool ended_with_marked_cache = false;  ///< robust only: cache == M after the final load
  bool completed = false;             ///< robust only: ran to the (k+1)-st distinct page
};

/// Follower + Robust_f as an eager policy.
///
/// Follower copies the predictor while Belady faults together with it and
/// switches to one marking phase of Robust_f once its own faults in the
/// current period exceed alpha times Belady's. Robust_f starts from the k
/// most recently requested pages, evicts random unmarked pages, queries at
/// F arrivals, synchronizes with the latest prediction at S arrivals and
/// finally loads every page marked in the phase.
class FnrCore final : public EagerPolicy {
 public:
  FnrCore(ActionPredictorPtr predictor, FnrConfig config)
      : channel_(std::move(predictor)), cfg_(std::move(config)) {
    if (!(cfg_.alpha >= 1.0)) throw Error("alpha must be >= 1");
  }

  std::string name() const override {
    return cfg_.mode.separated() ? "F&R_a" + std::to_string(cfg_.mode.separation) : "F&R";
  }

  void reset(const SimContext& ctx) override {
    inst_ = &ctx.instance;
    rng_ = &ctx.rng;
    k_ = inst_->k;
    plan_ = cfg_.plan_for(k_);
    channel_.reset(*inst_, *rng_);
    cache_ = CacheState(k_, inst_->universe());
    recency_ = RecencyList(inst_->universe());
    phase_ = MarkingPhase(k_, inst_->universe());
    old_ = PageSet(inst_->universe());
    prediction_ = ActionPrediction{};
    has_queried_ = false;
    last_query_ = 0;
    robust_ = false;
    slack_ = 0;
    phase_index_ = 0;
    segments_.clear();
    windows_.clear();
    open_segment(FnrSegment::Kind::follower, 0);
  }

  const CacheState& serve(Time t, PageId page) override {
    channel_.observe(t, page);
    now_ = t;
    const bool belady_fault = inst_->opt.fault_at[t];
    if (robust_ && phase_.ends_phase(page)) end_robust(t);
    if (robust_) {
      robust_step(t, page);
    } else {
      follower_step(t, page, belady_fault);
    }
    recency_.touch(page, t);
    return cache_;
  }

  PolicyStats stats() const override {
    const auto& m = channel_.meter();
    Cost phases = 0;
    for (const auto& s : segments_) phases += s.kind == FnrSegment::Kind::robust;
    if (open_.kind == FnrSegment::Kind::robust) ++phases;
    return {m.query_count(), m.reported_page_count(), m.eta(), phases, slack_};
  }

  bool prefers_to_keep(PageId p) const override { return has_queried_ && prediction_.contains(p); }

  /// Closed segments plus the running one.
  std::vector<FnrSegment> segments() const {
    std::vector<FnrSegment> out = segments_;
    FnrSegment cur = open_;
    cur.end = inst_ ? inst_->length() : now_;
    cur.cost = cache_.faults() - open_cost_;
    cur.queries = channel_.meter().query_count() - open_queries_;
    cur.clean = clean_;
    out.push_back(cur);
    return out;
  }

  const std::vector<WindowRecord>& windows() const { return windows_; }
  const WindowPlan& plan() const { return plan_; }
  const PredictionErrorMeter& meter() const { return channel_.meter(); }
  const CacheState& cache() const { return cache_; }
  bool in_robust() const { return robust_; }

 private:
  // ---- Follower ----

  void follower_step(Time t, PageId page, bool belady_fault) {
    period_belady_ += belady_fault;
    if (cache_.contains(page)) return;
    const bool in_prediction = has_queried_ && prediction_.contains(page);
    if (belady_fault && !in_prediction) {
      follow(t, page);
    } else if (!belady_fault && !within_budget()) {
      start_robust(t);
      robust_step(t, page);
    } else if (in_prediction) {
      // Lazy synchronization: keep P's pages, drop one outside it.
      if (cache_.full()) {
        PageId victim = recency_.least_recent(
            [&](PageId p) { return cache_.contains(p) && !prediction_.contains(p); });
        if (victim == kNoPage) victim = lru_victim();
        cache_.evict(victim);
      }
      cache_.load(page);
      ++period_faults_;
    } else {
      follow(t, page);
    }
  }

  /// One more fault keeps the gap within alpha times Belady's gap cost plus
  /// Belady's cost in the preceding Robust phase.
  bool within_budget() const {
    return static_cast<double>(period_faults_ + 1) <=
           cfg_.alpha * static_cast<double>(period_belady_) + static_cast<double>(carry_);
  }

  void follow(Time t, PageId page) {
    ++period_faults_;
    if (cfg_.mode.separated() && !may_query(t)) {
      if (cache_.full()) cache_.evict(lru_victim());
      cache_.load(page);
      return;
    }
    query(t, cache_.full() ? 1 : 0);
    if (cache_.full()) {
      PageId victim = recency_.least_recent(
          [&](PageId p) { return cache_.contains(p) && !prediction_.contains(p); });
      if (victim == kNoPage) victim = lru_victim();
      cache_.evict(victim);
    }
    cache_.load(page);
  }

  // ---- Robust_f ----

  void start_robust(Time t) {
    close_segment(t);
    open_segment(FnrSegment::Kind::robust, t);
    robust_ = true;
    // Marking cache of a phase that would start now.
    const std::vector<PageId> recent = recency_.most_recent(k_);
    old_.clear();
    for (PageId p : recent) old_.insert(p);
    std::vector<PageId> drop;
    for (PageId p : cache_.contents()) {
      if (!old_.contains(p)) drop.push_back(p);
    }
    for (PageId p : drop) cache_.evict(p);
    for (PageId p : recent) cache_.load(p);
    phase_.start(t);
    clean_ = 0;
    random_evicted_.clear();
    phase_predicted_ = false;
    window_ = static_cast<std::size_t>(-1);
    ++phase_index_;
  }

  void robust_step(Time t, PageId page) {
    const auto ev = phase_.observe(t, page);
    bool clean_arrival = false;
    bool window_start = false;
    if (ev.arrival) {
      clean_arrival = !old_.contains(page);
      const std::size_t w = plan_.window_of(ev.arrival_number);
      window_start = (w != window_) && plan_.in_s(ev.arrival_number);
      window_ = w;
    }
    const bool fault = !cache_.contains(page);
    if (fault) {
      bool ask = false;
      if (cfg_.mode.separated()) {
        ask = may_query(t);
      } else if (ev.arrival) {
        ask = plan_.in_f(ev.arrival_number) || (cfg_.query_clean_arrivals && clean_arrival);
      }
      if (ask) {
        query(t, clean_ + (clean_arrival ? 1 : 0));
        phase_predicted_ = true;
      }
      if (ev.arrival && plan_.in_s(ev.arrival_number)) synchronize();
    }
    if (window_start) record_window(t, page);
    if (clean_arrival) ++clean_;
    if (cache_.contains(page)) return;
    if (cache_.full()) {
      PageId victim = kNoPage;
      if (clean_arrival && cfg_.clean_evicts_unpredicted && phase_predicted_) {
        victim = recency_.least_recent([&](PageId p) {
          return cache_.contains(p) && !phase_.marked(p) && !prediction_.contains(p);
        });
      }
      if (victim == kNoPage) {
        victim = random_unmarked();
        if (victim != kNoPage) random_evicted_.push_back(victim);
      }
      if (victim == kNoPage) {
        ++slack_;
        victim = lru_victim();
      }
      cache_.evict(victim);
    }
    cache_.load(page);
  }

  /// Randomly evicted pages return; as many cached pages outside P leave.
  void synchronize() {
    std::vector<PageId> pending;
    for (PageId p : random_evicted_) {
      if (!cache_.contains(p) && std::find(pending.begin(), pending.end(), p) == pending.end()) {
        pending.push_back(p);
      }
    }
    random_evicted_.clear();
    if (pending.empty()) return;
    std::vector<PageId> outside;
    for (PageId p : cache_.contents()) {
      if (!(has_queried_ && prediction_.contains(p))) outside.push_back(p);
    }
    // Unmarked first, then least recently used.
    std::sort(outside.begin(), outside.end(), [&](PageId a, PageId b) {
      const bool ma = phase_.marked(a), mb = phase_.marked(b);
      if (ma != mb) return !ma;
      const Time ua = recency_.last_use(a), ub = recency_.last_use(b);
      return ua != ub ? ua < ub : a < b;
    });
    const std::size_t evict = std::min(pending.size(), outside.size());
    if (evict < pending.size()) ++slack_;
    for (std::size_t i = 0; i < evict; ++i) cache_.evict(outside[i]);
    std::size_t reload = std::min(pending.size(), k_ - cache_.size());
    for (std::size_t i = 0; i < reload; ++i) cache_.load(pending[i]);
    for (std::size_t i = reload; i < pending.size(); ++i) random_evicted_.push_back(pending[i]);
  }

  void record_window(Time t, PageId page) {
    WindowRecord rec;
    rec.phase = phase_index_;
    rec.window = window_;
    rec.time = t;
    rec.clean_before = clean_;
    rec.cache_full = cache_.full();
    for (PageId p : phase_.marks()) {
      if (p != page && !cache_.contains(p) && !old_.contains(p)) rec.evicted.push_back(p);
    }
    for (PageId p : old_) {
      if (!cache_.contains(p)) rec.evicted.push_back(p);
    }
    std::sort(rec.evicted.begin(), rec.evicted.end());
    windows_.push_back(std::move(rec));
  }

  void end_robust(Time t) {
    if (cfg_.final_load) {
      const PageSet& marked = phase_.marks();
      std::vector<PageId> drop;
      for (PageId p : cache_.contents()) {
        if (!marked.contains(p)) drop.push_back(p);
      }
      for (PageId p : drop) cache_.evict(p);
      for (PageId p : marked) cache_.load(p);
    }
    open_.ended_with_marked_cache = cache_.contents() == phase_.marks();
    open_.completed = true;
    close_segment(t);
    const Cost robust_belady = inst_->opt.faults_in(open_.begin, t);
    open_segment(FnrSegment::Kind::follower, t);
    carry_ = robust_belady;
    robust_ = false;
    // Follower starts from its own cache as the prediction.
    prediction_ = ActionPrediction{};
    prediction_.predicted_cache = cache_.contents().sorted();
    has_queried_ = true;
  }

  // ---- helpers ----

  bool may_query(Time t) const {
    return !cfg_.mode.separated() || !has_queried_ || t - last_query_ >= cfg_.mode.separation;
  }

  void query(Time t, std::size_t max_reported) {
    prediction_ = channel_.query(t, cache_.contents(), max_reported);
    has_queried_ = true;
    last_query_ = t;
  }

  PageId lru_victim() const {
    return recency_.least_recent([&](PageId p) { return cache_.contains(p); });
  }

  PageId random_unmarked() {
    candidates_.clear();
    for (PageId p : cache_.contents().sorted()) {
      if (!phase_.marked(p)) candidates_.push_back(p);
    }
    if (candidates_.empty()) return kNoPage;
    return candidates_[uniform_index(*rng_, candidates_.size())];
  }

  void open_segment(FnrSegment::Kind kind, Time t) {
    open_ = FnrSegment{};
    open_.kind = kind;
    open_.begin = t;
    open_cost_ = cache_.faults();
    open_queries_ = channel_.meter().query_count();
    period_faults_ = 0;
    period_belady_ = 0;
    carry_ = 0;
  }

  void close_segment(Time t) {
    open_.end = t;
    open_.cost = cache_.faults() - open_cost_;
    open_.queries = channel_.meter().query_count() - open_queries_;
    if (open_.kind == FnrSegment::Kind::robust) open_.clean = clean_;
    segments_.push_back(open_);
  }

  ActionChannel channel_;
  FnrConfig cfg_;
  const Instance* inst_ = nullptr;
  Rng* rng_ = nullptr;
  std::size_t k_ = 0;
  WindowPlan plan_;
  CacheState cache_;
  RecencyList recency_;
  Time now_ = 0;

  ActionPrediction prediction_;
  bool has_queried_ = false;
  Time last_query_ = 0;

  bool robust_ = false;
  Cost period_faults_ = 0;
  Cost period_belady_ = 0;
  Cost carry_ = 0;  ///< Belady's cost in the Robust phase before this gap

  MarkingPhase phase_;
  PageSet old_;
  std::size_t clean_ = 0;
  std::vector<PageId> random_evicted_;
  bool phase_predicted_ = false;
  std::size_t window_ = 0;
  std::size_t phase_index_ = 0;
  std::vector<PageId> candidates_;
  Cost slack_ = 0;

  FnrSegment open_;
  Cost open_cost_ = 0;
  Cost open_queries_ = 0;
  std::vector<FnrSegment> segments_;
  std::vector<WindowRecord> windows_;
};

inline EagerPtr fnr_eager(ActionPredictorPtr predictor, FnrConfig config = {}) {
  return std::make_unique<FnrCore>(std::move(predictor), std::move(config));
}

/// F&R as a lazy eviction policy.
inline PolicyPtr fnr_policy(ActionPredictorPtr predictor, FnrConfig config = {}) {
  return lazify(fnr_eager(std::move(predictor), std::move(config)));
}

}  // namespace parsim

#endif  // PARSIM_FNR_FNR_HPP
