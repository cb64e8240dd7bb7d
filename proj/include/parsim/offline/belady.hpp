#ifndef PARSIM_OFFLINE_BELADY_HPP
#define PARSIM_OFFLINE_BELADY_HPP

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "parsim/core/cache_state.hpp"
#include "parsim/core/ledger.hpp"
#include "parsim/core/next_arrival.hpp"

namespace parsim {

/// Belady (furthest-in-future) simulation that can start at any time from
/// any cache content and be stepped one request at a time.
///
/// Ties between pages never requested again go to the smallest page id.
class BeladyRunner {
 public:
  struct Step {
    bool fault = false;
    PageId evicted = kNoPage;
  };

  BeladyRunner(const RequestSequence& seq, const NextArrivalIndex& index, std::size_t k,
               Time start = 0, const PageSet* initial = nullptr)
      : seq_(&seq), index_(&index), k_(k), time_(start), cache_(seq.universe_size),
        key_(seq.universe_size, kNever) {
    if (k == 0) throw Error("cache capacity must be >= 1");
    if (initial) {
      if (initial->size() > k) throw Error("initial cache larger than k");
      for (PageId p : *initial) {
        cache_.insert(p);
        key_[p] = index.next_at_or_after(start, p);
        by_next_.emplace(key_[p], p);
      }
    }
  }

  bool done() const { return time_ >= seq_->length(); }
  Time time() const { return time_; }
  const PageSet& cache() const { return cache_; }
  Cost faults() const { return faults_; }

  /// The page Belady would evict now; requires a full cache.
  PageId victim() const {
    Time furthest = std::prev(by_next_.end())->first;
    return by_next_.lower_bound({furthest, 0})->second;
  }

  Step step() {
    const PageId p = (*seq_)[time_];
    const Time nxt = index_->next(time_);
    Step s;
    if (cache_.contains(p)) {
      by_next_.erase({key_[p], p});
    } else {
      s.fault = true;
      ++faults_;
      if (cache_.size() >= k_) {
        s.evicted = victim();
        by_next_.erase({key_[s.evicted], s.evicted});
        cache_.erase(s.evicted);
        key_[s.evicted] = kNever;
      }
      cache_.insert(p);
    }
    key_[p] = nxt;
    by_next_.emplace(nxt, p);
    ++time_;
    return s;
  }

 private:
  const RequestSequence* seq_;
  const NextArrivalIndex* index_;
  std::size_t k_;
  Time time_;
  PageSet cache_;
  std::vector<Time> key_;
  std::set<std::pair<Time, PageId>> by_next_;
  Cost faults_ = 0;
};

/// Full-sequence Belady run from an empty cache.
struct BeladySchedule {
  std::vector<bool> fault_at;
  std::vector<PageId> evicted_at;  ///< kNoPage where nothing was evicted
  Cost opt_cost = 0;

  /// Faults in [begin, end).
  Cost faults_in(Time begin, Time end) const {
    Cost c = 0;
    for (Time t = begin; t < end && t < fault_at.size(); ++t) c += fault_at[t];
    return c;
  }
};

inline BeladySchedule belady_schedule(const RequestSequence& seq, std::size_t k,
                                      const NextArrivalIndex& index) {
  BeladySchedule out;
  out.fault_at.reserve(seq.length());
  out.evicted_at.reserve(seq.length());
  BeladyRunner runner(seq, index, k);
  while (!runner.done()) {
    auto s = runner.step();
    out.fault_at.push_back(s.fault);
    out.evicted_at.push_back(s.evicted);
  }
  out.opt_cost = runner.faults();
  return out;
}

inline BeladySchedule belady_schedule(const RequestSequence& seq, std::size_t k) {
  return belady_schedule(seq, k, NextArrivalIndex(seq));
}

/// Whether Belady faults at t (0-based). By prefix consistency this is also
/// whether Belady run on r_0..r_t alone faults at its last step.
inline bool belady_prefix_fault(const BeladySchedule& schedule, Time t) {
  if (t >= schedule.fault_at.size()) throw Error("time out of range");
  return schedule.fault_at[t];
}

/// Faults of Belady serving r_start.. from `initial`.
inline CostLedger belady_restart(const RequestSequence& seq, std::size_t k, Time start,
                                 const PageSet& initial, const NextArrivalIndex& index) {
  CostLedger ledger;
  BeladyRunner runner(seq, index, k, start, &initial);
  while (!runner.done()) runner.step();
  ledger.belady_cost = runner.faults();
  ledger.intervals.push_back({"belady-restart", start, seq.length(), 0, runner.faults(), 0});
  return ledger;
}

}  // namespace parsim

#endif  // PARSIM_OFFLINE_BELADY_HPP
