#ifndef PARSIM_CORE_CACHE_STATE_HPP
#define PARSIM_CORE_CACHE_STATE_HPP

#include <vector>

#include "parsim/core/page_set.hpp"

namespace parsim {

/// Cache contents of capacity k plus the running load count.
///
/// Every load costs one unit, so for lazy policies `faults()` is the miss
/// count and for eager policies it is the number of pages ever loaded.
class CacheState {
 public:
  CacheState() = default;
  CacheState(std::size_t k, std::size_t universe) : k_(k), contents_(universe) {
    if (k == 0) throw Error("cache capacity must be >= 1");
  }

  std::size_t capacity() const { return k_; }
  std::size_t size() const { return contents_.size(); }
  bool full() const { return contents_.size() >= k_; }
  bool contains(PageId p) const { return contents_.contains(p); }
  const PageSet& contents() const { return contents_; }
  Cost faults() const { return faults_; }

  void load(PageId p) {
    if (contents_.contains(p)) return;
    if (full()) throw Error("cache overflow");
    contents_.insert(p);
    ++faults_;
  }

  void evict(PageId p) {
    if (!contents_.erase(p)) throw Error("illegal eviction");
  }

 private:
  std::size_t k_ = 0;
  PageSet contents_;
  Cost faults_ = 0;
};

/// Doubly-linked recency order over the page universe.
class RecencyList {
 public:
  RecencyList() = default;
  explicit RecencyList(std::size_t universe)
      : prev_(universe, kNil), next_(universe, kNil), last_use_(universe, kNever) {}

  void touch(PageId p, Time t) {
    if (p >= last_use_.size()) grow(p + 1);
    if (last_use_[p] != kNever) unlink(p);
    last_use_[p] = t;
    prev_[p] = kNil;
    next_[p] = head_;
    if (head_ != kNil) prev_[head_] = p;
    head_ = p;
    if (tail_ == kNil) tail_ = p;
  }

  /// kNever if the page was never requested.
  Time last_use(PageId p) const { return p < last_use_.size() ? last_use_[p] : kNever; }

  /// Least recently used page in `set`, or kNoPage if none qualifies.
  template <typename Pred>
  PageId least_recent(Pred&& pred) const {
    for (PageId p = tail_; p != kNil; p = prev_[p]) {
      if (pred(p)) return p;
    }
    return kNoPage;
  }

  /// Up to `n` distinct pages, most recent first.
  std::vector<PageId> most_recent(std::size_t n) const {
    std::vector<PageId> out;
    for (PageId p = head_; p != kNil && out.size() < n; p = next_[p]) out.push_back(p);
    return out;
  }

 private:
  static constexpr PageId kNil = kNoPage;

  void grow(std::size_t n) {
    prev_.resize(n, kNil);
    next_.resize(n, kNil);
    last_use_.resize(n, kNever);
  }

  void unlink(PageId p) {
    if (prev_[p] != kNil) next_[prev_[p]] = next_[p];
    else head_ = next_[p];
    if (next_[p] != kNil) prev_[next_[p]] = prev_[p];
    else tail_ = prev_[p];
  }

  std::vector<PageId> prev_, next_;
  std::vector<Time> last_use_;
  PageId head_ = kNil, tail_ = kNil;
};

/// Least recently used page among `candidates`; ties (never used) by smallest id.
template <typename Range>
PageId least_recent_of(const Range& candidates, const RecencyList& recency) {
  // Never-used pages count as oldest.
  auto age_key = [&](PageId p) {
    Time u = recency.last_use(p);
    return u == kNever ? Time{0} : u + 1;
  };
  PageId best = kNoPage;
  Time best_key = 0;
  for (PageId p : candidates) {
    Time key = age_key(p);
    if (best == kNoPage || key < best_key || (key == best_key && p < best)) {
      best = p;
      best_key = key;
    }
  }
  return best;
}

}  // namespace parsim

#endif  // PARSIM_CORE_CACHE_STATE_HPP
