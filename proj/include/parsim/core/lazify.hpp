#ifndef PARSIM_CORE_LAZIFY_HPP
#define PARSIM_CORE_LAZIFY_HPP

#include <memory>
#include <vector>

#include "parsim/core/policy.hpp"

namespace parsim {

/// Lazy execution of an eager policy.
///
/// The eager policy is fed every request and keeps its own target cache.
/// The real cache only changes on misses: the requested page is loaded and,
/// if full, one page outside the target is evicted (pages the eager policy
/// prefers to keep go last, then least recently used). Each lazy miss on p
/// can be charged to the eager load of p since the lazy cache last dropped
/// it, so lazy cost never exceeds eager cost.
class Lazified final : public EvictionPolicy {
 public:
  explicit Lazified(EagerPtr eager) : eager_(std::move(eager)) {}

  std::string name() const override { return eager_->name(); }

  void reset(const SimContext& ctx) override {
    eager_->reset(ctx);
    recency_ = RecencyList(ctx.instance.universe());
  }

  std::optional<PageId> serve(Time t, PageId page, const CacheState& cache) override {
    const CacheState& target = eager_->serve(t, page);
    recency_.touch(page, t);
    if (cache.contains(page) || !cache.full()) return std::nullopt;
    candidates_.clear();
    for (PageId p : cache.contents()) {
      if (!target.contains(p)) candidates_.push_back(p);
    }
    if (candidates_.empty()) throw Error("eager target exceeds capacity");
    PageId best = kNoPage;
    bool best_keep = true;
    Time best_use = 0;
    for (PageId p : candidates_) {
      bool keep = eager_->prefers_to_keep(p);
      Time use = recency_.last_use(p);
      if (best == kNoPage || (best_keep && !keep) ||
          (keep == best_keep && (use < best_use || (use == best_use && p < best)))) {
        best = p;
        best_keep = keep;
        best_use = use;
      }
    }
    return best;
  }

  PolicyStats stats() const override { return eager_->stats(); }

  EagerPolicy& eager() { return *eager_; }
  const EagerPolicy& eager() const { return *eager_; }

 private:
  EagerPtr eager_;
  RecencyList recency_;
  std::vector<PageId> candidates_;
};

inline PolicyPtr lazify(EagerPtr eager) { return std::make_unique<Lazified>(std::move(eager)); }

}  // namespace parsim

#endif  // PARSIM_CORE_LAZIFY_HPP
