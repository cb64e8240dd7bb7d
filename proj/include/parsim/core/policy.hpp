#ifndef PARSIM_CORE_POLICY_HPP
#define PARSIM_CORE_POLICY_HPP

#include <memory>
#include <optional>
#include <string>

#include "parsim/core/cache_state.hpp"
#include "parsim/offline/belady.hpp"

namespace parsim {

/// Immutable per-trace data shared by every simulation on it.
struct Instance {
  RequestSequence seq;
  NextArrivalIndex index;
  std::size_t k = 0;
  BeladySchedule opt;

  Instance(RequestSequence s, std::size_t cache_size)
      : seq(std::move(s)), index(seq), k(cache_size), opt(belady_schedule(seq, cache_size, index)) {
    if (cache_size == 0) throw Error("cache capacity must be >= 1");
    seq.validate();
  }

  std::size_t length() const { return seq.length(); }
  std::size_t universe() const { return seq.universe_size; }
};

/// What a policy sees when a simulation starts.
struct SimContext {
  const Instance& instance;
  Rng& rng;
};

/// Predictor usage reported by a policy.
struct PolicyStats {
  Cost queries = 0;
  Cost reported_pages = 0;
  Cost eta = 0;
  Cost robust_phases = 0;
  Cost slack_events = 0;
};

/// Lazy eviction policy driven by `simulate`.
///
/// `serve` is called for every request with the cache before the request is
/// served. On a miss with a full cache it must return a cached victim; in
/// every other case the return value is ignored.
class EvictionPolicy {
 public:
  virtual ~EvictionPolicy() = default;
  virtual std::string name() const = 0;
  virtual void reset(const SimContext& ctx) = 0;
  virtual std::optional<PageId> serve(Time t, PageId page, const CacheState& cache) = 0;
  virtual PolicyStats stats() const { return {}; }
};

/// Policy that may reshape its whole cache at any step.
///
/// `serve` returns the desired cache after serving r_t; it must contain r_t
/// and hold at most k pages. Cost is the number of pages it ever loads,
/// tracked by its own CacheState.
class EagerPolicy {
 public:
  virtual ~EagerPolicy() = default;
  virtual std::string name() const = 0;
  virtual void reset(const SimContext& ctx) = 0;
  virtual const CacheState& serve(Time t, PageId page) = 0;
  virtual PolicyStats stats() const { return {}; }

  /// Pages the eager policy would rather keep when a lazy wrapper has to
  /// choose among several legal victims (e.g. the latest predicted cache).
  virtual bool prefers_to_keep(PageId) const { return false; }
};

using PolicyPtr = std::unique_ptr<EvictionPolicy>;
using EagerPtr = std::unique_ptr<EagerPolicy>;

}  // namespace parsim

#endif  // PARSIM_CORE_POLICY_HPP
