#ifndef PARSIM_CORE_SIMULATE_HPP
#define PARSIM_CORE_SIMULATE_HPP

#include <functional>
#include <vector>

#include "parsim/core/policy.hpp"

namespace parsim {

struct SimulationResult {
  CostLedger ledger;
  CacheState final_cache;
  std::vector<bool> fault_trace;
  PolicyStats stats;
};

/// Per-step hook: time, requested page, whether it faulted, cache after serving.
using StepObserver = std::function<void(Time, PageId, bool, const CacheState&)>;

/// Runs a lazy policy from a cold cache. Deterministic in (policy, instance, seed).
inline SimulationResult simulate(EvictionPolicy& policy, const Instance& inst, std::uint64_t seed,
                                 const StepObserver& observer = {}) {
  Rng rng(seed);
  policy.reset(SimContext{inst, rng});
  CacheState cache(inst.k, inst.universe());
  SimulationResult out;
  out.fault_trace.reserve(inst.length());
  for (Time t = 0; t < inst.length(); ++t) {
    const PageId page = inst.seq[t];
    const bool hit = cache.contains(page);
    auto victim = policy.serve(t, page, cache);
    if (!hit) {
      if (cache.full()) {
        if (!victim || *victim == page || !cache.contains(*victim)) throw Error("illegal eviction");
        cache.evict(*victim);
      }
      cache.load(page);
    }
    out.fault_trace.push_back(!hit);
    if (observer) observer(t, page, !hit, cache);
  }
  out.ledger.alg_cost = cache.faults();
  out.ledger.belady_cost = inst.opt.opt_cost;
  out.stats = policy.stats();
  out.ledger.intervals.push_back({"run", 0, inst.length(), cache.faults(), inst.opt.opt_cost, 0});
  out.final_cache = std::move(cache);
  return out;
}

inline SimulationResult simulate(EvictionPolicy& policy, const RequestSequence& seq, std::size_t k,
                                 std::uint64_t seed) {
  Instance inst(seq, k);
  return simulate(policy, inst, seed);
}

/// Runs an eager policy directly; cost is pages loaded.
inline SimulationResult simulate_eager(EagerPolicy& policy, const Instance& inst,
                                       std::uint64_t seed, const StepObserver& observer = {}) {
  Rng rng(seed);
  policy.reset(SimContext{inst, rng});
  SimulationResult out;
  out.fault_trace.reserve(inst.length());
  Cost before = 0;
  const CacheState* last = nullptr;
  for (Time t = 0; t < inst.length(); ++t) {
    const PageId page = inst.seq[t];
    const CacheState& target = policy.serve(t, page);
    if (!target.contains(page) || target.size() > inst.k) throw Error("eager policy broke its contract");
    out.fault_trace.push_back(target.faults() != before);
    before = target.faults();
    if (observer) observer(t, page, out.fault_trace.back(), target);
    last = &target;
  }
  out.ledger.alg_cost = before;
  out.ledger.belady_cost = inst.opt.opt_cost;
  out.stats = policy.stats();
  if (last) out.final_cache = *last;
  return out;
}

}  // namespace parsim

#endif  // PARSIM_CORE_SIMULATE_HPP
