#ifndef PARSIM_MTS_OFFLINE_HPP
#define PARSIM_MTS_OFFLINE_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "parsim/core/request_sequence.hpp"
#include "parsim/mts/instance.hpp"

namespace parsim::mts {

struct OfflineSolution {
  Trajectory xs;
  double cost = 0;
};

/// Exact offline optimum by DP over (t, state), move then serve. Ties go to
/// the smallest state index, both for the final state and for predecessors.
inline OfflineSolution brute_force_offline(const MtsInstance& inst) {
  const std::size_t n = inst.n(), T = inst.horizon();
  Vector v(n, kInf), next(n);
  v[inst.x0] = 0;
  std::vector<std::vector<State>> parent(T, std::vector<State>(n, 0));
  for (std::size_t t = 0; t < T; ++t) {
    for (State y = 0; y < n; ++y) {
      double best = kInf;
      State arg = y;
      for (State z = 0; z < n; ++z) {
        const double c = v[z] + inst.d(z, y);
        if (c < best) {
          best = c;
          arg = z;
        }
      }
      next[y] = best + inst.costs[t][y];
      parent[t][y] = arg;
    }
    v.swap(next);
  }
  OfflineSolution sol;
  if (T == 0) return sol;
  State end = 0;
  for (State y = 1; y < n; ++y) {
    if (v[y] < v[end]) end = y;
  }
  sol.cost = v[end];
  sol.xs.assign(T, 0);
  State cur = end;
  for (std::size_t t = T; t-- > 0;) {
    sol.xs[t] = cur;
    cur = parent[t][cur];
  }
  return sol;
}

/// Caching as an MTS: states are the page sets of size <= k (bitmask order),
/// d(A, B) = max(|A \ B|, |B \ A|), serving r_t costs 0 in states holding it
/// and infinity elsewhere. Its optimum equals the optimal number of loads.
struct CachingMts {
  MtsInstance instance;
  std::vector<std::uint32_t> masks;  ///< state -> page set
};

inline CachingMts caching_as_mts(const RequestSequence& seq, std::size_t k) {
  const std::size_t u = seq.universe_size;
  if (u > 16) throw Error("caching_as_mts supports at most 16 pages");
  CachingMts out;
  for (std::uint32_t m = 0; m < (1u << u); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) <= k) out.masks.push_back(m);
  }
  const std::size_t n = out.masks.size();
  std::vector<Vector> d(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int ab = std::popcount(out.masks[i] & ~out.masks[j]);
      const int ba = std::popcount(out.masks[j] & ~out.masks[i]);
      d[i][j] = static_cast<double>(std::max(ab, ba));
    }
  out.instance.d = Metric(std::move(d));
  out.instance.x0 = 0;  // mask 0, the empty cache
  for (std::size_t t = 0; t < seq.length(); ++t) {
    Vector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (out.masks[i] >> seq[t]) & 1u ? 0.0 : kInf;
    out.instance.costs.push_back(std::move(c));
  }
  return out;
}

}  // namespace parsim::mts

#endif  // PARSIM_MTS_OFFLINE_HPP
