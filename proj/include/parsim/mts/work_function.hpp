#ifndef PARSIM_MTS_WORK_FUNCTION_HPP
#define PARSIM_MTS_WORK_FUNCTION_HPP

#include <algorithm>
#include <cmath>

#include "parsim/mts/instance.hpp"

namespace parsim::mts {

/// Work function values after `step` cost functions.
struct WorkFunctionTable {
  Vector w;
  std::size_t step = 0;

  double operator()(State x) const { return w[x]; }
  std::size_t size() const { return w.size(); }
};

/// w_0(x) = d(start, x).
inline WorkFunctionTable initial_work_function(const Metric& d, State start) {
  WorkFunctionTable out{Vector(d.size()), 0};
  for (State x = 0; x < d.size(); ++x) out.w[x] = d(start, x);
  return out;
}

/// w_t(x) = min_y w_{t-1}(y) + l_t(y) + d(y, x).
inline WorkFunctionTable work_function_step(const WorkFunctionTable& prev, const Vector& cost,
                                            const Metric& d) {
  const std::size_t n = d.size();
  WorkFunctionTable out{Vector(n, kInf), prev.step + 1};
  for (State y = 0; y < n; ++y) {
    const double base = prev.w[y] + cost[y];
    if (!std::isfinite(base)) continue;
    for (State x = 0; x < n; ++x) out.w[x] = std::min(out.w[x], base + d(y, x));
  }
  return out;
}

/// Work function of the window l_{from+1..from+len} started at state q_prev.
inline WorkFunctionTable window_work_function(State q_prev, const std::vector<Vector>& costs,
                                              std::size_t from, std::size_t len, const Metric& d) {
  if (from + len > costs.size()) throw Error("window exceeds the horizon");
  WorkFunctionTable w = initial_work_function(d, q_prev);
  for (std::size_t t = from; t < from + len; ++t) w = work_function_step(w, costs[t], d);
  return w;
}

/// w(x) <= w(y) + d(y, x) for all x, y (infinite values compare as such).
inline bool is_lipschitz(const WorkFunctionTable& w, const Metric& d, double tol = 1e-9) {
  for (State x = 0; x < w.size(); ++x)
    for (State y = 0; y < w.size(); ++y)
      if (w.w[x] > w.w[y] + d(y, x) + tol) return false;
  return true;
}

inline bool supports(const WorkFunctionTable& w, const Metric& d, State x, State p, double tol = 1e-9) {
  const double lhs = w.w[x] + d(x, p);
  const double rhs = w.w[p];
  if (std::isinf(lhs) || std::isinf(rhs)) return lhs == rhs;
  return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs));
}

/// Cheapest state x with w(x) + d(x, p) == w(p); ties to the smallest index.
inline State support_point(const WorkFunctionTable& w, State p, const Metric& d) {
  State best = p;
  for (State x = 0; x < w.size(); ++x) {
    if (!supports(w, d, x, p)) continue;
    if (w.w[x] < w.w[best] || (w.w[x] == w.w[best] && x < best)) best = x;
  }
  return best;
}

}  // namespace parsim::mts

#endif  // PARSIM_MTS_WORK_FUNCTION_HPP
