#ifndef PARSIM_MTS_FTSP_HPP
#define PARSIM_MTS_FTSP_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "parsim/mts/offline.hpp"
#include "parsim/mts/work_function.hpp"

namespace parsim::mts {

struct CycleResult {
  Trajectory xs;
  double cost = 0;
  double final_budget = 0;
  std::size_t doublings = 0;
};

/// One interpolation cycle around q over steps from+1..from+len.
///
/// Each step takes the cheapest move within the ball B(q, R); when the cycle
/// cost would exceed R, R doubles and the ball grows. R starts at r0.
inline CycleResult emek_cycle(State x_start, State q, const std::vector<Vector>& costs, std::size_t from,
                              std::size_t len, const Metric& d, double r0) {
  if (!(r0 > 0)) throw Error("initial budget must be positive");
  if (from + len > costs.size()) throw Error("cycle exceeds the horizon");
  CycleResult out;
  double R = r0;
  State prev = x_start;
  double diameter = 0;
  for (State x = 0; x < d.size(); ++x) diameter = std::max(diameter, d(q, x));

  auto cheapest = [&](std::size_t t, double radius, double& value) {
    State best = prev;
    value = kInf;
    for (State x = 0; x < d.size(); ++x) {
      if (d(q, x) > radius) continue;
      const double v = d(prev, x) + costs[t][x];
      if (v < value) {
        value = v;
        best = x;
      }
    }
    return best;
  };

  for (std::size_t t = from; t < from + len; ++t) {
    double step = 0;
    State x = cheapest(t, R, step);
    while (out.cost + step > R) {
      if (R >= diameter && !std::isfinite(out.cost + step)) {
        if (!std::isfinite(step)) {
          x = prev;
          step = costs[t][prev];
        }
        break;
      }
      R *= 2;
      ++out.doublings;
      x = cheapest(t, R, step);
    }
    out.xs.push_back(x);
    out.cost += step;
    prev = x;
  }
  out.final_budget = R;
  return out;
}

/// Predicted states p_i, chosen support states q_i and reference offline
/// states o_i at times ia.
struct PredictionTrack {
  std::vector<State> p, q, o;
  double eta = 0;
};

struct FtspResult {
  Trajectory xs;
  double cost = 0;    ///< cost of the online trajectory
  double q_cost = 0;  ///< Σ wf_i(q_i), the comparison algorithm that sits at q_i at times ia
  PredictionTrack track;
  std::vector<WorkFunctionTable> wf;
  std::vector<CycleResult> cycles;
};

/// Runs the algorithm with one prediction per period. `reference` gives the
/// offline states o_i for error metering; by default the DP optimum is used.
inline FtspResult ftsp_run(const MtsInstance& inst, const std::vector<State>& predictions,
                           std::optional<std::vector<State>> reference = std::nullopt) {
  inst.validate();
  if (inst.horizon() % inst.a) throw Error("horizon is not a multiple of the period");
  const std::size_t periods = inst.periods();
  if (predictions.size() != periods) {
    throw Error("expected " + std::to_string(periods) + " predictions, got " +
                std::to_string(predictions.size()));
  }
  for (State p : predictions) {
    if (p >= inst.n()) throw Error("predicted state out of range");
  }
  if (!reference) {
    const OfflineSolution off = brute_force_offline(inst);
    reference.emplace();
    for (std::size_t i = 1; i <= periods; ++i) reference->push_back(off.xs[i * inst.a - 1]);
  }
  if (reference->size() != periods) throw Error("reference state count mismatch");

  FtspResult out;
  const double r0 = inst.d.min_positive();
  State q_prev = inst.x0;
  State x = inst.x0;
  auto run_cycle = [&](std::size_t i, State q) {
    CycleResult c = emek_cycle(x, q, inst.costs, i * inst.a, inst.a, inst.d, r0);
    out.xs.insert(out.xs.end(), c.xs.begin(), c.xs.end());
    out.cost += c.cost;
    if (!c.xs.empty()) x = c.xs.back();
    out.cycles.push_back(std::move(c));
  };

  if (periods > 0) run_cycle(0, inst.x0);
  for (std::size_t i = 1; i <= periods; ++i) {
    WorkFunctionTable wf = window_work_function(q_prev, inst.costs, (i - 1) * inst.a, inst.a, inst.d);
    const State p = predictions[i - 1];
    const State q = support_point(wf, p, inst.d);
    const State o = (*reference)[i - 1];
    out.track.p.push_back(p);
    out.track.q.push_back(q);
    out.track.o.push_back(o);
    out.track.eta += inst.d(p, o);
    out.q_cost += wf(q);
    out.wf.push_back(std::move(wf));
    q_prev = q;
    if (i < periods) run_cycle(i, q);
  }
  return out;
}

}  // namespace parsim::mts

#endif  // PARSIM_MTS_FTSP_HPP
