#ifndef PARSIM_CORE_LEDGER_HPP
#define PARSIM_CORE_LEDGER_HPP

#include <string>
#include <vector>

#include "parsim/core/types.hpp"

namespace parsim {

/// Fault counts of the algorithm (A), Belady (B) and the predictor (P),
/// optionally sliced into tagged intervals [begin, end).
struct CostLedger {
  struct Interval {
    std::string tag;
    Time begin = 0;
    Time end = 0;
    Cost alg = 0;
    Cost belady = 0;
    Cost predictor = 0;
  };

  Cost alg_cost = 0;
  Cost belady_cost = 0;
  Cost predictor_cost = 0;
  std::vector<Interval> intervals;

  /// Sum of interval slices; equals the totals when intervals tile the run.
  Interval slice_sum() const {
    Interval s;
    for (const auto& iv : intervals) {
      s.alg += iv.alg;
      s.belady += iv.belady;
      s.predictor += iv.predictor;
    }
    return s;
  }
};

}  // namespace parsim

#endif  // PARSIM_CORE_LEDGER_HPP
