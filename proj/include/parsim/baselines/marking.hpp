#ifndef PARSIM_BASELINES_MARKING_HPP
#define PARSIM_BASELINES_MARKING_HPP

#include <vector>

#include "parsim/core/page_set.hpp"
#include "parsim/core/request_sequence.hpp"

namespace parsim {

/// Marking-phase bookkeeping shared by Marker, FtPM and the robust part of
/// F&R. A phase may start at any time; it ends right before the (k+1)-st
/// distinct page since its start.
class MarkingPhase {
 public:
  struct Event {
    bool new_phase = false;       ///< this request opened a new phase
    bool arrival = false;         ///< first request of the page in the phase
    std::size_t arrival_number = 0;  ///< 1-based, valid when `arrival`
  };

  MarkingPhase() = default;
  MarkingPhase(std::size_t k, std::size_t universe) : k_(k), marks_(universe) {}

  void start(Time t) {
    marks_.clear();
    start_ = t;
  }

  /// Whether requesting p would open a new phase.
  bool ends_phase(PageId p) const { return !marks_.contains(p) && marks_.size() >= k_; }

  /// Marks p, first opening a new phase if p is the (k+1)-st distinct page.
  Event observe(Time t, PageId p) {
    Event ev;
    if (ends_phase(p)) {
      start(t);
      ev.new_phase = true;
    }
    if (!marks_.contains(p)) {
      marks_.insert(p);
      ev.arrival = true;
      ev.arrival_number = marks_.size();
    }
    return ev;
  }

  bool marked(PageId p) const { return marks_.contains(p); }
  const PageSet& marks() const { return marks_; }
  std::size_t distinct() const { return marks_.size(); }
  Time phase_start() const { return start_; }
  std::size_t k() const { return k_; }

 private:
  std::size_t k_ = 0;
  PageSet marks_;
  Time start_ = 0;
};

/// Start times of the marking phases that partition the trace from t = 0.
inline std::vector<Time> marking_phase_starts(const RequestSequence& seq, std::size_t k) {
  std::vector<Time> starts;
  if (seq.empty()) return starts;
  MarkingPhase phase(k, seq.universe_size);
  starts.push_back(0);
  for (Time t = 0; t < seq.length(); ++t) {
    if (phase.observe(t, seq[t]).new_phase) starts.push_back(t);
  }
  return starts;
}

}  // namespace parsim

#endif  // PARSIM_BASELINES_MARKING_HPP
