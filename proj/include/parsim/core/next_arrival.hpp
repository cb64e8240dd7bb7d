#ifndef PARSIM_CORE_NEXT_ARRIVAL_HPP
#define PARSIM_CORE_NEXT_ARRIVAL_HPP

#include <algorithm>
#include <vector>

#include "parsim/core/request_sequence.hpp"

namespace parsim {

/// Next-request positions for a fixed trace.
///
/// `next(t)` is the next position after t that requests r_t, or kNever.
/// `next_at_or_after(t, p)` answers the same question for any page.
class NextArrivalIndex {
 public:
  NextArrivalIndex() = default;

  explicit NextArrivalIndex(const RequestSequence& seq) {
    if (seq.empty()) throw Error("empty trace");
    const std::size_t T = seq.length();
    next_.assign(T, kNever);
    std::vector<Time> upcoming(seq.universe_size, kNever);
    for (std::size_t i = T; i-- > 0;) {
      PageId p = seq[i];
      next_[i] = upcoming[p];
      upcoming[p] = i;
    }
    occurrences_.assign(seq.universe_size, {});
    for (std::size_t i = 0; i < T; ++i) occurrences_[seq[i]].push_back(i);
  }

  std::size_t length() const { return next_.size(); }

  Time next(Time t) const { return next_.at(t); }

  /// First position >= t requesting p.
  Time next_at_or_after(Time t, PageId p) const {
    if (p >= occurrences_.size()) return kNever;
    const auto& occ = occurrences_[p];
    auto it = std::lower_bound(occ.begin(), occ.end(), t);
    return it == occ.end() ? kNever : *it;
  }

  /// First position > t requesting p.
  Time next_after(Time t, PageId p) const {
    return t == kNever ? kNever : next_at_or_after(t + 1, p);
  }

 private:
  std::vector<Time> next_;
  std::vector<std::vector<Time>> occurrences_;
};

inline NextArrivalIndex build_next_arrival_index(const RequestSequence& seq) {
  return NextArrivalIndex(seq);
}

}  // namespace parsim

#endif  // PARSIM_CORE_NEXT_ARRIVAL_HPP
