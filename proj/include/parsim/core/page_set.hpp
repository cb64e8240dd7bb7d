#ifndef PARSIM_CORE_PAGE_SET_HPP
#define PARSIM_CORE_PAGE_SET_HPP

#include <algorithm>
#include <span>
#include <vector>

#include "parsim/core/types.hpp"

namespace parsim {

/// Set of pages over a dense universe: O(1) insert, erase and membership.
/// Iteration order is insertion order perturbed by swap-removal.
class PageSet {
 public:
  PageSet() = default;
  explicit PageSet(std::size_t universe) : slot_(universe, kAbsent) {}

  std::size_t universe() const { return slot_.size(); }
  std::size_t size() const { return pages_.size(); }
  bool empty() const { return pages_.empty(); }

  bool contains(PageId p) const { return p < slot_.size() && slot_[p] != kAbsent; }

  bool insert(PageId p) {
    if (p >= slot_.size()) slot_.resize(p + 1, kAbsent);
    if (slot_[p] != kAbsent) return false;
    slot_[p] = static_cast<std::uint32_t>(pages_.size());
    pages_.push_back(p);
    return true;
  }

  bool erase(PageId p) {
    if (!contains(p)) return false;
    std::uint32_t at = slot_[p];
    PageId last = pages_.back();
    pages_[at] = last;
    slot_[last] = at;
    pages_.pop_back();
    slot_[p] = kAbsent;
    return true;
  }

  void clear() {
    for (PageId p : pages_) slot_[p] = kAbsent;
    pages_.clear();
  }

  std::span<const PageId> pages() const { return pages_; }
  auto begin() const { return pages_.begin(); }
  auto end() const { return pages_.end(); }

  std::vector<PageId> sorted() const {
    std::vector<PageId> out(pages_);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const PageSet& a, const PageSet& b) {
    if (a.size() != b.size()) return false;
    return std::all_of(a.begin(), a.end(), [&](PageId p) { return b.contains(p); });
  }

 private:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;
  std::vector<std::uint32_t> slot_;
  std::vector<PageId> pages_;
};

/// |a \ b|
inline std::size_t difference_size(const PageSet& a, const PageSet& b) {
  return static_cast<std::size_t>(
      std::count_if(a.begin(), a.end(), [&](PageId p) { return !b.contains(p); }));
}

}  // namespace parsim

#endif  // PARSIM_CORE_PAGE_SET_HPP
