#ifndef PARSIM_CORE_REQUEST_SEQUENCE_HPP
#define PARSIM_CORE_REQUEST_SEQUENCE_HPP

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "parsim/core/types.hpp"

namespace parsim {

/// A page-request trace over a dense page universe.
struct RequestSequence {
  std::vector<PageId> requests;
  std::size_t universe_size = 0;

  std::size_t length() const { return requests.size(); }
  bool empty() const { return requests.empty(); }
  PageId operator[](Time t) const { return requests[t]; }

  /// Builds a sequence from already-dense ids; universe is max id + 1.
  static RequestSequence from_ids(std::vector<PageId> ids) {
    RequestSequence seq;
    for (PageId p : ids) {
      if (p + 1 > seq.universe_size) seq.universe_size = p + 1;
    }
    seq.requests = std::move(ids);
    return seq;
  }

  /// Throws if an id is outside the universe.
  void validate() const {
    for (PageId p : requests) {
      if (p >= universe_size) throw Error("page id out of universe");
    }
  }

  std::size_t distinct_pages() const {
    std::vector<char> seen(universe_size, 0);
    std::size_t n = 0;
    for (PageId p : requests) {
      if (!seen[p]) {
        seen[p] = 1;
        ++n;
      }
    }
    return n;
  }
};

/// First-seen re-mapping of raw trace tokens to dense page ids.
class TokenMapper {
 public:
  PageId map(std::string_view token) {
    auto it = ids_.find(std::string(token));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<PageId>(tokens_.size());
    ids_.emplace(std::string(token), id);
    tokens_.emplace_back(token);
    return id;
  }

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(PageId id) const { return tokens_.at(id); }

 private:
  std::unordered_map<std::string, PageId> ids_;
  std::vector<std::string> tokens_;
};

template <typename Range>
RequestSequence sequence_from_tokens(const Range& tokens) {
  TokenMapper mapper;
  RequestSequence seq;
  for (const auto& tok : tokens) seq.requests.push_back(mapper.map(tok));
  seq.universe_size = mapper.size();
  return seq;
}

}  // namespace parsim

#endif  // PARSIM_CORE_REQUEST_SEQUENCE_HPP
