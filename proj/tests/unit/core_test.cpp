#include <gtest/gtest.h>

#include "oracles.hpp"
#include "parsim/core/cache_state.hpp"
#include "parsim/core/next_arrival.hpp"
#include "parsim/core/request_sequence.hpp"
#include "parsim/harness/generate.hpp"

using namespace parsim;

TEST(RequestSequence, TokensMapFirstSeen) {
  std::vector<std::string> toks{"x", "y", "x", "z"};
  auto seq = sequence_from_tokens(toks);
  EXPECT_EQ(seq.requests, (std::vector<PageId>{0, 1, 0, 2}));
  EXPECT_EQ(seq.universe_size, 3u);
  EXPECT_EQ(seq.distinct_pages(), 3u);
}

TEST(RequestSequence, ValidateRejectsOutOfUniverse) {
  RequestSequence seq{{0, 3}, 2};
  EXPECT_THROW(seq.validate(), Error);
}

TEST(PageSet, InsertEraseContains) {
  PageSet s(8);
  EXPECT_TRUE(s.insert(3));
  EXPECT_FALSE(s.insert(3));
  s.insert(5);
  s.insert(1);
  EXPECT_EQ(s.sorted(), (std::vector<PageId>{1, 3, 5}));
  EXPECT_TRUE(s.erase(3));
  EXPECT_FALSE(s.contains(3));
  EXPECT_EQ(s.size(), 2u);
  PageSet t(8);
  t.insert(5);
  t.insert(1);
  EXPECT_TRUE(s == t);
  t.insert(7);
  EXPECT_EQ(difference_size(t, s), 1u);
}

TEST(CacheState, CountsLoadsAndRejectsOverflow) {
  CacheState c(2, 4);
  c.load(0);
  c.load(1);
  EXPECT_TRUE(c.full());
  EXPECT_THROW(c.load(2), Error);
  EXPECT_THROW(c.evict(3), Error);
  c.evict(0);
  c.load(2);
  EXPECT_EQ(c.faults(), 3u);
}

TEST(RecencyList, LeastRecentSkipsFiltered) {
  RecencyList r(5);
  r.touch(0, 0);
  r.touch(1, 1);
  r.touch(2, 2);
  r.touch(0, 3);
  EXPECT_EQ(r.least_recent([](PageId) { return true; }), 1u);
  EXPECT_EQ(r.least_recent([](PageId p) { return p != 1; }), 2u);
  EXPECT_EQ(r.most_recent(2), (std::vector<PageId>{0, 2}));
  EXPECT_EQ(r.last_use(4), kNever);
}

TEST(NextArrivalIndex, EmptyTraceThrows) {
  RequestSequence empty;
  EXPECT_THROW(NextArrivalIndex{empty}, Error);
}

TEST(NextArrivalIndex, MatchesLinearScan) {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    auto seq = uniform_trace(1 + uniform_index(rng, 7), 1 + uniform_index(rng, 60), rng);
    NextArrivalIndex idx(seq);
    for (Time t = 0; t < seq.length(); ++t) {
      EXPECT_EQ(idx.next(t), oracle::next_after(seq, t, seq[t]));
      for (PageId p = 0; p < seq.universe_size; ++p) {
        EXPECT_EQ(idx.next_after(t, p), oracle::next_after(seq, t, p));
      }
    }
  }
}

TEST(NextArrivalIndex, NeverRequestedAgainIsNever) {
  auto seq = RequestSequence::from_ids({0, 1, 2});
  NextArrivalIndex idx(seq);
  EXPECT_EQ(idx.next(0), kNever);
  EXPECT_EQ(idx.next_at_or_after(1, 0), kNever);
}
