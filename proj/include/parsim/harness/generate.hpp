#ifndef PARSIM_HARNESS_GENERATE_HPP
#define PARSIM_HARNESS_GENERATE_HPP

#include <cmath>
#include <random>
#include <vector>

#include "parsim/core/request_sequence.hpp"
#include "parsim/mts/instance.hpp"

namespace parsim {

inline RequestSequence uniform_trace(std::size_t pages, std::size_t length, Rng& rng) {
  if (pages == 0) throw Error("need at least one page");
  std::vector<PageId> ids(length);
  for (auto& p : ids) p = static_cast<PageId>(uniform_index(rng, pages));
  auto seq = RequestSequence::from_ids(std::move(ids));
  seq.universe_size = pages;
  return seq;
}

/// 0, 1, ..., pages-1, 0, 1, ...
inline RequestSequence cycle_trace(std::size_t pages, std::size_t length) {
  if (pages == 0) throw Error("need at least one page");
  std::vector<PageId> ids(length);
  for (std::size_t t = 0; t < length; ++t) ids[t] = static_cast<PageId>(t % pages);
  auto seq = RequestSequence::from_ids(std::move(ids));
  seq.universe_size = pages;
  return seq;
}

/// Page i drawn with weight 1 / (i+1)^s.
inline RequestSequence zipf_trace(std::size_t pages, std::size_t length, double s, Rng& rng) {
  if (pages == 0) throw Error("need at least one page");
  std::vector<double> w(pages);
  for (std::size_t i = 0; i < pages; ++i) w[i] = 1.0 / std::pow(static_cast<double>(i + 1), s);
  std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
  std::vector<PageId> ids(length);
  for (auto& p : ids) p = static_cast<PageId>(dist(rng));
  auto seq = RequestSequence::from_ids(std::move(ids));
  seq.universe_size = pages;
  return seq;
}

struct RandomMtsOptions {
  std::size_t n = 4;
  std::size_t horizon = 6;
  std::size_t a = 1;
  int max_edge = 4;
  int max_cost = 5;
  double inf_probability = 0.1;
};

/// Integer shortest-path metric on a random complete graph with integer
/// costs, some of them infinite. Integer data keeps all sums exact.
inline mts::MtsInstance random_mts(const RandomMtsOptions& opt, Rng& rng) {
  using mts::Vector;
  const std::size_t n = opt.n;
  if (n == 0) throw Error("need at least one state");
  std::uniform_int_distribution<int> edge(1, opt.max_edge), cost(0, opt.max_cost);
  std::bernoulli_distribution inf(opt.inf_probability);
  std::vector<Vector> d(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = edge(rng);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
  mts::MtsInstance inst;
  inst.d = mts::Metric(std::move(d));
  inst.a = opt.a;
  inst.x0 = uniform_index(rng, n);
  inst.costs.assign(opt.horizon, Vector(n));
  for (auto& row : inst.costs)
    for (double& c : row) c = inf(rng) ? mts::kInf : cost(rng);
  inst.pad_to_period();
  return inst;
}

}  // namespace parsim

#endif  // PARSIM_HARNESS_GENERATE_HPP
