#ifndef PARSIM_PREDICTORS_FITF_ORACLE_HPP
#define PARSIM_PREDICTORS_FITF_ORACLE_HPP

#include <memory>
#include <random>
#include <string>

#include "parsim/core/policy.hpp"

namespace parsim {

/// Names the page of the caller's cache requested furthest in the future.
class FitfOracle {
 public:
  virtual ~FitfOracle() = default;
  virtual std::string name() const = 0;
  virtual void reset(const Instance& inst, Rng& rng) = 0;
  virtual PageId furthest(Time t, const PageSet& cache) = 0;
};

using FitfOraclePtr = std::unique_ptr<FitfOracle>;

/// True furthest-in-future page of `cache` at time t (next requests after t;
/// ties to the smallest id).
inline PageId true_fitf_page(const Instance& inst, Time t, const PageSet& cache) {
  PageId best = kNoPage;
  Time best_next = 0;
  for (PageId p : cache) {
    Time n = inst.index.next_after(t, p);
    if (best == kNoPage || n > best_next || (n == best_next && p < best)) {
      best = p;
      best_next = n;
    }
  }
  return best;
}

/// Whether `answer` is a furthest-in-future page of `cache` at time t.
inline bool is_fitf_page(const Instance& inst, Time t, const PageSet& cache, PageId answer) {
  PageId truth = true_fitf_page(inst, t, cache);
  return truth != kNoPage && inst.index.next_after(t, answer) == inst.index.next_after(t, truth);
}

/// Correct with probability 1-p, otherwise a uniformly random cached page.
class ProbabilisticFitf final : public FitfOracle {
 public:
  explicit ProbabilisticFitf(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("p must lie in [0, 1]");
  }

  std::string name() const override { return "fitf"; }
  double p() const { return p_; }

  void reset(const Instance& inst, Rng& rng) override {
    inst_ = &inst;
    rng_ = &rng;
  }

  PageId furthest(Time t, const PageSet& cache) override {
    if (cache.empty()) return kNoPage;
    if (p_ > 0.0 && std::bernoulli_distribution(p_)(*rng_)) {
      return cache.sorted()[uniform_index(*rng_, cache.size())];
    }
    return true_fitf_page(*inst_, t, cache);
  }

 private:
  double p_;
  const Instance* inst_ = nullptr;
  Rng* rng_ = nullptr;
};

/// Always names the cached page requested soonest (worst possible answer).
class AdversarialFitf final : public FitfOracle {
 public:
  std::string name() const override { return "fitf-adversarial"; }
  void reset(const Instance& inst, Rng&) override { inst_ = &inst; }

  PageId furthest(Time t, const PageSet& cache) override {
    PageId best = kNoPage;
    Time best_next = 0;
    for (PageId p : cache) {
      const Time n = inst_->index.next_after(t, p);
      if (best == kNoPage || n < best_next || (n == best_next && p < best)) {
        best = p;
        best_next = n;
      }
    }
    return best;
  }

 private:
  const Instance* inst_ = nullptr;
};

inline FitfOraclePtr fitf_probabilistic(double p) { return std::make_unique<ProbabilisticFitf>(p); }
inline FitfOraclePtr fitf_adversarial() { return std::make_unique<AdversarialFitf>(); }

}  // namespace parsim

#endif  // PARSIM_PREDICTORS_FITF_ORACLE_HPP
