#ifndef PARSIM_PREDICTORS_NEXT_ARRIVAL_HPP
#define PARSIM_PREDICTORS_NEXT_ARRIVAL_HPP

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "parsim/core/policy.hpp"

namespace parsim {

/// Predicts, at each request, when the requested page will be requested next.
class NextArrivalPredictor {
 public:
  virtual ~NextArrivalPredictor() = default;
  virtual std::string name() const = 0;
  virtual void reset(const Instance& inst, Rng& rng) = 0;
  /// Predicted next request time of r_t (> t), or kNever.
  virtual Time predict(Time t, PageId page) = 0;
};

using NextArrivalPredictorPtr = std::unique_ptr<NextArrivalPredictor>;

namespace detail {
inline Time ahead(Time t, double gap) {
  if (!(gap >= 1.0)) gap = 1.0;  // also catches NaN
  const double room = static_cast<double>(kNever - 1 - t);
  if (gap >= room) return kNever - 1;
  return t + static_cast<Time>(std::llround(gap));
}
}  // namespace detail

enum class NoiseModel { multiplicative, additive };

/// True next arrival with log-normal(0, sigma) noise on the gap.
///
/// multiplicative: gap * X; additive: gap + (X - 1). Both are exact at
/// sigma = 0 and never predict earlier than t + 1.
class SyntheticNextArrival final : public NextArrivalPredictor {
 public:
  explicit SyntheticNextArrival(double sigma, NoiseModel model = NoiseModel::multiplicative)
      : sigma_(sigma), model_(model) {
    if (!(sigma >= 0.0)) throw Error("sigma must be >= 0");
  }

  std::string name() const override { return "synthetic"; }
  double sigma() const { return sigma_; }

  void reset(const Instance& inst, Rng& rng) override {
    inst_ = &inst;
    rng_ = &rng;
  }

  Time predict(Time t, PageId) override {
    const Time truth = inst_->index.next(t);
    if (truth == kNever) return kNever;
    const double gap = static_cast<double>(truth - t);
    if (sigma_ == 0.0) return truth;
    const double x = std::lognormal_distribution<double>(0.0, sigma_)(*rng_);
    return detail::ahead(t, model_ == NoiseModel::multiplicative ? gap * x : gap + (x - 1.0));
  }

 private:
  double sigma_;
  NoiseModel model_;
  const Instance* inst_ = nullptr;
  Rng* rng_ = nullptr;
};

/// POPU: a page seen in fraction p of the requests so far (current one
/// included) is predicted back in 1/p steps.
class PopuNextArrival final : public NextArrivalPredictor {
 public:
  std::string name() const override { return "popu"; }

  void reset(const Instance& inst, Rng&) override { counts_.assign(inst.universe(), 0); }

  Time predict(Time t, PageId page) override {
    if (page >= counts_.size()) counts_.resize(page + 1, 0);
    const double count = static_cast<double>(++counts_[page]);
    return detail::ahead(t, static_cast<double>(t + 1) / count);
  }

 private:
  std::vector<std::uint64_t> counts_;
};

inline NextArrivalPredictorPtr synthetic_next_arrival(double sigma,
                                                      NoiseModel model = NoiseModel::multiplicative) {
  return std::make_unique<SyntheticNextArrival>(sigma, model);
}

inline NextArrivalPredictorPtr popu_predictor() { return std::make_unique<PopuNextArrival>(); }

}  // namespace parsim

#endif  // PARSIM_PREDICTORS_NEXT_ARRIVAL_HPP
