#ifndef PARSIM_FNR_WINDOW_PLAN_HPP
#define PARSIM_FNR_WINDOW_PLAN_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "parsim/core/types.hpp"

namespace parsim {

/// Growth function f deciding how many predictions each window asks for.
class GrowthFunction {
 public:
  enum class Kind { exponential, quadratic, linear, zero, table };

  static GrowthFunction exponential() { return GrowthFunction(Kind::exponential); }
  /// i^2 capped by 2^i - 1, the largest growth the window split can use.
  static GrowthFunction quadratic() { return GrowthFunction(Kind::quadratic); }
  static GrowthFunction linear() { return GrowthFunction(Kind::linear); }
  static GrowthFunction zero() { return GrowthFunction(Kind::zero); }
  /// Explicit values f(0), f(1), ...; the last value repeats beyond the table.
  static GrowthFunction table(std::vector<long long> values) {
    if (values.empty()) throw Error("empty f table");
    GrowthFunction g(Kind::table);
    g.values_ = std::move(values);
    return g;
  }

  Kind kind() const { return kind_; }

  long long operator()(std::size_t i) const {
    const long long cap = i >= 62 ? (1LL << 62) : (1LL << i) - 1;
    switch (kind_) {
      case Kind::exponential: return cap;
      case Kind::quadratic: return std::min<long long>(static_cast<long long>(i * i), cap);
      case Kind::linear: return static_cast<long long>(i);
      case Kind::zero: return 0;
      case Kind::table: return i < values_.size() ? values_[i] : values_.back();
    }
    return 0;
  }

  /// Checks f(0) = 0, monotone, convex and f(i) <= 2^i - 1 on 0..upto.
  void validate(std::size_t upto) const {
    if ((*this)(0) != 0) throw Error("f(0) must be 0");
    for (std::size_t i = 1; i <= upto; ++i) {
      const long long fi = (*this)(i);
      if (fi < (*this)(i - 1)) throw Error("f must be non-decreasing");
      if (i >= 2 && fi - (*this)(i - 1) < (*this)(i - 1) - (*this)(i - 2)) {
        throw Error("f must be convex");
      }
      if (i < 62 && fi > (1LL << i) - 1) {
        throw Error("f(" + std::to_string(i) + ") exceeds 2^i - 1");
      }
    }
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::exponential: return "exp";
      case Kind::quadratic: return "quad";
      case Kind::linear: return "lin";
      case Kind::zero: return "zero";
      case Kind::table: {
        std::ostringstream os;
        os << "f:";
        for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
        return os.str();
      }
    }
    return "?";
  }

 private:
  explicit GrowthFunction(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<long long> values_;
};

/// Split of a phase's k arrivals into windows, synchronization arrivals S
/// and query arrivals F.
///
/// Window i covers half of the arrivals left after windows 1..i-1 (rounded
/// up); the last window is {k}. For k a power of two this gives
/// S = {k - 2^j + 1 : j = log k .. 0}.
class WindowPlan {
 public:
  WindowPlan() = default;

  /// F takes the earliest min(f(i) - f(i-1), |W_i|) arrivals of each window.
  static WindowPlan make(std::size_t k, const GrowthFunction& f) {
    WindowPlan plan = split(k);
    f.validate(plan.window_count());
    for (std::size_t w = 0; w < plan.window_count(); ++w) {
      const long long want = f(w + 1) - f(w);
      const std::size_t take =
          static_cast<std::size_t>(std::min<long long>(want, static_cast<long long>(plan.window_size(w))));
      for (std::size_t j = 0; j < take; ++j) plan.in_f_[plan.starts_[w] + j] = true;
    }
    plan.label_ = f.describe();
    return plan;
  }

  /// Explicit query arrivals, e.g. {1, 6, 9}.
  static WindowPlan with_queries(std::size_t k, const std::vector<std::size_t>& arrivals) {
    WindowPlan plan = split(k);
    std::ostringstream os;
    os << "F:";
    for (std::size_t i = 0; i < arrivals.size(); ++i) {
      if (arrivals[i] < 1 || arrivals[i] > k) throw Error("query arrival outside 1..k");
      plan.in_f_[arrivals[i]] = true;
      os << (i ? "," : "") << arrivals[i];
    }
    plan.label_ = os.str();
    return plan;
  }

  std::size_t k() const { return k_; }
  /// Number of windows before the final {k}; "log k" for powers of two.
  std::size_t log_k() const { return starts_.size() - 1; }
  std::size_t window_count() const { return starts_.size(); }

  /// 1-based first arrival of each window (the set S).
  const std::vector<std::size_t>& sync_arrivals() const { return starts_; }

  std::vector<std::size_t> query_arrivals() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 1; a <= k_; ++a) {
      if (in_f_[a]) out.push_back(a);
    }
    return out;
  }

  bool in_s(std::size_t arrival) const { return arrival <= k_ && is_start_[arrival]; }
  bool in_f(std::size_t arrival) const { return arrival <= k_ && in_f_[arrival]; }

  /// First and last arrival of window w (0-based index).
  std::size_t window_begin(std::size_t w) const { return starts_.at(w); }
  std::size_t window_end(std::size_t w) const {
    return w + 1 < starts_.size() ? starts_[w + 1] - 1 : k_;
  }
  std::size_t window_size(std::size_t w) const { return window_end(w) - window_begin(w) + 1; }

  /// 0-based window containing the 1-based arrival.
  std::size_t window_of(std::size_t arrival) const {
    std::size_t w = 0;
    while (w + 1 < starts_.size() && starts_[w + 1] <= arrival) ++w;
    return w;
  }

  std::size_t query_count() const { return query_arrivals().size(); }
  const std::string& label() const { return label_; }

 private:
  static WindowPlan split(std::size_t k) {
    if (k == 0) throw Error("cache capacity must be >= 1");
    WindowPlan plan;
    plan.k_ = k;
    std::size_t next = 1, remaining = k;
    while (remaining > 1) {
      plan.starts_.push_back(next);
      const std::size_t len = (remaining + 1) / 2;
      next += len;
      remaining -= len;
    }
    plan.starts_.push_back(next);
    plan.is_start_.assign(k + 1, false);
    plan.in_f_.assign(k + 1, false);
    for (std::size_t s : plan.starts_) plan.is_start_[s] = true;
    return plan;
  }

  std::size_t k_ = 0;
  std::vector<std::size_t> starts_;
  std::vector<bool> is_start_;
  std::vector<bool> in_f_;
  std::string label_;
};

inline WindowPlan window_plan(std::size_t k, const GrowthFunction& f) { return WindowPlan::make(k, f); }

}  // namespace parsim

#endif  // PARSIM_FNR_WINDOW_PLAN_HPP
