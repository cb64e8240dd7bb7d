#ifndef PARSIM_MTS_INSTANCE_HPP
#define PARSIM_MTS_INSTANCE_HPP

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "parsim/core/types.hpp"

namespace parsim::mts {

using State = std::size_t;
using Vector = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Finite metric space given by its distance matrix.
class Metric {
 public:
  Metric() = default;
  explicit Metric(std::vector<Vector> d) : d_(std::move(d)) {}

  static Metric uniform(std::size_t n, double dist = 1.0) {
    std::vector<Vector> d(n, Vector(n, dist));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    return Metric(std::move(d));
  }

  std::size_t size() const { return d_.size(); }
  double operator()(State x, State y) const { return d_[x][y]; }
  const std::vector<Vector>& matrix() const { return d_; }

  /// Throws unless d is a square, finite, symmetric metric with zero diagonal.
  void validate(double tol = 1e-9) const {
    const std::size_t n = d_.size();
    if (n == 0) throw Error("metric has no states");
    for (std::size_t i = 0; i < n; ++i) {
      if (d_[i].size() != n) throw Error("distance matrix is not square");
      for (std::size_t j = 0; j < n; ++j) {
        const double v = d_[i][j];
        if (!std::isfinite(v) || v < 0) throw Error("distances must be finite and non-negative");
        if (i == j && v != 0) throw Error("distance matrix diagonal must be zero");
        if (std::abs(v - d_[j][i]) > tol) throw Error("distance matrix is not symmetric");
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m)
          if (d_[i][j] > d_[i][m] + d_[m][j] + tol) throw Error("triangle inequality violated");
  }

  /// Smallest positive distance, 1 if every distance is zero.
  double min_positive() const {
    double best = kInf;
    for (const auto& row : d_)
      for (double v : row)
        if (v > 0 && v < best) best = v;
    return std::isfinite(best) ? best : 1.0;
  }

 private:
  std::vector<Vector> d_;
};

/// Metrical task system: metric, start state, cost vectors and the period a
/// at which predictions arrive.
struct MtsInstance {
  Metric d;
  State x0 = 0;
  std::vector<Vector> costs;  ///< costs[t-1] is l_t
  std::size_t a = 1;

  std::size_t n() const { return d.size(); }
  std::size_t horizon() const { return costs.size(); }
  std::size_t periods() const { return a ? costs.size() / a : 0; }

  void validate() const {
    d.validate();
    if (x0 >= n()) throw Error("start state out of range");
    if (a == 0) throw Error("period a must be >= 1");
    for (const auto& c : costs) {
      if (c.size() != n()) throw Error("cost vector has wrong length");
      for (double v : c) {
        if (std::isnan(v) || v < 0) throw Error("costs must be non-negative");
      }
    }
  }

  /// Appends zero-cost steps until the horizon is a multiple of a.
  void pad_to_period() {
    while (a && costs.size() % a) costs.emplace_back(n(), 0.0);
  }
};

/// Sequence of states x_1..x_T (x_0 is implicit).
using Trajectory = std::vector<State>;

/// Σ d(x_{t-1}, x_t) + l_t(x_t) starting from x0.
inline double trajectory_cost(const MtsInstance& inst, const Trajectory& xs) {
  if (xs.size() != inst.horizon()) throw Error("trajectory length differs from horizon");
  double total = 0;
  State prev = inst.x0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    total += inst.d(prev, xs[t]) + inst.costs[t][xs[t]];
    prev = xs[t];
  }
  return total;
}

namespace detail {

inline double parse_cost(const std::string& tok) {
  if (tok == "inf" || tok == "INF" || tok == "Inf" || tok == "infinity") return kInf;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw Error("bad number '" + tok + "'");
  return v;
}

inline std::size_t parse_count(const std::string& tok, const char* what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(std::string("bad ") + what + " '" + tok + "'");
  }
  return v;
}

inline void write_number(std::ostream& os, double v) {
  if (std::isinf(v)) {
    os << "inf";
    return;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, res.ptr - buf);
}

}  // namespace detail

/// Reads "n T a x0", an n x n distance matrix and T cost rows; whitespace
/// separated, '#' starts a comment, "inf" is allowed in cost rows.
inline MtsInstance read_mts(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw Error("mts instance ended early");
    return tokens[pos++];
  };
  MtsInstance inst;
  const std::size_t n = detail::parse_count(next(), "state count");
  const std::size_t T = detail::parse_count(next(), "horizon");
  inst.a = detail::parse_count(next(), "period");
  inst.x0 = detail::parse_count(next(), "start state");
  std::vector<Vector> d(n, Vector(n));
  for (auto& row : d)
    for (double& v : row) v = detail::parse_cost(next());
  inst.d = Metric(std::move(d));
  inst.costs.assign(T, Vector(n));
  for (auto& row : inst.costs)
    for (double& v : row) v = detail::parse_cost(next());
  if (pos != tokens.size()) throw Error("trailing data after mts instance");
  inst.validate();
  inst.pad_to_period();
  return inst;
}

inline MtsInstance parse_mts(const std::string& text) {
  std::istringstream in(text);
  return read_mts(in);
}

inline void write_mts(std::ostream& os, const MtsInstance& inst) {
  os << inst.n() << ' ' << inst.horizon() << ' ' << inst.a << ' ' << inst.x0 << '\n';
  auto row = [&](const Vector& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ' ';
      detail::write_number(os, r[i]);
    }
    os << '\n';
  };
  for (const auto& r : inst.d.matrix()) row(r);
  for (const auto& r : inst.costs) row(r);
}

}  // namespace parsim::mts

#endif  // PARSIM_MTS_INSTANCE_HPP
