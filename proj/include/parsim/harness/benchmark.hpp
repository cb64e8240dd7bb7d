#ifndef PARSIM_HARNESS_BENCHMARK_HPP
#define PARSIM_HARNESS_BENCHMARK_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "parsim/baselines/baselines.hpp"
#include "parsim/core/simulate.hpp"
#include "parsim/fitf/fitf.hpp"
#include "parsim/fnr/fnr.hpp"
#include "parsim/harness/results_csv.hpp"
#include "parsim/predictors/action_predictors.hpp"
#include "parsim/predictors/fitf_oracle.hpp"

namespace parsim {

/// Bad parameters or incompatible algorithm/predictor combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// belady | synthetic:<sigma> | popu | adversarial | fitf:<p>
struct PredictorSpec {
  enum class Kind { belady, synthetic, popu, adversarial, fitf };
  Kind kind = Kind::belady;
  double param = 0;  ///< sigma or p
  NoiseModel noise = NoiseModel::multiplicative;

  static PredictorSpec parse(const std::string& s) {
    PredictorSpec spec;
    const auto colon = s.find(':');
    const std::string head = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    auto number = [&](const char* what) {
      if (arg.empty()) throw ConfigError(std::string("predictor '") + s + "' needs " + what);
      try {
        return detail::parse_double(arg);
      } catch (const Error&) {
        throw ConfigError("bad " + std::string(what) + " in predictor '" + s + "'");
      }
    };
    if (head == "belady") {
      spec.kind = Kind::belady;
    } else if (head == "synthetic") {
      spec.kind = Kind::synthetic;
      spec.param = number("sigma");
      if (!(spec.param >= 0)) throw ConfigError("sigma must be >= 0");
    } else if (head == "popu") {
      spec.kind = Kind::popu;
    } else if (head == "adversarial") {
      spec.kind = Kind::adversarial;
    } else if (head == "fitf") {
      spec.kind = Kind::fitf;
      spec.param = number("p");
      if (!(spec.param >= 0 && spec.param <= 1)) throw ConfigError("fitf p must lie in [0, 1]");
    } else {
      throw ConfigError("unknown predictor '" + s + "'");
    }
    if (colon != std::string::npos && (spec.kind == Kind::belady || spec.kind == Kind::popu ||
                                       spec.kind == Kind::adversarial)) {
      throw ConfigError("predictor '" + head + "' takes no parameter");
    }
    return spec;
  }

  std::string name() const {
    switch (kind) {
      case Kind::belady: return "belady";
      case Kind::synthetic: return "synthetic";
      case Kind::popu: return "popu";
      case Kind::adversarial: return "adversarial";
      case Kind::fitf: return "fitf";
    }
    return "?";
  }

  NextArrivalPredictorPtr next_arrival() const {
    switch (kind) {
      case Kind::belady: return synthetic_next_arrival(0.0, noise);
      case Kind::synthetic: return synthetic_next_arrival(param, noise);
      case Kind::popu: return popu_predictor();
      default: throw ConfigError("predictor '" + name() + "' gives no next-arrival predictions");
    }
  }

  ActionPredictorPtr action() const {
    switch (kind) {
      case Kind::belady: return belady_predictor();
      case Kind::synthetic:
      case Kind::popu: return next_arrival_to_action(next_arrival());
      case Kind::adversarial: return adversarial_predictor();
      default: throw ConfigError("predictor '" + name() + "' gives no action predictions");
    }
  }

  FitfOraclePtr oracle() const {
    switch (kind) {
      case Kind::belady: return fitf_probabilistic(0.0);
      case Kind::fitf: return fitf_probabilistic(param);
      case Kind::adversarial: return fitf_adversarial();
      default: throw ConfigError("predictor '" + name() + "' gives no FitF answers");
    }
  }
};

/// exp | quad | lin | zero | F:<arrivals> | f:<values>
struct FSpec {
  std::optional<GrowthFunction> f;
  std::vector<std::size_t> arrivals;

  static FSpec parse(const std::string& s) {
    FSpec out;
    auto list = [&](const std::string& body) {
      std::vector<long long> v;
      std::stringstream ss(body);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          v.push_back(detail::parse_int(tok));
        } catch (const Error&) {
          throw ConfigError("bad f spec '" + s + "'");
        }
      }
      if (v.empty()) throw ConfigError("empty f spec '" + s + "'");
      return v;
    };
    if (s == "exp") out.f = GrowthFunction::exponential();
    else if (s == "quad") out.f = GrowthFunction::quadratic();
    else if (s == "lin") out.f = GrowthFunction::linear();
    else if (s == "zero") out.f = GrowthFunction::zero();
    else if (s.rfind("F:", 0) == 0) {
      for (long long a : list(s.substr(2))) {
        if (a < 1) throw ConfigError("query arrivals must be >= 1");
        out.arrivals.push_back(static_cast<std::size_t>(a));
      }
    } else if (s.rfind("f:", 0) == 0) {
      out.f = GrowthFunction::table(list(s.substr(2)));
    } else {
      throw ConfigError("unknown f spec '" + s + "'");
    }
    return out;
  }
};

struct ExperimentConfig {
  std::string dataset = "custom";
  std::vector<NamedTrace> instances;
  std::size_t k = 10;
  std::vector<std::string> algorithms{"fnr"};
  std::string predictor = "belady";
  NoiseModel noise = NoiseModel::multiplicative;
  std::string f = "lin";
  double alpha = 1.0;
  std::size_t a = 0;  ///< 0: unbounded queries; otherwise a-separated
  std::size_t b = 1;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool total_cost_ratio = false;  ///< aggregate Σalg/Σopt instead of the mean of ratios

  void validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (k < 1) throw ConfigError("k must be >= 1");
    if (!(alpha >= 1)) throw ConfigError("alpha must be >= 1");
    if (algorithms.empty()) throw ConfigError("no algorithms given");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    PredictorSpec::parse(predictor);
    FSpec::parse(f);
  }
};

/// A runnable algorithm with the labels it reports.
struct AlgorithmSetup {
  std::string label;
  std::function<PolicyPtr()> make;
  std::string f_label;
  std::size_t a = 0;
  std::size_t b = 0;
};

/// Names: lru, marker, ftp, ftpm, fnr, fnr_a<N> (a-separated with a = N), fitf.
inline AlgorithmSetup make_algorithm(const std::string& name, const ExperimentConfig& cfg) {
  PredictorSpec pred = PredictorSpec::parse(cfg.predictor);
  pred.noise = cfg.noise;
  AlgorithmSetup s;
  s.label = name;
  if (name == "lru") {
    s.make = [] { return lru_policy(); };
  } else if (name == "marker") {
    s.make = [] { return marker_policy(); };
  } else if (name == "ftp") {
    pred.action();
    s.make = [pred] { return ftp_policy(pred.action()); };
  } else if (name == "ftpm") {
    pred.next_arrival();
    s.make = [pred] { return ftpm_policy(pred.next_arrival()); };
  } else if (name == "fnr" || name.rfind("fnr_a", 0) == 0) {
    pred.action();
    FnrConfig fc;
    const FSpec fs = FSpec::parse(cfg.f);
    fc.f = fs.f;
    fc.query_arrivals = fs.arrivals;
    fc.alpha = cfg.alpha;
    std::size_t a = cfg.a;
    if (name != "fnr") {
      try {
        a = static_cast<std::size_t>(detail::parse_int(name.substr(5)));
      } catch (const Error&) {
        throw ConfigError("bad algorithm '" + name + "'");
      }
      if (a == 0) throw ConfigError("fnr_a<N> needs N >= 1");
    }
    if (a) fc.mode = QueryMode::a_separated(a);
    try {
      s.f_label = fc.plan_for(cfg.k).label();
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    s.a = a;
    s.make = [pred, fc] { return fnr_policy(pred.action(), fc); };
  } else if (name == "fitf") {
    pred.oracle();
    const double logk = std::max(1.0, std::ceil(std::log2(static_cast<double>(cfg.k))));
    if (cfg.b < 1 || static_cast<double>(cfg.b) > logk) throw ConfigError("b must lie in 1..ceil(log2 k)");
    s.b = cfg.b;
    const std::size_t b = cfg.b;
    s.make = [pred, b] { return fitf_policy(pred.oracle(), b); };
  } else {
    throw ConfigError("unknown algorithm '" + name + "'");
  }
  return s;
}

inline std::uint64_t trial_seed(std::uint64_t base, const std::string& instance, const std::string& algorithm,
                                std::size_t trial) {
  std::uint64_t h = hash_combine(base, hash_string(instance));
  h = hash_combine(h, hash_string(algorithm));
  return hash_combine(h, trial);
}

struct BenchmarkReport {
  std::vector<ResultRow> rows;
  std::size_t failed = 0;
};

namespace detail {

inline double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0 : s / static_cast<double>(v.size());
}

inline double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  // Shifted by v[0] so identical values give exactly 0.
  double s = 0, s2 = 0;
  for (double x : v) {
    s += x - v[0];
    s2 += (x - v[0]) * (x - v[0]);
  }
  const double n = static_cast<double>(v.size());
  return std::sqrt(std::max(0.0, (s2 - s * s / n) / (n - 1)));
}

}  // namespace detail

/// Per-algorithm "ALL:mean" and "ALL:stddev" rows over trials. The ratio of
/// a trial is the mean of per-instance ratios (or Σalg/Σopt); cost and
/// query columns hold per-trial totals.
inline std::vector<ResultRow> aggregate_rows(const std::vector<ResultRow>& rows, bool total_cost_ratio) {
  std::vector<ResultRow> out;
  std::vector<std::string> algs;
  for (const auto& r : rows) {
    if (r.trial >= 0 && std::find(algs.begin(), algs.end(), r.algorithm) == algs.end()) {
      algs.push_back(r.algorithm);
    }
  }
  for (const auto& alg : algs) {
    std::int64_t max_trial = -1;
    const ResultRow* proto = nullptr;
    for (const auto& r : rows) {
      if (r.algorithm != alg || r.trial < 0) continue;
      max_trial = std::max(max_trial, r.trial);
      if (!proto) proto = &r;
    }
    const auto n = static_cast<std::size_t>(max_trial + 1);
    std::vector<double> ratio(n), alg_cost(n), opt_cost(n), queries(n), reported(n), eta(n), count(n);
    for (const auto& r : rows) {
      if (r.algorithm != alg || r.trial < 0) continue;
      const auto t = static_cast<std::size_t>(r.trial);
      ratio[t] += r.ratio;
      alg_cost[t] += r.alg_cost;
      opt_cost[t] += r.opt_cost;
      queries[t] += r.num_queries;
      reported[t] += r.num_reported_pages;
      eta[t] += r.eta;
      count[t] += 1;
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (total_cost_ratio) ratio[t] = opt_cost[t] > 0 ? alg_cost[t] / opt_cost[t] : 0;
      else ratio[t] = count[t] > 0 ? ratio[t] / count[t] : 0;
    }
    ResultRow m = *proto;
    m.instance_id = "ALL:mean";
    m.trial = -1;
    m.ratio = detail::mean(ratio);
    m.alg_cost = detail::mean(alg_cost);
    m.opt_cost = detail::mean(opt_cost);
    m.num_queries = detail::mean(queries);
    m.num_reported_pages = detail::mean(reported);
    m.eta = detail::mean(eta);
    ResultRow s = m;
    s.instance_id = "ALL:stddev";
    s.ratio = detail::sample_stddev(ratio);
    s.alg_cost = detail::sample_stddev(alg_cost);
    s.opt_cost = detail::sample_stddev(opt_cost);
    s.num_queries = detail::sample_stddev(queries);
    s.num_reported_pages = detail::sample_stddev(reported);
    s.eta = detail::sample_stddev(eta);
    out.push_back(std::move(m));
    out.push_back(std::move(s));
  }
  return out;
}

/// Runs every (instance, algorithm, trial) with its own seeded RNG. Rows come
/// out in (algorithm, instance, trial) order regardless of `threads`,
/// followed by the aggregate rows. A failing simulation drops its row and is
/// logged to `log`.
inline BenchmarkReport run_benchmark(const ExperimentConfig& cfg, const std::vector<AlgorithmSetup>& algs,
                                     std::ostream* log = &std::cerr) {
  cfg.validate();
  if (cfg.instances.empty()) throw DataError("no instances to run");
  const PredictorSpec pred = PredictorSpec::parse(cfg.predictor);

  std::vector<Instance> instances;
  instances.reserve(cfg.instances.size());
  for (const auto& tr : cfg.instances) {
    try {
      instances.emplace_back(tr.seq, cfg.k);
    } catch (const Error& e) {
      throw DataError(tr.id + ": " + e.what());
    }
  }

  struct Job {
    std::size_t alg, inst, trial;
  };
  std::vector<Job> jobs;
  for (std::size_t a = 0; a < algs.size(); ++a)
    for (std::size_t i = 0; i < instances.size(); ++i)
      for (std::size_t t = 0; t < cfg.trials; ++t) jobs.push_back({a, i, t});

  std::vector<std::optional<ResultRow>> slots(jobs.size());
  std::mutex log_mutex;
  std::atomic<std::size_t> next{0}, failed{0};

  auto work = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[j];
      const AlgorithmSetup& alg = algs[job.alg];
      const NamedTrace& tr = cfg.instances[job.inst];
      const Instance& inst = instances[job.inst];
      try {
        PolicyPtr policy = alg.make();
        const auto res = simulate(*policy, inst, trial_seed(cfg.seed, tr.id, alg.label, job.trial));
        const PolicyStats st = res.stats;
        ResultRow r;
        r.dataset = cfg.dataset;
        r.instance_id = tr.id;
        r.algorithm = alg.label;
        r.predictor = pred.name();
        r.sigma = pred.param;
        r.a = static_cast<std::int64_t>(alg.a);
        r.f = alg.f_label;
        r.b = static_cast<std::int64_t>(alg.b);
        r.trial = static_cast<std::int64_t>(job.trial);
        r.alg_cost = static_cast<double>(res.ledger.alg_cost);
        r.opt_cost = static_cast<double>(inst.opt.opt_cost);
        r.ratio = inst.opt.opt_cost > 0 ? r.alg_cost / r.opt_cost : 0;
        r.num_queries = static_cast<double>(st.queries);
        r.num_reported_pages = static_cast<double>(st.reported_pages);
        r.eta = static_cast<double>(st.eta);
        slots[j] = std::move(r);
      } catch (const std::exception& e) {
        ++failed;
        if (log) {
          std::lock_guard lock(log_mutex);
          *log << "error: " << alg.label << " on " << tr.id << " trial " << job.trial << ": " << e.what()
               << '\n';
        }
      }
    }
  };

  if (cfg.threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < cfg.threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  BenchmarkReport report;
  report.failed = failed;
  for (auto& s : slots) {
    if (s) report.rows.push_back(std::move(*s));
  }
  auto agg = aggregate_rows(report.rows, cfg.total_cost_ratio);
  report.rows.insert(report.rows.end(), agg.begin(), agg.end());
  return report;
}

inline BenchmarkReport run_benchmark(const ExperimentConfig& cfg, std::ostream* log = &std::cerr) {
  cfg.validate();
  std::vector<AlgorithmSetup> algs;
  for (const auto& name : cfg.algorithms) algs.push_back(make_algorithm(name, cfg));
  return run_benchmark(cfg, algs, log);
}

}  // namespace parsim

#endif  // PARSIM_HARNESS_BENCHMARK_HPP
