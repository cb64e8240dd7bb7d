// Command line front end: bench, mts, gen, opt.
//
// Exit codes: 0 success, 1 configuration error, 2 data error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parsim/harness/benchmark.hpp"
#include "parsim/harness/generate.hpp"
#include "parsim/harness/ingest.hpp"
#include "parsim/mts/ftsp.hpp"

namespace {

using namespace parsim;

enum Exit { kOk = 0, kConfig = 1, kData = 2 };

struct BenchArgs {
  std::string dataset = "trace";
  std::vector<std::string> inputs;
  std::size_t k = 10;
  std::vector<std::string> algorithms{"fnr"};
  std::string predictor = "belady";
  std::string noise = "multiplicative";
  std::string f = "lin";
  double alpha = 1.0;
  std::size_t a = 0;
  std::size_t b = 1;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool total_cost = false;
  std::string output = "-";
  std::size_t max_length = 25000;
  std::size_t max_users = 100;
  Cost min_opt = 50;
};

std::vector<NamedTrace> load_dataset(const BenchArgs& args) {
  if (args.inputs.empty()) throw ConfigError("no --input given");
  if (args.dataset == "brightkite") {
    if (args.inputs.size() != 1) throw ConfigError("brightkite takes one input file");
    return ingest_brightkite(args.inputs[0], {args.k, args.min_opt, args.max_users});
  }
  std::vector<std::filesystem::path> paths(args.inputs.begin(), args.inputs.end());
  if (args.dataset == "citibike") return ingest_citibike(paths, {args.max_length});
  if (args.dataset == "trace") {
    std::vector<NamedTrace> out;
    for (const auto& p : paths) out.push_back(read_trace(p));
    return out;
  }
  throw ConfigError("unknown dataset kind '" + args.dataset + "'");
}

int run_bench(const BenchArgs& args) {
  ExperimentConfig cfg;
  cfg.dataset = args.dataset;
  cfg.k = args.k;
  cfg.algorithms = args.algorithms;
  cfg.predictor = args.predictor;
  cfg.noise = args.noise == "additive" ? NoiseModel::additive : NoiseModel::multiplicative;
  cfg.f = args.f;
  cfg.alpha = args.alpha;
  cfg.a = args.a;
  cfg.b = args.b;
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  cfg.total_cost_ratio = args.total_cost;
  cfg.validate();
  for (const auto& alg : cfg.algorithms) make_algorithm(alg, cfg);
  cfg.instances = load_dataset(args);

  const BenchmarkReport report = run_benchmark(cfg);
  if (args.output == "-") {
    write_results_csv(std::cout, report.rows);
  } else {
    write_results_csv(report.rows, args.output);
  }
  for (const auto& r : report.rows) {
    if (r.instance_id == "ALL:mean") {
      std::cerr << r.algorithm << ": mean ratio " << r.ratio << ", queries " << r.num_queries << '\n';
    }
  }
  if (report.failed) std::cerr << report.failed << " simulation(s) failed\n";
  return report.failed ? kData : kOk;
}

struct MtsArgs {
  std::string instance;
  std::string predictions = "opt";
  std::uint64_t seed = 1;
};

int run_mts(const MtsArgs& args) {
  std::ifstream in(args.instance);
  if (!in) throw DataError("cannot open " + args.instance);
  const mts::MtsInstance inst = mts::read_mts(in);
  const mts::OfflineSolution off = mts::brute_force_offline(inst);
  std::vector<mts::State> preds;
  if (args.predictions == "opt") {
    for (std::size_t i = 1; i <= inst.periods(); ++i) preds.push_back(off.xs[i * inst.a - 1]);
  } else if (args.predictions == "random") {
    Rng rng(args.seed);
    for (std::size_t i = 0; i < inst.periods(); ++i) preds.push_back(uniform_index(rng, inst.n()));
  } else {
    std::stringstream ss(args.predictions);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        preds.push_back(static_cast<mts::State>(detail::parse_int(tok)));
      } catch (const Error&) {
        throw ConfigError("bad prediction list '" + args.predictions + "'");
      }
    }
  }
  const mts::FtspResult res = mts::ftsp_run(inst, preds);
  std::cout << "states " << inst.n() << "\nhorizon " << inst.horizon() << "\nperiod " << inst.a
            << "\nopt " << off.cost << "\nftsp_cost " << res.cost << "\nq_cost " << res.q_cost << "\neta "
            << res.track.eta << "\ntrajectory";
  for (auto x : res.xs) std::cout << ' ' << x;
  std::cout << "\nsupport";
  for (auto q : res.track.q) std::cout << ' ' << q;
  std::cout << '\n';
  return kOk;
}

struct GenArgs {
  std::string kind = "uniform";
  std::size_t pages = 8;
  std::size_t length = 200;
  double zipf_s = 1.0;
  std::size_t states = 4;
  std::size_t period = 1;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int run_gen(const GenArgs& args) {
  Rng rng(args.seed);
  std::ostringstream os;
  if (args.kind == "mts") {
    RandomMtsOptions opt;
    opt.n = args.states;
    opt.horizon = args.length;
    opt.a = args.period;
    if (opt.n == 0 || opt.a == 0) throw ConfigError("states and period must be >= 1");
    mts::write_mts(os, random_mts(opt, rng));
  } else {
    if (args.pages == 0) throw ConfigError("pages must be >= 1");
    RequestSequence seq;
    if (args.kind == "uniform") seq = uniform_trace(args.pages, args.length, rng);
    else if (args.kind == "cycle") seq = cycle_trace(args.pages, args.length);
    else if (args.kind == "zipf") seq = zipf_trace(args.pages, args.length, args.zipf_s, rng);
    else throw ConfigError("unknown generator '" + args.kind + "'");
    write_trace(os, seq);
  }
  if (args.output == "-") {
    std::cout << os.str();
  } else {
    std::ofstream out(args.output);
    if (!out) throw DataError("cannot write " + args.output);
    out << os.str();
  }
  return kOk;
}

int run_opt(const std::vector<std::string>& traces, std::size_t k) {
  if (k == 0) throw ConfigError("k must be >= 1");
  for (const auto& p : traces) {
    const NamedTrace tr = read_trace(p);
    std::cout << tr.id << ' ' << tr.seq.length() << ' ' << tr.seq.distinct_pages() << ' '
              << belady_schedule(tr.seq, k).opt_cost << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Caching and MTS algorithms with action predictions"};
  app.require_subcommand(1);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run caching experiments and write the results CSV");
  b->add_option("--dataset", bench.dataset, "Input kind: brightkite, citibike or trace")
      ->check(CLI::IsMember({"brightkite", "citibike", "trace"}));
  b->add_option("-i,--input", bench.inputs, "Input files (citibike also accepts directories)")->required();
  b->add_option("-k", bench.k, "Cache size (>= 1)")->check(CLI::PositiveNumber);
  b->add_option("--algorithms", bench.algorithms, "lru, marker, ftp, ftpm, fnr, fnr_a<N>, fitf")
      ->delimiter(',');
  b->add_option("--predictor", bench.predictor,
                "belady | synthetic:<sigma >= 0> | popu | adversarial | fitf:<p in [0,1]>");
  b->add_option("--noise", bench.noise, "Synthetic noise model")
      ->check(CLI::IsMember({"multiplicative", "additive"}));
  b->add_option("--f", bench.f, "F&R growth function: exp | quad | lin | zero | F:<arrivals> | f:<values>");
  b->add_option("--alpha", bench.alpha, "F&R switch threshold (>= 1)");
  b->add_option("-a", bench.a, "Query separation for fnr (0: unbounded)");
  b->add_option("-b", bench.b, "FitF prediction budget (1..ceil(log2 k))");
  b->add_option("--trials", bench.trials, "Independent trials (>= 1)")->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed, "Base seed");
  b->add_option("--threads", bench.threads, "Worker threads (>= 1)")->check(CLI::PositiveNumber);
  b->add_flag("--total-cost-ratio", bench.total_cost, "Aggregate as total cost over total OPT");
  b->add_option("-o,--output", bench.output, "Results CSV path ('-' for stdout)");
  b->add_option("--max-length", bench.max_length, "CitiBike truncation length");
  b->add_option("--max-users", bench.max_users, "BrightKite users kept");
  b->add_option("--min-opt", bench.min_opt, "BrightKite minimum OPT at cache size k");

  MtsArgs mts_args;
  auto* m = app.add_subcommand("mts", "Run FtSP on an MTS instance file");
  m->add_option("instance", mts_args.instance, "Instance file")->required();
  m->add_option("--predictions", mts_args.predictions,
                "opt (offline optimum states), random, or a comma separated state list");
  m->add_option("--seed", mts_args.seed, "Seed for random predictions");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic trace or MTS instance");
  g->add_option("kind", gen.kind, "uniform, cycle, zipf or mts")
      ->check(CLI::IsMember({"uniform", "cycle", "zipf", "mts"}));
  g->add_option("--pages", gen.pages, "Distinct pages");
  g->add_option("--length", gen.length, "Trace length or MTS horizon");
  g->add_option("--zipf-s", gen.zipf_s, "Zipf exponent");
  g->add_option("--states", gen.states, "MTS states");
  g->add_option("--period", gen.period, "MTS prediction period a");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("-o,--output", gen.output, "Output path ('-' for stdout)");

  std::vector<std::string> opt_traces;
  std::size_t opt_k = 10;
  auto* o = app.add_subcommand("opt", "Print length, distinct pages and OPT for traces");
  o->add_option("traces", opt_traces, "Trace files")->required();
  o->add_option("-k", opt_k, "Cache size (>= 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*b) return run_bench(bench);
    if (*m) return run_mts(mts_args);
    if (*g) return run_gen(gen);
    if (*o) return run_opt(opt_traces, opt_k);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
