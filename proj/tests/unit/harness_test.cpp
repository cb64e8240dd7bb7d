#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "parsim/harness/benchmark.hpp"
#include "parsim/harness/generate.hpp"
#include "parsim/harness/ingest.hpp"
#include "parsim/harness/results_csv.hpp"

using namespace parsim;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = PARSIM_FIXTURES;

/// Scratch directory removed at scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("parsim_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.dataset = "fixtures";
  cfg.instances = {read_trace(kFixtures / "zipf.txt"), read_trace(kFixtures / "shifting.txt")};
  cfg.k = 4;
  cfg.algorithms = {"lru", "marker", "ftp", "fnr", "fnr_a2"};
  cfg.predictor = "synthetic:2";
  cfg.trials = 3;
  cfg.seed = 17;
  return cfg;
}

std::string csv_bytes(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_results_csv(os, rows);
  return os.str();
}

}  // namespace

TEST(Brightkite, SampleUsersAndSkippedRows) {
  IngestReport rep;
  auto traces = ingest_brightkite(kFixtures / "brightkite_sample.tsv", {2, 1, 100}, &rep);
  ASSERT_EQ(traces.size(), 3u);
  EXPECT_EQ(traces[0].id, "user0");
  EXPECT_EQ(traces[1].id, "user2");
  EXPECT_EQ(traces[2].id, "user1");
  EXPECT_EQ(traces[0].seq.length(), 60u);
  EXPECT_EQ(traces[2].seq.universe_size, 3u);
  EXPECT_EQ(rep.skipped, 2u);
  EXPECT_EQ(rep.rows, 162u);
}

TEST(Brightkite, ChronologicalOrder) {
  TempDir dir;
  auto path = dir.write("bk.tsv",
                        "7\t2009-01-03T00:00:00Z\t0\t0\tc\n"
                        "7\t2009-01-01T00:00:00Z\t0\t0\ta\n"
                        "7\t2009-01-02T00:00:00Z\t0\t0\tb\n");
  auto traces = ingest_brightkite(path, {1, 1, 10});
  ASSERT_EQ(traces.size(), 1u);
  // a, b, c in time order, mapped first-seen.
  EXPECT_EQ(traces[0].seq.requests, (std::vector<PageId>{0, 1, 2}));
  EXPECT_EQ(traces[0].seq.universe_size, 3u);
}

TEST(Brightkite, OptimumFilterAtFifty) {
  TempDir dir;
  std::string text;
  for (int i = 0; i < 49; ++i) text += "1\t2009-01-01T00:00:" + std::to_string(10 + i) + "Z\t0\t0\tx" + std::to_string(i) + "\n";
  for (int i = 0; i < 50; ++i) text += "2\t2009-01-01T00:00:" + std::to_string(10 + i) + "Z\t0\t0\ty" + std::to_string(i) + "\n";
  auto traces = ingest_brightkite(dir.write("bk.tsv", text));
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].id, "user2");
}

TEST(Brightkite, MaxUsersAndEmptyResult) {
  EXPECT_EQ(ingest_brightkite(kFixtures / "brightkite_sample.tsv", {2, 1, 2}).size(), 2u);
  EXPECT_THROW(ingest_brightkite(kFixtures / "brightkite_sample.tsv"), DataError);
  EXPECT_THROW(ingest_brightkite(kFixtures / "does_not_exist.tsv"), Error);
}

TEST(Citibike, SampleMonth) {
  auto tr = ingest_citibike_month(kFixtures / "citibike_sample.csv");
  EXPECT_EQ(tr.id, "citibike_sample");
  EXPECT_EQ(tr.seq.length(), 50u);
  EXPECT_EQ(tr.seq.universe_size, 8u);
  EXPECT_EQ(tr.seq[0], 0u);
}

TEST(Citibike, TruncatesWithoutPadding) {
  EXPECT_EQ(ingest_citibike_month(kFixtures / "citibike_sample.csv", {20}).seq.length(), 20u);
  EXPECT_EQ(ingest_citibike_month(kFixtures / "citibike_sample.csv", {500}).seq.length(), 50u);
}

TEST(Citibike, MissingColumnNamesFile) {
  try {
    ingest_citibike_month(kFixtures / "citibike_bad.csv");
    FAIL() << "expected an error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("citibike_bad.csv"), std::string::npos);
  }
}

TEST(Citibike, DirectoryExpansionIsSorted) {
  TempDir dir;
  const std::string head = "start_station_id,x\n";
  dir.write("2017-02.csv", head + "5,1\n6,1\n");
  dir.write("2017-01.csv", head + "5,1\n");
  dir.write("notes.txt", "ignored");
  auto traces = ingest_citibike({dir.path});
  ASSERT_EQ(traces.size(), 2u);
  EXPECT_EQ(traces[0].id, "2017-01");
  EXPECT_EQ(traces[1].seq.length(), 2u);
}

TEST(Trace, WriteThenReadRoundTrips) {
  TempDir dir;
  Rng rng(3);
  auto seq = uniform_trace(30, 95, rng);
  {
    std::ofstream out(dir.path / "t.txt");
    write_trace(out, seq);
  }
  auto back = read_trace(dir.path / "t.txt");
  EXPECT_EQ(back.id, "t");
  EXPECT_EQ(back.seq.length(), seq.length());
  // Tokens are remapped first-seen; the fault structure is identical.
  EXPECT_EQ(belady_schedule(back.seq, 5).opt_cost, belady_schedule(seq, 5).opt_cost);
}

TEST(ResultsCsv, EmptyIsHeaderOnly) {
  EXPECT_EQ(csv_bytes({}), std::string(kResultsHeader) + "\n");
  std::istringstream in(csv_bytes({}));
  EXPECT_TRUE(read_results_csv(in).empty());
}

TEST(ResultsCsv, ThousandRowsRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1000);
  std::vector<ResultRow> rows;
  for (int i = 0; i < 1000; ++i) {
    ResultRow r;
    r.dataset = i % 2 ? "citibike" : "bright,kite \"q\"";
    r.instance_id = "inst" + std::to_string(i);
    r.algorithm = "F&R_a" + std::to_string(i % 7);
    r.predictor = "synthetic:1.5";
    r.sigma = u(rng);
    r.a = i % 5;
    r.f = "F:1,6,9";
    r.b = i % 3;
    r.trial = i % 10 - 1;
    r.alg_cost = std::floor(u(rng));
    r.opt_cost = 1 + std::floor(u(rng));
    r.ratio = r.alg_cost / r.opt_cost;
    r.num_queries = u(rng);
    r.num_reported_pages = 1e-9 * u(rng);
    r.eta = 1e12 * u(rng);
    rows.push_back(r);
  }
  std::istringstream in(csv_bytes(rows));
  EXPECT_EQ(read_results_csv(in), rows);
}

TEST(ResultsCsv, RatioHasAtLeastSixSignificantDigits) {
  ResultRow r;
  r.ratio = 1.0 / 3.0;
  const std::string text = csv_bytes({r});
  EXPECT_NE(text.find("0.333333"), std::string::npos);
}

TEST(ResultsCsv, FileErrorsNamePath) {
  try {
    read_results_csv(fs::path("/nonexistent/results.csv"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/results.csv"), std::string::npos);
  }
  std::istringstream bad("nope\n");
  EXPECT_THROW(read_results_csv(bad), Error);
}

TEST(Benchmark, IdenticalConfigGivesIdenticalBytes) {
  auto cfg = small_config();
  const std::string one = csv_bytes(run_benchmark(cfg, nullptr).rows);
  cfg.threads = 3;
  EXPECT_EQ(csv_bytes(run_benchmark(cfg, nullptr).rows), one);
}

TEST(Benchmark, RowsAndAggregates) {
  auto cfg = small_config();
  auto rep = run_benchmark(cfg, nullptr);
  EXPECT_EQ(rep.failed, 0u);
  ASSERT_EQ(rep.rows.size(), 5u * 2 * 3 + 5 * 2);
  for (const auto& r : rep.rows) {
    if (r.trial < 0) continue;
    EXPECT_GT(r.opt_cost, 0);
    EXPECT_EQ(r.ratio, r.alg_cost / r.opt_cost);
    EXPECT_GE(r.ratio, 1.0);
  }
  for (const auto& r : rep.rows) {
    if (r.instance_id != "ALL:stddev") continue;
    if (r.algorithm == "lru") {
      EXPECT_EQ(r.ratio, 0.0) << r.algorithm;
    }
  }
}

TEST(Benchmark, DeterministicAlgorithmsHaveZeroSpreadOverTenTrials) {
  auto cfg = small_config();
  cfg.algorithms = {"lru", "ftp"};
  cfg.predictor = "popu";
  cfg.trials = 10;
  auto rep = run_benchmark(cfg, nullptr);
  int seen = 0;
  for (const auto& r : rep.rows)
    if (r.instance_id == "ALL:stddev") {
      EXPECT_EQ(r.ratio, 0.0);
      ++seen;
    }
  EXPECT_EQ(seen, 2);
}

TEST(Benchmark, PerfectPredictorRatioIsOne) {
  auto cfg = small_config();
  cfg.algorithms = {"fnr", "fitf"};
  cfg.predictor = "belady";
  for (const auto& r : run_benchmark(cfg, nullptr).rows) EXPECT_EQ(r.trial < 0 && r.instance_id == "ALL:stddev" ? 1.0 : r.ratio, 1.0);
}

TEST(Benchmark, FailingRowIsDroppedNotFatal) {
  auto cfg = small_config();
  std::vector<AlgorithmSetup> algs{make_algorithm("lru", cfg)};
  AlgorithmSetup broken;
  broken.label = "broken";
  broken.make = []() -> PolicyPtr { throw Error("cannot build"); };
  algs.push_back(broken);
  std::ostringstream log;
  auto rep = run_benchmark(cfg, algs, &log);
  EXPECT_EQ(rep.failed, 2u * 3);
  EXPECT_NE(log.str().find("cannot build"), std::string::npos);
  ASSERT_FALSE(rep.rows.empty());
  for (const auto& r : rep.rows) EXPECT_EQ(r.algorithm, "lru");
}

TEST(Benchmark, TotalCostRatioAggregation) {
  std::vector<ResultRow> rows(2);
  rows[0].algorithm = rows[1].algorithm = "X";
  rows[0].alg_cost = 3, rows[0].opt_cost = 1, rows[0].ratio = 3;
  rows[1].alg_cost = 1, rows[1].opt_cost = 1, rows[1].ratio = 1;
  EXPECT_EQ(aggregate_rows(rows, false)[0].ratio, 2.0);
  EXPECT_EQ(aggregate_rows(rows, true)[0].ratio, 2.0);
  rows[1].opt_cost = 3, rows[1].alg_cost = 3;
  EXPECT_EQ(aggregate_rows(rows, true)[0].ratio, 1.5);
}

TEST(Benchmark, ConfigErrors) {
  EXPECT_THROW(PredictorSpec::parse("synthetic:-1"), ConfigError);
  EXPECT_THROW(PredictorSpec::parse("synthetic"), ConfigError);
  EXPECT_THROW(PredictorSpec::parse("oracle"), ConfigError);
  EXPECT_THROW(PredictorSpec::parse("fitf:2"), ConfigError);
  EXPECT_THROW(FSpec::parse("cubic"), ConfigError);
  auto cfg = small_config();
  cfg.trials = 0;
  EXPECT_THROW(run_benchmark(cfg, nullptr), ConfigError);
  cfg = small_config();
  cfg.alpha = 0.5;
  EXPECT_THROW(run_benchmark(cfg, nullptr), ConfigError);
  cfg = small_config();
  cfg.f = "f:0,2,3";
  EXPECT_THROW(run_benchmark(cfg, nullptr), ConfigError);
  cfg = small_config();
  cfg.algorithms = {"fitf"};
  cfg.predictor = "adversarial";
  cfg.b = 3;  // above log 4
  EXPECT_THROW(run_benchmark(cfg, nullptr), ConfigError);
  cfg = small_config();
  cfg.algorithms = {"opt2"};
  EXPECT_THROW(run_benchmark(cfg, nullptr), ConfigError);
  cfg = small_config();
  cfg.algorithms = {"fnr"};
  cfg.predictor = "fitf:0.1";
  EXPECT_THROW(run_benchmark(cfg, nullptr), ConfigError);
}

TEST(Benchmark, TrialSeedsDiffer) {
  EXPECT_NE(trial_seed(1, "a", "F&R", 0), trial_seed(1, "a", "F&R", 1));
  EXPECT_NE(trial_seed(1, "a", "F&R", 0), trial_seed(1, "b", "F&R", 0));
  EXPECT_EQ(trial_seed(1, "a", "F&R", 0), trial_seed(1, "a", "F&R", 0));
}

TEST(Generate, MtsInstancesAreValid) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    RandomMtsOptions opt;
    opt.a = 1 + i % 3;
    auto inst = random_mts(opt, rng);
    EXPECT_NO_THROW(inst.validate());
    EXPECT_EQ(inst.horizon() % inst.a, 0u);
  }
}
