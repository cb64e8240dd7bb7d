#ifndef PARSIM_HARNESS_RESULTS_CSV_HPP
#define PARSIM_HARNESS_RESULTS_CSV_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "parsim/harness/ingest.hpp"

namespace parsim {

/// One line of the results CSV. Aggregate rows use trial = -1.
struct ResultRow {
  std::string dataset;
  std::string instance_id;
  std::string algorithm;
  std::string predictor;
  double sigma = 0;
  std::int64_t a = 0;
  std::string f;
  std::int64_t b = 0;
  std::int64_t trial = 0;
  double alg_cost = 0;
  double opt_cost = 0;
  double ratio = 0;
  double num_queries = 0;
  double num_reported_pages = 0;
  double eta = 0;

  bool operator==(const ResultRow&) const = default;
};

inline constexpr const char* kResultsHeader =
    "dataset,instance_id,algorithm,predictor,sigma,a,f,b,trial,alg_cost,opt_cost,ratio,num_queries,"
    "num_reported_pages,eta";

namespace detail {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DataError("bad number '" + s + "'");
  return v;
}

inline std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DataError("bad integer '" + s + "'");
  return v;
}

}  // namespace detail

inline void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  using detail::csv_field;
  using detail::format_double;
  os << kResultsHeader << '\n';
  for (const auto& r : rows) {
    os << csv_field(r.dataset) << ',' << csv_field(r.instance_id) << ',' << csv_field(r.algorithm) << ','
       << csv_field(r.predictor) << ',' << format_double(r.sigma) << ',' << r.a << ',' << csv_field(r.f)
       << ',' << r.b << ',' << r.trial << ',' << format_double(r.alg_cost) << ','
       << format_double(r.opt_cost) << ',' << format_double(r.ratio) << ','
       << format_double(r.num_queries) << ',' << format_double(r.num_reported_pages) << ','
       << format_double(r.eta) << '\n';
  }
}

inline void write_results_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_results_csv(out, rows);
  if (!out) throw Error("write failed: " + path.string());
}

inline std::vector<ResultRow> read_results_csv(std::istream& in, const std::string& where = "<stream>") {
  std::string line;
  if (!std::getline(in, line)) throw DataError(where + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) throw DataError(where + ": unexpected header");
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 15) throw DataError(where + ":" + std::to_string(lineno) + ": expected 15 fields");
    ResultRow r;
    r.dataset = f[0];
    r.instance_id = f[1];
    r.algorithm = f[2];
    r.predictor = f[3];
    r.sigma = detail::parse_double(f[4]);
    r.a = detail::parse_int(f[5]);
    r.f = f[6];
    r.b = detail::parse_int(f[7]);
    r.trial = detail::parse_int(f[8]);
    r.alg_cost = detail::parse_double(f[9]);
    r.opt_cost = detail::parse_double(f[10]);
    r.ratio = detail::parse_double(f[11]);
    r.num_queries = detail::parse_double(f[12]);
    r.num_reported_pages = detail::parse_double(f[13]);
    r.eta = detail::parse_double(f[14]);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_results_csv(in, path.string());
}

}  // namespace parsim

#endif  // PARSIM_HARNESS_RESULTS_CSV_HPP
