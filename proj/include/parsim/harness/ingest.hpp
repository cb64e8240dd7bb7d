#ifndef PARSIM_HARNESS_INGEST_HPP
#define PARSIM_HARNESS_INGEST_HPP

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "parsim/core/request_sequence.hpp"
#include "parsim/offline/belady.hpp"

namespace parsim {

/// Input data that cannot be used (missing file, missing column, nothing left).
class DataError : public Error {
 public:
  using Error::Error;
};

struct NamedTrace {
  std::string id;
  RequestSequence seq;
};

struct IngestReport {
  std::size_t rows = 0;
  std::size_t skipped = 0;
  std::size_t candidates = 0;  ///< sequences before filtering
};

namespace detail {

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

/// Splits one CSV record; double quotes group fields and "" escapes a quote.
inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

inline std::string normalize_header(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '_') c = ' ';
    if (!std::isspace(static_cast<unsigned char>(c)) || (!out.empty() && out.back() != ' ')) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  // strip a UTF-8 byte order mark
  if (out.rfind("\xef\xbb\xbf", 0) == 0) out.erase(0, 3);
  return out;
}

}  // namespace detail

struct BrightkiteOptions {
  std::size_t k = 10;
  Cost min_opt = 50;
  std::size_t max_users = 100;
};

/// Check-in TSV (user, time, latitude, longitude, location) to one trace
/// per user in chronological order. Keeps the longest users whose optimal
/// cost at cache size k is at least `min_opt`, at most `max_users` of them.
inline std::vector<NamedTrace> ingest_brightkite(const std::filesystem::path& path,
                                                 const BrightkiteOptions& opt = {},
                                                 IngestReport* report = nullptr) {
  auto in = detail::open_input(path);
  struct Checkin {
    std::string time;
    std::string location;
  };
  std::map<std::string, std::vector<Checkin>> users;
  IngestReport rep;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++rep.rows;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    if (f.size() < 5 || f[0].empty() || f[1].empty() || f[4].empty()) {
      ++rep.skipped;
      continue;
    }
    users[f[0]].push_back({f[1], f[4]});
  }

  struct Candidate {
    std::string user;
    RequestSequence seq;
  };
  std::vector<Candidate> all;
  for (auto& [user, rows] : users) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Checkin& a, const Checkin& b) { return a.time < b.time; });
    TokenMapper mapper;
    std::vector<PageId> ids;
    ids.reserve(rows.size());
    for (const auto& r : rows) ids.push_back(mapper.map(r.location));
    all.push_back({user, RequestSequence::from_ids(std::move(ids))});
  }
  rep.candidates = all.size();
  std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.seq.length() != b.seq.length()) return a.seq.length() > b.seq.length();
    // numeric order for integer user ids
    if (a.user.size() != b.user.size()) return a.user.size() < b.user.size();
    return a.user < b.user;
  });

  std::vector<NamedTrace> out;
  for (auto& c : all) {
    if (out.size() >= opt.max_users) break;
    if (belady_schedule(c.seq, opt.k).opt_cost < opt.min_opt) continue;
    out.push_back({"user" + c.user, std::move(c.seq)});
  }
  if (report) *report = rep;
  if (out.empty()) throw DataError("no usable BrightKite sequences in " + path.string());
  return out;
}

struct CitibikeOptions {
  std::size_t max_length = 25000;
};

/// Trip CSV to one trace of start stations, truncated to `max_length`.
/// The station column header must read "start station id" (any case,
/// underscores allowed).
inline NamedTrace ingest_citibike_month(const std::filesystem::path& path, const CitibikeOptions& opt = {},
                                        IngestReport* report = nullptr) {
  auto in = detail::open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
  const auto header = detail::split_csv(line);
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (detail::normalize_header(header[i]) == "start station id") {
      col = i;
      break;
    }
  }
  if (col == header.size()) throw DataError(path.string() + ": no 'start station id' column");

  IngestReport rep;
  TokenMapper mapper;
  std::vector<PageId> ids;
  while (ids.size() < opt.max_length && std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++rep.rows;
    const auto f = detail::split_csv(line);
    if (col >= f.size() || f[col].empty() || f[col] == "NULL") {
      ++rep.skipped;
      continue;
    }
    ids.push_back(mapper.map(f[col]));
  }
  rep.candidates = 1;
  if (report) *report = rep;
  if (ids.empty()) throw DataError(path.string() + ": no trips");
  return {path.stem().string(), RequestSequence::from_ids(std::move(ids))};
}

/// Expands directories into their *.csv files, sorted by name.
inline std::vector<std::filesystem::path> expand_csv_paths(const std::vector<std::filesystem::path>& inputs) {
  std::vector<std::filesystem::path> out;
  for (const auto& p : inputs) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

inline std::vector<NamedTrace> ingest_citibike(const std::vector<std::filesystem::path>& inputs,
                                               const CitibikeOptions& opt = {}) {
  std::vector<NamedTrace> out;
  for (const auto& p : expand_csv_paths(inputs)) out.push_back(ingest_citibike_month(p, opt));
  if (out.empty()) throw DataError("no CitiBike files found");
  return out;
}

/// Whitespace separated page tokens; '#' starts a comment.
inline NamedTrace read_trace(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.empty()) throw DataError(path.string() + ": empty trace");
  return {path.stem().string(), sequence_from_tokens(tokens)};
}

inline void write_trace(std::ostream& os, const RequestSequence& seq) {
  for (std::size_t t = 0; t < seq.length(); ++t) os << seq[t] << ((t + 1) % 20 == 0 ? '\n' : ' ');
  os << '\n';
}

}  // namespace parsim

#endif  // PARSIM_HARNESS_INGEST_HPP
