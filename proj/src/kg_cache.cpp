// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <ctime>
#include <fstream>

#include "json.hpp"
#include "mathqa/corpus.hpp"
#include "mathqa/kg.hpp"

namespace mathqa {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string utc_day(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[11];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
  return buf;
}

CacheStatus parse_cache_status(std::string_view s) {
  for (CacheStatus c : {CacheStatus::Fresh, CacheStatus::StaleServed, CacheStatus::BrokenAlerted}) {
    if (to_string(c) == s) return c;
  }
  throw ParseError("unknown cache status '" + std::string(s) + "'", 1);
}

std::string columns_text(const std::vector<std::string>& cols) {
  std::string out;
  for (const auto& c : cols) out += (out.empty() ? "" : ",") + c;
  return out;
}

void note(std::vector<std::string>* diagnostics, std::string text) {
  if (diagnostics != nullptr) diagnostics->push_back(std::move(text));
}

}  // namespace

FixtureEndpoint::FixtureEndpoint(fs::path dir) : dir_(std::move(dir)) {
  if (!fs::is_directory(dir_)) throw ConfigError("fixture directory " + dir_.string() + " does not exist");
}

SparqlResult FixtureEndpoint::run(const SparqlQuery& query) {
  const std::string hash = query_hash(query);
  const fs::path file = dir_ / (hash + ".json");
  if (!fs::is_regular_file(file)) throw FixtureMissing(hash);
  return parse_sparql_json(read_file(file));
}

std::string FixtureEndpoint::describe() const { return "fixtures " + dir_.string(); }

std::size_t FixtureEndpoint::size() const {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (e.path().extension() == ".json") ++n;
  }
  return n;
}

void FixtureEndpoint::record(const fs::path& dir, const SparqlQuery& query, const SparqlResult& result) {
  const std::string hash = query_hash(query);
  write_file(dir / (hash + ".json"), format_sparql_json(result));
  write_file(dir / (hash + ".rq"), query.text);
}

SparqlResult RecordingEndpoint::run(const SparqlQuery& query) {
  SparqlResult r = inner_.run(query);
  FixtureEndpoint::record(dir_, query, r);
  ++recorded_;
  return r;
}

SparqlResult execute(const SparqlQuery& query, Endpoint& endpoint) {
  SparqlResult r = endpoint.run(query);
  if (r.columns != query.expected_columns) {
    throw SchemaDriftDetected("query " + query_hash(query) + " (" + std::string(to_string(query.purpose)) +
                              ") returned columns [" + columns_text(r.columns) + "], expected [" +
                              columns_text(query.expected_columns) + "]");
  }
  return r;
}

std::string_view to_string(CacheStatus s) {
  switch (s) {
    case CacheStatus::Fresh:
      return "fresh";
    case CacheStatus::StaleServed:
      return "stale_served";
    case CacheStatus::BrokenAlerted:
      return "broken_alerted";
  }
  return "fresh";
}

QueryCache::QueryCache() : clock_([] { return std::chrono::system_clock::now(); }) {}

QueryCache::QueryCache(fs::path dir) : QueryCache() {
  fs::create_directories(dir);
  dir_ = dir;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    const json doc = json::parse(read_file(e.path()));
    QueryCacheEntry entry;
    entry.query_hash = doc.at("query_hash").get<std::string>();
    entry.fetched_at = doc.at("fetched_at").get<std::int64_t>();
    entry.status = parse_cache_status(doc.at("status").get<std::string>());
    entry.result = parse_sparql_json(doc.at("result").dump());
    entries_.emplace(entry.query_hash, std::move(entry));
  }
  std::ifstream in(dir / "alerts.tsv");
  std::string line;
  while (std::getline(in, line)) {
    const auto a = line.find('\t');
    const auto b = line.find('\t', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) continue;
    CacheAlert alert{line.substr(a + 1, b - a - 1), line.substr(0, a), line.substr(b + 1)};
    alerted_.emplace(alert.query_hash, alert.day);
    alerts_.push_back(std::move(alert));
  }
}

void QueryCache::set_clock(Clock clock) {
  std::unique_lock lock(mutex_);
  clock_ = std::move(clock);
}

std::chrono::system_clock::time_point QueryCache::now() const {
  std::shared_lock lock(mutex_);
  return clock_();
}

std::optional<QueryCacheEntry> QueryCache::get(const std::string& hash) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(hash);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void QueryCache::put(QueryCacheEntry entry) {
  std::unique_lock lock(mutex_);
  if (dir_) {
    json doc;
    doc["query_hash"] = entry.query_hash;
    doc["fetched_at"] = entry.fetched_at;
    doc["status"] = std::string(to_string(entry.status));
    doc["result"] = json::parse(format_sparql_json(entry.result));
    write_file(*dir_ / (entry.query_hash + ".json"), doc.dump(2) + "\n");
  }
  entries_[entry.query_hash] = std::move(entry);
}

bool QueryCache::alert(const std::string& hash, const std::string& reason) {
  std::unique_lock lock(mutex_);
  const std::string day = utc_day(clock_());
  if (!alerted_.emplace(hash, day).second) return false;
  alerts_.push_back({hash, day, reason});
  if (dir_) {
    std::ofstream out(*dir_ / "alerts.tsv", std::ios::app);
    out << day << '\t' << hash << '\t' << reason << '\n';
  }
  return true;
}

std::vector<CacheAlert> QueryCache::alerts() const {
  std::shared_lock lock(mutex_);
  return alerts_;
}

std::size_t QueryCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

CachedResult cached_execute(const SparqlQuery& query, Endpoint& endpoint, QueryCache& cache,
                            std::vector<std::string>* diagnostics) {
  const std::string hash = query_hash(query);
  std::optional<QueryCacheEntry> prior = cache.get(hash);
  const bool warm = prior && !prior->result.rows.empty();

  const auto serve_prior = [&](CacheStatus status) {
    prior->status = status;
    cache.put(*prior);
    return CachedResult{prior->result, status};
  };

  SparqlResult live;
  try {
    live = endpoint.run(query);
  } catch (const TransportError& e) {
    if (!prior) throw;
    note(diagnostics, "serving cached result for " + hash + ": " + e.what());
    return serve_prior(CacheStatus::StaleServed);
  } catch (const FixtureMissing& e) {
    if (!prior) throw;
    note(diagnostics, "serving cached result for " + hash + ": " + e.what());
    return serve_prior(CacheStatus::StaleServed);
  }

  std::string broken;
  if (live.columns != query.expected_columns) {
    if (!warm) {
      throw SchemaDriftDetected("query " + hash + " returned columns [" + columns_text(live.columns) +
                                "], expected [" + columns_text(query.expected_columns) + "]");
    }
    broken = "column shape changed to [" + columns_text(live.columns) + "]";
  } else if (live.rows.empty() && warm) {
    broken = "result became empty, previously " + std::to_string(prior->result.rows.size()) + " rows";
  }
  if (!broken.empty()) {
    const std::string reason = std::string(to_string(query.purpose)) + ": " + broken;
    cache.alert(hash, reason);
    note(diagnostics, "query " + hash + " broken (" + reason + "), serving cached rows");
    return serve_prior(CacheStatus::BrokenAlerted);
  }

  QueryCacheEntry entry;
  entry.query_hash = hash;
  entry.result = live;
  entry.fetched_at = std::chrono::duration_cast<std::chrono::seconds>(cache.now().time_since_epoch()).count();
  entry.status = CacheStatus::Fresh;
  cache.put(std::move(entry));
  return {std::move(live), CacheStatus::Fresh};
}

}  // namespace mathqa
