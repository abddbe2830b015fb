// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "mathqa/catalog.hpp"
#include "mathqa/errors.hpp"
#include "mathqa/sparql.hpp"

namespace mathqa {

class TransportError : public Error {
 public:
  using Error::Error;
};

class FixtureMissing : public Error {
 public:
  explicit FixtureMissing(std::string hash)
      : Error("no recorded response for query " + hash), hash_(std::move(hash)) {}

  const std::string& hash() const noexcept { return hash_; }

 private:
  std::string hash_;
};

/// The endpoint's answer no longer has the shape the query was built for.
class SchemaDriftDetected : public Error {
 public:
  using Error::Error;
};

class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual SparqlResult run(const SparqlQuery& query) = 0;
  virtual std::string describe() const = 0;
};

/// Answers from `<dir>/<query_hash>.json`; `<hash>.rq` holds the query text.
class FixtureEndpoint : public Endpoint {
 public:
  explicit FixtureEndpoint(std::filesystem::path dir);

  SparqlResult run(const SparqlQuery& query) override;
  std::string describe() const override;
  std::size_t size() const;
  const std::filesystem::path& dir() const { return dir_; }

  static void record(const std::filesystem::path& dir, const SparqlQuery& query, const SparqlResult& result);

 private:
  std::filesystem::path dir_;
};

class HttpEndpoint : public Endpoint {
 public:
  explicit HttpEndpoint(std::string url, std::chrono::milliseconds timeout = std::chrono::seconds(30));

  SparqlResult run(const SparqlQuery& query) override;
  std::string describe() const override { return url_; }

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

class CallbackEndpoint : public Endpoint {
 public:
  using Handler = std::function<SparqlResult(const SparqlQuery&)>;

  explicit CallbackEndpoint(Handler handler, std::string name = "callback")
      : handler_(std::move(handler)), name_(std::move(name)) {}

  SparqlResult run(const SparqlQuery& query) override { return handler_(query); }
  std::string describe() const override { return name_; }

 private:
  Handler handler_;
  std::string name_;
};

/// Forwards to another endpoint and records every answer as a fixture.
class RecordingEndpoint : public Endpoint {
 public:
  RecordingEndpoint(Endpoint& inner, std::filesystem::path dir) : inner_(inner), dir_(std::move(dir)) {}

  SparqlResult run(const SparqlQuery& query) override;
  std::string describe() const override { return "recording " + inner_.describe(); }
  std::size_t recorded() const { return recorded_; }

 private:
  Endpoint& inner_;
  std::filesystem::path dir_;
  std::size_t recorded_ = 0;
};

/// Runs the query and checks the column shape. Throws SchemaDriftDetected on mismatch.
SparqlResult execute(const SparqlQuery& query, Endpoint& endpoint);

enum class CacheStatus { Fresh, StaleServed, BrokenAlerted };

std::string_view to_string(CacheStatus s);

struct QueryCacheEntry {
  std::string query_hash;
  SparqlResult result;
  std::int64_t fetched_at = 0;  // unix seconds
  CacheStatus status = CacheStatus::Fresh;
};

struct CacheAlert {
  std::string query_hash;
  std::string day;  // YYYY-MM-DD, UTC
  std::string reason;
};

/// Read-mostly cache of query results, in memory or backed by a directory.
class QueryCache {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  QueryCache();
  explicit QueryCache(std::filesystem::path dir);

  void set_clock(Clock clock);
  std::chrono::system_clock::time_point now() const;

  std::optional<QueryCacheEntry> get(const std::string& hash) const;
  void put(QueryCacheEntry entry);
  /// Returns false when an alert for this hash was already emitted today.
  bool alert(const std::string& hash, const std::string& reason);
  std::vector<CacheAlert> alerts() const;
  std::size_t size() const;

 private:
  std::optional<std::filesystem::path> dir_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, QueryCacheEntry> entries_;
  std::vector<CacheAlert> alerts_;
  std::set<std::pair<std::string, std::string>> alerted_;
};

struct CachedResult {
  SparqlResult result;
  CacheStatus status = CacheStatus::Fresh;
};

/// A nonempty result turning empty, or a changed column shape, serves the
/// cached rows with BrokenAlerted. Transport failures serve them with StaleServed.
CachedResult cached_execute(const SparqlQuery& query, Endpoint& endpoint, QueryCache& cache,
                            std::vector<std::string>* diagnostics = nullptr);

enum class LinkVia { HasPart, CalculatedFrom, InDefiningFormula };

std::string_view to_string(LinkVia v);

struct IdentifierLink {
  std::optional<std::string> symbol;
  std::optional<std::string> name;
  std::optional<std::string> linked_qid;
  LinkVia via = LinkVia::HasPart;
  std::optional<double> constant_value;

  friend bool operator==(const IdentifierLink&, const IdentifierLink&) = default;
};

using CanonicalTriple = std::tuple<std::optional<std::string>, std::optional<std::string>, std::optional<std::string>>;

inline CanonicalTriple canonical_triple(const IdentifierLink& l) { return {l.symbol, l.name, l.linked_qid}; }

enum class SymbolVia { P416, P7973, P7235 };

std::string_view to_string(SymbolVia v);
SymbolVia parse_symbol_via(std::string_view s);

struct QuantitySymbol {
  std::string symbol;
  SymbolVia via = SymbolVia::P416;

  friend bool operator==(const QuantitySymbol&, const QuantitySymbol&) = default;
};

struct KgItem {
  std::string qid;
  std::string label;
  std::optional<std::string> defining_formula;
  std::vector<IdentifierLink> identifier_links;
  std::vector<QuantitySymbol> quantity_symbols;
};

struct RawQualifier {
  std::string property;
  std::string value;
  std::string value_label;
};

struct RawStatement {
  std::string property;
  std::string value;
  std::string value_label;
  std::vector<RawQualifier> qualifiers;
  std::optional<double> numeric_value;
};

/// Groups item-identifier rows by statement, in first-row order.
std::vector<RawStatement> group_statements(const SparqlResult& rows);

/// Maps "has part"/"calculated from" statements with a symbol qualifier and
/// "in defining formula" statements with a "symbol represents" qualifier onto
/// one canonical form. Throws SchemaDriftDetected for any other statement.
std::vector<IdentifierLink> normalize_identifier_links(const std::vector<RawStatement>& statements);

struct KgCandidate {
  std::string qid;
  std::string label;
  std::optional<std::string> formula;
};

struct KgHit {
  std::string qid;
  std::string label;
  std::string formula;
  std::size_t identifier_count = 0;
  std::string via;
};

enum class LookupOutcome { Found, NotFound, Ambiguous };

struct ConceptLookup {
  LookupOutcome outcome = LookupOutcome::NotFound;
  std::optional<KgItem> item;
  std::vector<KgCandidate> candidates;
};

struct SymbolRow {
  std::string qid;
  std::string label;
  std::string symbol;
  SymbolVia via = SymbolVia::P416;
};

class KgClient {
 public:
  explicit KgClient(Endpoint& endpoint, QueryCache* cache = nullptr, std::string lang = "en");

  SparqlResult run(const SparqlQuery& query, std::vector<std::string>* diagnostics = nullptr) const;

  std::vector<KgCandidate> items_by_label(std::string_view label, std::vector<std::string>* diagnostics = nullptr) const;
  /// One labelled item with a formula is Found; several candidates without a
  /// single formula-bearing one are Ambiguous.
  ConceptLookup concept_formula(std::string_view concept_name, std::vector<std::string>* diagnostics = nullptr) const;
  KgItem item(const KgCandidate& candidate, std::vector<std::string>* diagnostics = nullptr) const;
  std::vector<IdentifierLink> identifier_links(const std::string& qid,
                                               std::vector<std::string>* diagnostics = nullptr) const;

  /// Formula items having every named quantity as a part, fewest parts first.
  std::vector<KgHit> relationship_by_names(const std::vector<std::string>& names,
                                           std::vector<std::string>* diagnostics = nullptr) const;
  /// Formula items whose defining formula mentions every symbol, fewest identifiers first.
  std::vector<KgHit> relationship_by_symbols(const std::vector<std::string>& symbols,
                                             std::vector<std::string>* diagnostics = nullptr) const;
  std::vector<KgHit> geometry(std::string_view object, std::string_view property,
                              std::vector<std::string>* diagnostics = nullptr) const;

  std::vector<SymbolRow> symbol_rows(std::vector<std::string>* diagnostics = nullptr) const;
  /// Symbol to quantity-label catalog built from the symbol lookup union.
  Catalog symbol_catalog(std::vector<std::string>* diagnostics = nullptr) const;
  bool has_formula(const std::string& qid, std::vector<std::string>* diagnostics = nullptr) const;

  const std::string& lang() const { return lang_; }

 private:
  Endpoint& endpoint_;
  QueryCache* cache_;
  std::string lang_;
};

}  // namespace mathqa
