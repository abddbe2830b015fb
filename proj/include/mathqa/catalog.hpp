// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mathqa/corpus.hpp"

namespace mathqa {

inline constexpr std::size_t kDefaultRadius = 500;

class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(std::vector<std::string> words);

  /// The frozen 179-word English list shipped with the library.
  static const Stopwords& english();
  /// One lowercase word per line; blank lines and `#` comments ignored.
  static Stopwords load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct TokenWindow {
  std::vector<std::string> tokens;
  std::string doc_id;
  CharSpan span;
};

/// Marks which bytes of a body are running prose: everything outside tags,
/// character references and math regions.
class ProseMask {
 public:
  explicit ProseMask(std::string_view body);

  /// Window tokens for a formula at `span`: prose text within `radius` code
  /// points before start and after end, split on non-letters, lowercased, with
  /// stopwords removed. Throws std::out_of_range for an invalid span.
  std::vector<std::string> window_tokens(CharSpan span, std::size_t radius, const Stopwords& stop) const;

 private:
  std::string_view body_;
  std::vector<bool> prose_;
};

TokenWindow tokenize_window(const Document& doc, CharSpan span, std::size_t radius = kDefaultRadius,
                            const Stopwords& stop = Stopwords::english());

enum class CatalogKind { SymbolToName, NameToSymbol, TermToFormula };

std::string_view to_string(CatalogKind k);
CatalogKind parse_catalog_kind(std::string_view s);

struct Candidate {
  std::string value;
  std::uint64_t frequency = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Frequency-ranked key to candidates mapping. Candidate lists are sorted by
/// frequency descending, ties by value; keys are lowercased for every kind
/// except SymbolToName.
class Catalog {
 public:
  using Counts = std::map<std::string, std::map<std::string, std::uint64_t>>;

  Catalog() = default;
  Catalog(CatalogKind kind, Source source, std::size_t doc_count);

  /// Builds a catalog from raw (key, value) -> frequency counts.
  static Catalog from_counts(CatalogKind kind, Source source, std::size_t doc_count, const Counts& counts);

  CatalogKind kind() const { return kind_; }
  Source source() const { return source_; }
  std::size_t doc_count() const { return doc_count_; }
  const std::map<std::string, std::vector<Candidate>>& entries() const { return entries_; }

  /// Candidates for a key (lowercased first when the kind requires it); null when absent.
  const std::vector<Candidate>* find(std::string_view key) const;

  std::size_t pair_count() const;
  std::uint64_t total_frequency() const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  CatalogKind kind_ = CatalogKind::SymbolToName;
  Source source_ = Source::Fixture;
  std::size_t doc_count_ = 0;
  std::map<std::string, std::vector<Candidate>> entries_;
};

struct FormulaStats {
  std::uint64_t count = 0;
  std::vector<std::string> identifiers;
  std::set<std::string> doc_ids;

  friend bool operator==(const FormulaStats&, const FormulaStats&) = default;
};

/// Every distinct normalized formula of a corpus with its duplicate count.
struct FormulaInventory {
  Source source = Source::Fixture;
  std::size_t doc_count = 0;
  std::map<std::string, FormulaStats> formulas;

  friend bool operator==(const FormulaInventory&, const FormulaInventory&) = default;
};

struct BuildOptions {
  std::size_t radius = kDefaultRadius;
  std::optional<std::vector<std::string>> subject_filter;
  const Stopwords* stopwords = nullptr;  // defaults to Stopwords::english()
};

Catalog build_identifier_catalog(const std::vector<Document>& corpus, const BuildOptions& options = {},
                                 std::vector<std::string>* warnings = nullptr);
Catalog build_formula_catalog(const std::vector<Document>& corpus, const BuildOptions& options = {},
                              std::vector<std::string>* warnings = nullptr);
FormulaInventory build_formula_inventory(const std::vector<Document>& corpus, const BuildOptions& options = {},
                                         std::vector<std::string>* warnings = nullptr);

/// SymbolToName to NameToSymbol; throws ContractError for any other kind.
Catalog invert_catalog(const Catalog& c);

std::string format_catalog(const Catalog& c);
Catalog parse_catalog(std::string_view text);
void save_catalog(const Catalog& c, const std::filesystem::path& path);
Catalog load_catalog(const std::filesystem::path& path);

std::string format_inventory(const FormulaInventory& inv);
FormulaInventory parse_inventory(std::string_view text);

/// The catalogs and formula inventory of one source, as stored in an index directory.
struct Index {
  Catalog symbol_to_name;
  Catalog name_to_symbol;
  Catalog term_to_formula;
  FormulaInventory formulas;

  Source source() const { return symbol_to_name.source(); }
};

Index build_index(const std::vector<Document>& corpus, Source source, const BuildOptions& options = {},
                  std::vector<std::string>* warnings = nullptr);
void save_index(const Index& index, const std::filesystem::path& dir);
Index load_index(const std::filesystem::path& dir);

}  // namespace mathqa
