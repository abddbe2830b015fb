// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mathqa {

enum class Source { Arxiv, Wikipedia, Fixture, Wikidata };

std::string_view to_string(Source s);
/// Accepts arxiv, wikipedia, fixture, wikidata (any case).
Source parse_source(std::string_view s);

struct Document {
  std::string doc_id;
  std::string body;
  Source source = Source::Fixture;
  std::vector<std::string> subject_classes;
};

/// Half-open byte range [start, end) into a document body.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct FormulaOccurrence {
  std::string formula;  // normalized
  CharSpan span;        // the whole <math>...</math> region
  std::vector<std::string> identifiers;
};

struct IdentifierAnnotation {
  std::string symbol;
  std::string name;
  std::optional<std::string> item_id;

  friend bool operator==(const IdentifierAnnotation&, const IdentifierAnnotation&) = default;
};

struct GoldRecord {
  int gold_id = 0;
  std::string qid;
  std::string concept_name;
  std::string formula;
  std::vector<IdentifierAnnotation> annotations;
  std::map<std::string, std::set<std::string>> synonyms;

  /// Relevant-but-not-exact alternatives for a slot; empty when none.
  const std::set<std::string>& synonyms_for(const std::string& slot) const;

  friend bool operator==(const GoldRecord&, const GoldRecord&) = default;
};

/// Loads every regular file below `root`, sorted by doc_id. Files that are
/// unreadable, not valid UTF-8, or repeat an earlier doc_id are skipped and
/// reported through `warnings`. Throws IoError when `root` is not a readable
/// directory.
std::vector<Document> load_corpus(const std::filesystem::path& root, Source source,
                                  std::vector<std::string>* warnings = nullptr);

/// Byte ranges of the <math>...</math> regions of a body. Regions that are
/// not closed before the next <math opening are reported and left out.
std::vector<CharSpan> math_regions(std::string_view body, std::vector<std::string>* warnings = nullptr);

/// One occurrence per well-formed math region with at least one identifier.
std::vector<FormulaOccurrence> extract_formula_occurrences(const Document& doc,
                                                           std::vector<std::string>* warnings = nullptr);

/// Parses the tab-separated benchmark format and validates every record.
std::vector<GoldRecord> parse_gold_benchmark(std::string_view text);
std::vector<GoldRecord> load_gold_benchmark(const std::filesystem::path& path);

std::string format_gold_benchmark(const std::vector<GoldRecord>& records);
void save_gold_benchmark(const std::vector<GoldRecord>& records, const std::filesystem::path& path);

/// Throws ValidationError naming the gold_id and field on any violation.
void validate_gold_record(const GoldRecord& record);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mathqa
