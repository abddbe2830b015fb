// SPDX-License-Identifier: Apache-2.0
#include "mathqa/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "mathqa/errors.hpp"
#include "mathqa/utf8.hpp"

namespace fs = std::filesystem;

namespace mathqa {
namespace detail {
extern const char* const kEnglishStopwords;
}  // namespace detail

namespace {

constexpr std::string_view kCatalogMagic = "mathqa-catalog";
constexpr std::string_view kInventoryMagic = "mathqa-formulas";
constexpr std::string_view kVersion = "v1";

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> parse_word_list(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view line : split(text, '\n')) {
    line = utf8::trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.push_back(utf8::to_lower(line));
  }
  return out;
}

bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  return a.value < b.value;
}

bool lowercases_keys(CatalogKind k) { return k != CatalogKind::SymbolToName; }

template <typename T>
T parse_number(std::string_view s, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", line);
  }
  return value;
}

void check_field(std::string_view s, const char* what) {
  if (s.find_first_of("\t\n\r") != std::string_view::npos) {
    throw ValidationError(std::string(what) + " contains a tab or newline: '" + std::string(s) + "'");
  }
}

// Splits text into lines, requiring every line (including the last) to be terminated.
std::vector<std::string_view> terminated_lines(std::string_view text) {
  if (text.empty()) throw ParseError("empty file", 1);
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.back().empty()) throw ParseError("missing line terminator (truncated file?)", lines.size());
  lines.pop_back();
  return lines;
}

std::vector<std::string_view> header_fields(std::string_view line, std::string_view magic, std::size_t count) {
  std::vector<std::string_view> f = split(line, ' ');
  if (f.empty() || f[0] != magic) throw ParseError("not a " + std::string(magic) + " file", 1);
  if (f.size() < 2 || f[1] != kVersion) {
    throw VersionError("unsupported " + std::string(magic) + " version '" + std::string(f.size() > 1 ? f[1] : "") +
                       "'");
  }
  if (f.size() != count) throw ParseError("malformed header", 1);
  return f;
}

bool included(const Document& doc, const BuildOptions& options) {
  if (!options.subject_filter) return true;
  for (const auto& s : doc.subject_classes) {
    if (std::find(options.subject_filter->begin(), options.subject_filter->end(), s) !=
        options.subject_filter->end()) {
      return true;
    }
  }
  return false;
}

const Stopwords& stopwords_of(const BuildOptions& options) {
  return options.stopwords != nullptr ? *options.stopwords : Stopwords::english();
}

Source source_of(const std::vector<Document>& corpus) {
  if (corpus.empty()) throw ContractError("corpus must not be empty");
  return corpus.front().source;
}

struct Mined {
  Catalog::Counts symbol_name;
  Catalog::Counts term_formula;
  FormulaInventory inventory;
  std::size_t doc_count = 0;
};

Mined mine(const std::vector<Document>& corpus, const BuildOptions& options, std::vector<std::string>* warnings) {
  Mined m;
  m.inventory.source = source_of(corpus);
  const Stopwords& stop = stopwords_of(options);
  for (const Document& doc : corpus) {
    if (!included(doc, options)) continue;
    ++m.doc_count;
    const ProseMask mask(doc.body);
    for (const FormulaOccurrence& occ : extract_formula_occurrences(doc, warnings)) {
      std::vector<std::string> tokens = mask.window_tokens(occ.span, options.radius, stop);
      std::sort(tokens.begin(), tokens.end());
      tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
      for (const auto& sym : occ.identifiers) {
        for (const auto& tok : tokens) ++m.symbol_name[sym][tok];
      }
      for (const auto& tok : tokens) ++m.term_formula[tok][occ.formula];
      FormulaStats& stats = m.inventory.formulas[occ.formula];
      if (stats.count == 0) stats.identifiers = occ.identifiers;
      ++stats.count;
      stats.doc_ids.insert(doc.doc_id);
    }
  }
  m.inventory.doc_count = m.doc_count;
  return m;
}

}  // namespace

Stopwords::Stopwords(std::vector<std::string> words) {
  for (auto& w : words) words_.insert(std::move(w));
}

const Stopwords& Stopwords::english() {
  static const Stopwords list(parse_word_list(detail::kEnglishStopwords));
  return list;
}

Stopwords Stopwords::load(const fs::path& path) { return Stopwords(parse_word_list(read_file(path))); }

bool Stopwords::contains(std::string_view word) const { return words_.count(std::string(word)) != 0; }

ProseMask::ProseMask(std::string_view body) : body_(body), prose_(body.size(), true) {
  for (const CharSpan& r : math_regions(body)) {
    std::fill(prose_.begin() + static_cast<std::ptrdiff_t>(r.start), prose_.begin() + static_cast<std::ptrdiff_t>(r.end),
              false);
  }
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == '<') {
      const std::size_t close = body.find('>', i);
      const std::size_t stop = close == std::string_view::npos ? body.size() : close + 1;
      std::fill(prose_.begin() + static_cast<std::ptrdiff_t>(i), prose_.begin() + static_cast<std::ptrdiff_t>(stop),
                false);
      i = stop;
    } else if (body[i] == '&') {
      const std::size_t semi = body.find(';', i);
      if (semi != std::string_view::npos && semi - i <= 10) {
        std::fill(prose_.begin() + static_cast<std::ptrdiff_t>(i),
                  prose_.begin() + static_cast<std::ptrdiff_t>(semi + 1), false);
        i = semi + 1;
      } else {
        ++i;
      }
    } else {
      ++i;
    }
  }
}

std::vector<std::string> ProseMask::window_tokens(CharSpan span, std::size_t radius, const Stopwords& stop) const {
  if (span.start >= span.end || span.end > body_.size()) {
    throw std::out_of_range("span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                            ") outside body of length " + std::to_string(body_.size()));
  }
  const auto continuation = [&](std::size_t i) { return (static_cast<unsigned char>(body_[i]) & 0xC0) == 0x80; };
  std::size_t lo = span.start;
  for (std::size_t n = 0; n < radius && lo > 0; ++n) {
    --lo;
    while (lo > 0 && continuation(lo)) --lo;
  }
  std::size_t hi = span.end;
  for (std::size_t n = 0; n < radius && hi < body_.size(); ++n) {
    ++hi;
    while (hi < body_.size() && continuation(hi)) ++hi;
  }
  std::vector<std::string> out;
  std::string word;
  const auto flush = [&] {
    if (!word.empty()) {
      std::string lower = utf8::to_lower(word);
      if (!stop.contains(lower)) out.push_back(std::move(lower));
      word.clear();
    }
  };
  const auto scan = [&](std::size_t from, std::size_t to) {
    std::size_t pos = from;
    while (pos < to) {
      const std::size_t at = pos;
      const char32_t cp = utf8::decode(body_, pos);
      if (pos <= to && prose_[at] && utf8::is_letter(cp)) {
        word.append(body_.substr(at, pos - at));
      } else {
        flush();
      }
    }
    flush();
  };
  scan(lo, span.start);
  scan(span.end, hi);
  return out;
}

TokenWindow tokenize_window(const Document& doc, CharSpan span, std::size_t radius, const Stopwords& stop) {
  if (radius == 0) throw std::out_of_range("window radius must be positive");
  TokenWindow w;
  w.tokens = ProseMask(doc.body).window_tokens(span, radius, stop);
  w.doc_id = doc.doc_id;
  w.span = span;
  return w;
}

std::string_view to_string(CatalogKind k) {
  switch (k) {
    case CatalogKind::SymbolToName:
      return "symbol_to_name";
    case CatalogKind::NameToSymbol:
      return "name_to_symbol";
    case CatalogKind::TermToFormula:
      return "term_to_formula";
  }
  return "symbol_to_name";
}

CatalogKind parse_catalog_kind(std::string_view s) {
  if (s == "symbol_to_name") return CatalogKind::SymbolToName;
  if (s == "name_to_symbol") return CatalogKind::NameToSymbol;
  if (s == "term_to_formula") return CatalogKind::TermToFormula;
  throw ValidationError("unknown catalog kind '" + std::string(s) + "'");
}

Catalog::Catalog(CatalogKind kind, Source source, std::size_t doc_count)
    : kind_(kind), source_(source), doc_count_(doc_count) {}

Catalog Catalog::from_counts(CatalogKind kind, Source source, std::size_t doc_count, const Counts& counts) {
  Catalog c(kind, source, doc_count);
  Counts merged;
  const Counts* effective = &counts;
  if (lowercases_keys(kind)) {
    for (const auto& [key, values] : counts) {
      auto& slot = merged[utf8::to_lower(key)];
      for (const auto& [v, f] : values) slot[v] += f;
    }
    effective = &merged;
  }
  for (const auto& [key, values] : *effective) {
    std::vector<Candidate> list;
    for (const auto& [v, f] : values) {
      if (f > 0) list.push_back({v, f});
    }
    if (list.empty()) continue;
    std::sort(list.begin(), list.end(), ranks_before);
    c.entries_.emplace(key, std::move(list));
  }
  return c;
}

const std::vector<Candidate>* Catalog::find(std::string_view key) const {
  const std::string k = lowercases_keys(kind_) ? utf8::to_lower(key) : std::string(key);
  const auto it = entries_.find(k);
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t Catalog::pair_count() const {
  std::size_t n = 0;
  for (const auto& [k, list] : entries_) n += list.size();
  return n;
}

std::uint64_t Catalog::total_frequency() const {
  std::uint64_t n = 0;
  for (const auto& [k, list] : entries_) {
    for (const auto& c : list) n += c.frequency;
  }
  return n;
}

Catalog build_identifier_catalog(const std::vector<Document>& corpus, const BuildOptions& options,
                                 std::vector<std::string>* warnings) {
  const Source source = source_of(corpus);
  Mined m = mine(corpus, options, warnings);
  return Catalog::from_counts(CatalogKind::SymbolToName, source, m.doc_count, m.symbol_name);
}

Catalog build_formula_catalog(const std::vector<Document>& corpus, const BuildOptions& options,
                              std::vector<std::string>* warnings) {
  const Source source = source_of(corpus);
  Mined m = mine(corpus, options, warnings);
  return Catalog::from_counts(CatalogKind::TermToFormula, source, m.doc_count, m.term_formula);
}

FormulaInventory build_formula_inventory(const std::vector<Document>& corpus, const BuildOptions& options,
                                         std::vector<std::string>* warnings) {
  return mine(corpus, options, warnings).inventory;
}

Catalog invert_catalog(const Catalog& c) {
  if (c.kind() != CatalogKind::SymbolToName) {
    throw ContractError("invert_catalog expects a symbol_to_name catalog, got " + std::string(to_string(c.kind())));
  }
  Catalog::Counts counts;
  for (const auto& [symbol, list] : c.entries()) {
    for (const auto& cand : list) counts[cand.value][symbol] += cand.frequency;
  }
  return Catalog::from_counts(CatalogKind::NameToSymbol, c.source(), c.doc_count(), counts);
}

std::string format_catalog(const Catalog& c) {
  std::string out;
  out += std::string(kCatalogMagic) + ' ' + std::string(kVersion) + ' ' + std::string(to_string(c.kind())) + ' ' +
         std::string(to_string(c.source())) + ' ' + std::to_string(c.doc_count()) + '\n';
  for (const auto& [key, list] : c.entries()) {
    check_field(key, "catalog key");
    for (const auto& cand : list) {
      check_field(cand.value, "catalog value");
      out += key + '\t' + cand.value + '\t' + std::to_string(cand.frequency) + '\n';
    }
  }
  return out;
}

Catalog parse_catalog(std::string_view text) {
  const auto lines = terminated_lines(text);
  const auto head = header_fields(lines[0], kCatalogMagic, 5);
  CatalogKind kind{};
  Source source{};
  try {
    kind = parse_catalog_kind(head[2]);
    source = parse_source(head[3]);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 1);
  }
  const auto doc_count = parse_number<std::size_t>(head[4], 1, "document count");
  Catalog::Counts counts;
  std::string prev_key;
  std::optional<Candidate> prev;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto f = split(lines[i], '\t');
    if (f.size() != 3) throw ParseError("expected key, value and frequency", line_no);
    Candidate cand{std::string(f[1]), parse_number<std::uint64_t>(f[2], line_no, "frequency")};
    if (cand.frequency == 0) throw ParseError("frequency must be positive", line_no);
    const std::string key(f[0]);
    if (i > 1) {
      if (key < prev_key || (key == prev_key && !ranks_before(*prev, cand))) {
        throw ParseError("entries out of order", line_no);
      }
    }
    counts[key][cand.value] = cand.frequency;
    prev_key = key;
    prev = std::move(cand);
  }
  Catalog c = Catalog::from_counts(kind, source, doc_count, counts);
  if (c.pair_count() + 1 != lines.size()) throw ParseError("duplicate or non-canonical keys", lines.size());
  return c;
}

void save_catalog(const Catalog& c, const fs::path& path) { write_file(path, format_catalog(c)); }

Catalog load_catalog(const fs::path& path) { return parse_catalog(read_file(path)); }

std::string format_inventory(const FormulaInventory& inv) {
  std::string out;
  out += std::string(kInventoryMagic) + ' ' + std::string(kVersion) + ' ' + std::string(to_string(inv.source)) +
         ' ' + std::to_string(inv.doc_count) + '\n';
  for (const auto& [formula, stats] : inv.formulas) {
    check_field(formula, "formula");
    out += formula + '\t' + std::to_string(stats.count) + '\t';
    for (std::size_t i = 0; i < stats.identifiers.size(); ++i) {
      if (i > 0) out += ' ';
      out += stats.identifiers[i];
    }
    for (const auto& d : stats.doc_ids) {
      check_field(d, "doc_id");
      out += '\t' + d;
    }
    out += '\n';
  }
  return out;
}

FormulaInventory parse_inventory(std::string_view text) {
  const auto lines = terminated_lines(text);
  const auto head = header_fields(lines[0], kInventoryMagic, 4);
  FormulaInventory inv;
  try {
    inv.source = parse_source(head[2]);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 1);
  }
  inv.doc_count = parse_number<std::size_t>(head[3], 1, "document count");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto f = split(lines[i], '\t');
    if (f.size() < 3) throw ParseError("expected formula, count and identifiers", line_no);
    FormulaStats stats;
    stats.count = parse_number<std::uint64_t>(f[1], line_no, "count");
    for (std::string_view id : split(f[2], ' ')) {
      if (!id.empty()) stats.identifiers.emplace_back(id);
    }
    for (std::size_t k = 3; k < f.size(); ++k) stats.doc_ids.emplace(f[k]);
    if (!inv.formulas.emplace(std::string(f[0]), std::move(stats)).second) {
      throw ParseError("duplicate formula", line_no);
    }
  }
  return inv;
}

Index build_index(const std::vector<Document>& corpus, Source source, const BuildOptions& options,
                  std::vector<std::string>* warnings) {
  Index index;
  if (corpus.empty()) {
    index.symbol_to_name = Catalog(CatalogKind::SymbolToName, source, 0);
    index.name_to_symbol = Catalog(CatalogKind::NameToSymbol, source, 0);
    index.term_to_formula = Catalog(CatalogKind::TermToFormula, source, 0);
    index.formulas.source = source;
    return index;
  }
  Mined m = mine(corpus, options, warnings);
  index.symbol_to_name = Catalog::from_counts(CatalogKind::SymbolToName, source, m.doc_count, m.symbol_name);
  index.name_to_symbol = invert_catalog(index.symbol_to_name);
  index.term_to_formula = Catalog::from_counts(CatalogKind::TermToFormula, source, m.doc_count, m.term_formula);
  index.formulas = std::move(m.inventory);
  index.formulas.source = source;
  return index;
}

void save_index(const Index& index, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  save_catalog(index.symbol_to_name, dir / "symbol_to_name.tsv");
  save_catalog(index.name_to_symbol, dir / "name_to_symbol.tsv");
  save_catalog(index.term_to_formula, dir / "term_to_formula.tsv");
  write_file(dir / "formulas.tsv", format_inventory(index.formulas));
}

Index load_index(const fs::path& dir) {
  Index index;
  index.symbol_to_name = load_catalog(dir / "symbol_to_name.tsv");
  index.name_to_symbol = load_catalog(dir / "name_to_symbol.tsv");
  index.term_to_formula = load_catalog(dir / "term_to_formula.tsv");
  index.formulas = parse_inventory(read_file(dir / "formulas.tsv"));
  const auto expect = [&](const Catalog& c, CatalogKind k) {
    if (c.kind() != k) {
      throw ValidationError(dir.string() + ": expected a " + std::string(to_string(k)) + " catalog");
    }
  };
  expect(index.symbol_to_name, CatalogKind::SymbolToName);
  expect(index.name_to_symbol, CatalogKind::NameToSymbol);
  expect(index.term_to_formula, CatalogKind::TermToFormula);
  return index;
}

}  // namespace mathqa
