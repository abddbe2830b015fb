// SPDX-License-Identifier: Apache-2.0
#include "mathqa/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mathqa/errors.hpp"
#include "mathqa/formula_text.hpp"
#include "mathqa/mathml.hpp"
#include "mathqa/utf8.hpp"

namespace fs = std::filesystem;

namespace mathqa {
namespace {

constexpr std::string_view kGoldHeader = "gold_id\tqid\tname\tformula\tannotations\tsynonyms";

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

bool valid_qid(std::string_view q) {
  return q.size() >= 2 && q[0] == 'Q' &&
         std::all_of(q.begin() + 1, q.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool opens_math(std::string_view body, std::size_t pos) {
  if (body.substr(pos, 5) != "<math") return false;
  if (pos + 5 >= body.size()) return false;
  const char c = body[pos + 5];
  return c == '>' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '/';
}

[[noreturn]] void invalid(int gold_id, const std::string& field, const std::string& what) {
  throw ValidationError("gold_id " + std::to_string(gold_id) + ": field '" + field + "' " + what);
}

}  // namespace

std::string_view to_string(Source s) {
  switch (s) {
    case Source::Arxiv:
      return "arxiv";
    case Source::Wikipedia:
      return "wikipedia";
    case Source::Fixture:
      return "fixture";
    case Source::Wikidata:
      return "wikidata";
  }
  return "fixture";
}

Source parse_source(std::string_view s) {
  const std::string lower = utf8::to_lower(s);
  if (lower == "arxiv") return Source::Arxiv;
  if (lower == "wikipedia") return Source::Wikipedia;
  if (lower == "fixture") return Source::Fixture;
  if (lower == "wikidata") return Source::Wikidata;
  throw ValidationError("unknown source '" + std::string(s) + "'");
}

const std::set<std::string>& GoldRecord::synonyms_for(const std::string& slot) const {
  static const std::set<std::string> empty;
  const auto it = synonyms.find(slot);
  return it == synonyms.end() ? empty : it->second;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Document> load_corpus(const fs::path& root, Source source, std::vector<std::string>* warnings) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("corpus directory not readable: " + root.string());
  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(root, ec);
  if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
    if (!it->is_regular_file(ec)) continue;
    const std::string name = it->path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Document> docs;
  std::set<std::string> seen;
  const auto warn = [&](const std::string& w) {
    if (warnings != nullptr) warnings->push_back(w);
  };
  for (const auto& file : files) {
    Document doc;
    doc.doc_id = file.filename().string();
    doc.source = source;
    if (seen.count(doc.doc_id) != 0) {
      warn("skipping " + file.string() + ": duplicate doc_id " + doc.doc_id);
      continue;
    }
    try {
      doc.body = read_file(file);
    } catch (const IoError& e) {
      warn("skipping " + file.string() + ": " + e.what());
      continue;
    }
    if (!utf8::valid(doc.body)) {
      warn("skipping " + file.string() + ": not valid UTF-8");
      continue;
    }
    const fs::path rel = file.lexically_relative(root);
    if (std::distance(rel.begin(), rel.end()) > 1) doc.subject_classes.push_back(rel.begin()->string());
    seen.insert(doc.doc_id);
    docs.push_back(std::move(doc));
  }
  std::sort(docs.begin(), docs.end(), [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
  return docs;
}

std::vector<CharSpan> math_regions(std::string_view body, std::vector<std::string>* warnings) {
  std::vector<CharSpan> out;
  static constexpr std::string_view close_tag = "</math>";
  std::size_t pos = 0;
  while ((pos = body.find("<math", pos)) != std::string_view::npos) {
    if (!opens_math(body, pos)) {
      pos += 5;
      continue;
    }
    std::size_t next_open = body.find("<math", pos + 5);
    while (next_open != std::string_view::npos && !opens_math(body, next_open)) {
      next_open = body.find("<math", next_open + 5);
    }
    const std::size_t close = body.find(close_tag, pos);
    if (close == std::string_view::npos || (next_open != std::string_view::npos && next_open < close)) {
      if (warnings != nullptr) {
        warnings->push_back("unbalanced math region at offset " + std::to_string(pos));
      }
      if (next_open == std::string_view::npos) break;
      pos = next_open;
      continue;
    }
    out.push_back({pos, close + close_tag.size()});
    pos = close + close_tag.size();
  }
  return out;
}

std::vector<FormulaOccurrence> extract_formula_occurrences(const Document& doc, std::vector<std::string>* warnings) {
  std::vector<FormulaOccurrence> out;
  for (const CharSpan& span : math_regions(doc.body, warnings)) {
    const std::string_view region = std::string_view(doc.body).substr(span.start, span.end - span.start);
    XmlNode root;
    try {
      root = parse_xml_fragment(region);
    } catch (const ParseError& e) {
      if (warnings != nullptr) {
        warnings->push_back(doc.doc_id + ": math region at offset " + std::to_string(span.start) +
                            " skipped: " + e.what());
      }
      continue;
    }
    FormulaOccurrence occ;
    occ.identifiers = mathml_identifiers(root);
    if (occ.identifiers.empty()) continue;
    occ.formula = normalize_formula(mathml_to_latex(root));
    occ.span = span;
    out.push_back(std::move(occ));
  }
  return out;
}

void validate_gold_record(const GoldRecord& r) {
  if (!valid_qid(r.qid)) invalid(r.gold_id, "qid", "is not a Q-number: '" + r.qid + "'");
  if (utf8::trim(r.concept_name).empty()) invalid(r.gold_id, "name", "is empty");
  if (utf8::trim(r.formula).empty()) invalid(r.gold_id, "formula", "is empty");
  const std::vector<std::string> ids = latex_identifiers(r.formula);
  for (const auto& a : r.annotations) {
    if (a.symbol.empty() || a.symbol.find_first_of(" \t\n") != std::string::npos) {
      invalid(r.gold_id, "annotations", "has a malformed symbol '" + a.symbol + "'");
    }
    if (a.name.empty()) invalid(r.gold_id, "annotations", "has an empty name for '" + a.symbol + "'");
    if (a.item_id && !valid_qid(*a.item_id)) {
      invalid(r.gold_id, "annotations", "has a malformed item id '" + *a.item_id + "'");
    }
    if (std::find(ids.begin(), ids.end(), a.symbol) == ids.end()) {
      invalid(r.gold_id, "annotations", "symbol '" + a.symbol + "' does not occur in the formula");
    }
  }
  for (const auto& [slot, values] : r.synonyms) {
    if (values.count(slot) != 0) invalid(r.gold_id, "synonyms", "slot '" + slot + "' lists its own gold value");
    if (values.count("") != 0) invalid(r.gold_id, "synonyms", "slot '" + slot + "' has an empty alternative");
  }
}

std::vector<GoldRecord> parse_gold_benchmark(std::string_view text) {
  std::vector<GoldRecord> out;
  std::set<int> ids;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kGoldHeader) throw ParseError("unexpected benchmark header", line_no);
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 6) {
      throw ParseError("expected 6 tab-separated fields, found " + std::to_string(fields.size()), line_no);
    }
    GoldRecord r;
    const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), r.gold_id);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
      throw ParseError("gold_id is not an integer", line_no);
    }
    r.qid = std::string(fields[1]);
    r.concept_name = std::string(fields[2]);
    r.formula = std::string(fields[3]);
    if (!fields[4].empty()) {
      for (std::string_view entry : split(fields[4], ';')) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string_view::npos) throw ParseError("annotation without '='", line_no);
        IdentifierAnnotation a;
        a.symbol = std::string(entry.substr(0, eq));
        std::string_view rest = entry.substr(eq + 1);
        if (const std::size_t at = rest.rfind('@'); at != std::string_view::npos) {
          a.item_id = std::string(rest.substr(at + 1));
          rest = rest.substr(0, at);
        }
        a.name = std::string(rest);
        r.annotations.push_back(std::move(a));
      }
    }
    if (!fields[5].empty()) {
      for (std::string_view entry : split(fields[5], ';')) {
        const std::size_t colon = entry.find(':');
        if (colon == std::string_view::npos) throw ParseError("synonym entry without ':'", line_no);
        auto& set = r.synonyms[std::string(entry.substr(0, colon))];
        for (std::string_view alt : split(entry.substr(colon + 1), '|')) set.insert(std::string(alt));
      }
    }
    if (!ids.insert(r.gold_id).second) invalid(r.gold_id, "gold_id", "is duplicated");
    validate_gold_record(r);
    out.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError("empty benchmark file", 1);
  return out;
}

std::vector<GoldRecord> load_gold_benchmark(const fs::path& path) { return parse_gold_benchmark(read_file(path)); }

std::string format_gold_benchmark(const std::vector<GoldRecord>& records) {
  std::string out(kGoldHeader);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.gold_id) + '\t' + r.qid + '\t' + r.concept_name + '\t' + r.formula + '\t';
    for (std::size_t i = 0; i < r.annotations.size(); ++i) {
      const auto& a = r.annotations[i];
      if (i > 0) out += ';';
      out += a.symbol + '=' + a.name;
      if (a.item_id) out += '@' + *a.item_id;
    }
    out += '\t';
    bool first = true;
    for (const auto& [slot, values] : r.synonyms) {
      if (values.empty()) continue;
      if (!first) out += ';';
      first = false;
      out += slot + ':';
      bool first_alt = true;
      for (const auto& v : values) {
        if (!first_alt) out += '|';
        first_alt = false;
        out += v;
      }
    }
    out += '\n';
  }
  return out;
}

void save_gold_benchmark(const std::vector<GoldRecord>& records, const fs::path& path) {
  write_file(path, format_gold_benchmark(records));
}

}  // namespace mathqa
